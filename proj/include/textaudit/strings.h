// Copyright 2026 The Textaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Small std::string_view helpers. The system absl is configured with its own
// string_view type, so string plumbing stays on the standard library.

#ifndef TEXTAUDIT_STRINGS_H_
#define TEXTAUDIT_STRINGS_H_

#include <charconv>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/string_view.h"

namespace textaudit {

namespace strings_internal {

inline void Append(std::string& out, std::string_view piece) {
  out.append(piece.data(), piece.size());
}
inline void Append(std::string& out, const char* piece) { out.append(piece); }
inline void Append(std::string& out, const std::string& piece) {
  out.append(piece);
}
inline void Append(std::string& out, char c) { out.push_back(c); }
inline void Append(std::string& out, absl::string_view piece) {
  out.append(piece.data(), piece.size());
}

template <typename T>
  requires std::is_arithmetic_v<T> && (!std::is_same_v<T, char>) &&
           (!std::is_same_v<T, bool>)
void Append(std::string& out, T value) {
  char buffer[64];
  std::to_chars_result r;
  if constexpr (std::is_floating_point_v<T>) {
    r = std::to_chars(buffer, buffer + sizeof(buffer), value,
                      std::chars_format::general, 10);
  } else {
    r = std::to_chars(buffer, buffer + sizeof(buffer), value);
  }
  out.append(buffer, r.ptr);
}

inline void Append(std::string& out, bool value) {
  out.append(value ? "true" : "false");
}

}  // namespace strings_internal

template <typename... Args>
std::string StrCat(const Args&... args) {
  std::string out;
  (strings_internal::Append(out, args), ...);
  return out;
}

std::vector<std::string_view> StrSplit(std::string_view text, char delimiter);
// Splits on any of `delimiters`, dropping empty pieces.
std::vector<std::string_view> StrSplitAny(std::string_view text,
                                          std::string_view delimiters);

template <typename Range>
std::string StrJoin(const Range& pieces, std::string_view separator) {
  std::string out;
  bool first = true;
  for (const auto& piece : pieces) {
    if (!first) out.append(separator.data(), separator.size());
    first = false;
    strings_internal::Append(out, piece);
  }
  return out;
}

std::string_view StripAsciiWhitespace(std::string_view text);
std::string AsciiStrToLower(std::string_view text);
inline bool StartsWith(std::string_view text, std::string_view prefix) {
  return text.substr(0, prefix.size()) == prefix;
}

// Returns `status` with `prefix: ` prepended to its message.
absl::Status Annotate(const absl::Status& status, std::string_view prefix);

inline std::string StatusMessage(const absl::Status& status) {
  return std::string(status.message());
}

}  // namespace textaudit

#endif  // TEXTAUDIT_STRINGS_H_
