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

#ifndef TEXTAUDIT_TEXT_H_
#define TEXTAUDIT_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace textaudit {

bool IsValidUtf8(std::string_view text);

// Lowercases with root-locale rules, then applies NFKC. Right single
// quotation marks become ASCII apostrophes.
std::string NormalizeToken(std::string_view token);

std::string NfcNormalize(std::string_view text);
std::string ToLowerUtf8(std::string_view text);
std::string ToUpperUtf8(std::string_view text);

enum class CasePattern { kLower, kInitialCapital, kAllCaps };

// kAllCaps needs at least two cased letters, all uppercase. A single
// uppercase letter counts as kInitialCapital.
CasePattern DetectCasePattern(std::string_view text);
std::string ApplyCasePattern(std::string_view text, CasePattern pattern);

// Decodes one code point starting at `offset`. Returns the offset just past
// it. Invalid sequences decode to U+FFFD and advance by one byte.
std::size_t NextCodePoint(std::string_view text, std::size_t offset,
                          char32_t* code_point);

// Letters, digits and combining marks.
bool IsWordCodePoint(char32_t c);
bool IsWhitespaceCodePoint(char32_t c);

}  // namespace textaudit

#endif  // TEXTAUDIT_TEXT_H_
