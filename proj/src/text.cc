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

#include "textaudit/text.h"

#include <string>
#include <string_view>

#include "unicode/locid.h"
#include "unicode/normalizer2.h"
#include "unicode/uchar.h"
#include "unicode/unistr.h"
#include "unicode/utf8.h"

namespace textaudit {
namespace {

icu::UnicodeString FromUtf8(std::string_view text) {
  return icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
}

std::string ToUtf8(const icu::UnicodeString& text) {
  std::string out;
  text.toUTF8String(out);
  return out;
}

std::string Normalize(const icu::Normalizer2* normalizer,
                      const icu::UnicodeString& text) {
  if (normalizer == nullptr) return ToUtf8(text);
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = normalizer->normalize(text, status);
  if (U_FAILURE(status)) return ToUtf8(text);
  return ToUtf8(out);
}

const icu::Normalizer2* Nfkc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFKCInstance(status);
  return U_SUCCESS(status) ? n : nullptr;
}

const icu::Normalizer2* Nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  return U_SUCCESS(status) ? n : nullptr;
}

}  // namespace

bool IsValidUtf8(std::string_view text) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) return false;
  }
  return true;
}

std::size_t NextCodePoint(std::string_view text, std::size_t offset,
                          char32_t* code_point) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  int32_t i = static_cast<int32_t>(offset);
  UChar32 c;
  U8_NEXT(s, i, length, c);
  if (c < 0) {
    *code_point = 0xFFFD;
    return offset + 1;
  }
  *code_point = static_cast<char32_t>(c);
  return static_cast<std::size_t>(i);
}

bool IsWordCodePoint(char32_t c) {
  const UChar32 u = static_cast<UChar32>(c);
  return u_isalnum(u) || (U_GET_GC_MASK(u) & U_GC_M_MASK) != 0;
}

bool IsWhitespaceCodePoint(char32_t c) {
  return u_isUWhiteSpace(static_cast<UChar32>(c));
}

std::string NormalizeToken(std::string_view token) {
  icu::UnicodeString u = FromUtf8(token);
  u.findAndReplace(icu::UnicodeString(static_cast<UChar32>(0x2019)),
                   icu::UnicodeString(static_cast<UChar32>('\'')));
  u.toLower(icu::Locale::getRoot());
  return Normalize(Nfkc(), u);
}

std::string NfcNormalize(std::string_view text) {
  return Normalize(Nfc(), FromUtf8(text));
}

std::string ToLowerUtf8(std::string_view text) {
  icu::UnicodeString u = FromUtf8(text);
  u.toLower(icu::Locale::getRoot());
  return ToUtf8(u);
}

std::string ToUpperUtf8(std::string_view text) {
  icu::UnicodeString u = FromUtf8(text);
  u.toUpper(icu::Locale::getRoot());
  return ToUtf8(u);
}

CasePattern DetectCasePattern(std::string_view text) {
  int cased = 0;
  int upper = 0;
  bool first_upper = false;
  for (std::size_t i = 0; i < text.size();) {
    char32_t c;
    i = NextCodePoint(text, i, &c);
    const UChar32 u = static_cast<UChar32>(c);
    if (u_isupper(u) || u_istitle(u)) {
      if (cased == 0) first_upper = true;
      ++cased;
      ++upper;
    } else if (u_islower(u)) {
      ++cased;
    }
  }
  if (cased >= 2 && upper == cased) return CasePattern::kAllCaps;
  if (first_upper) return CasePattern::kInitialCapital;
  return CasePattern::kLower;
}

std::string ApplyCasePattern(std::string_view text, CasePattern pattern) {
  switch (pattern) {
    case CasePattern::kLower:
      return ToLowerUtf8(text);
    case CasePattern::kAllCaps:
      return ToUpperUtf8(text);
    case CasePattern::kInitialCapital: {
      std::string lower = ToLowerUtf8(text);
      // Capitalize the first cased code point.
      for (std::size_t i = 0; i < lower.size();) {
        char32_t c;
        const std::size_t next = NextCodePoint(lower, i, &c);
        if (u_islower(static_cast<UChar32>(c))) {
          return lower.substr(0, i) +
                 ToUpperUtf8(std::string_view(lower).substr(i, next - i)) +
                 lower.substr(next);
        }
        i = next;
      }
      return lower;
    }
  }
  return std::string(text);
}

}  // namespace textaudit
