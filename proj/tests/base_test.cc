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

#include <filesystem>
#include <string>

#include "gtest/gtest.h"
#include "test_util.h"
#include "textaudit/csv.h"
#include "textaudit/io.h"
#include "textaudit/strings.h"
#include "textaudit/text.h"

namespace textaudit {
namespace {

TEST(TextTest, ValidatesUtf8) {
  EXPECT_TRUE(IsValidUtf8("plain"));
  EXPECT_TRUE(IsValidUtf8("caf\xc3\xa9"));
  EXPECT_FALSE(IsValidUtf8("bad \xff byte"));
  EXPECT_FALSE(IsValidUtf8("\xc3"));
}

TEST(TextTest, NormalizeTokenLowercasesAndFoldsCompatibilityForms) {
  EXPECT_EQ(NormalizeToken("Muslim"), "muslim");
  EXPECT_EQ(NormalizeToken("MA\xe2\x80\x99" "AM"), "ma'am");
  // U+FB01 LATIN SMALL LIGATURE FI
  EXPECT_EQ(NormalizeToken("\xef\xac\x81ne"), "fine");
  // Decomposed e + combining acute composes under NFKC.
  EXPECT_EQ(NormalizeToken("Cafe\xcc\x81"), "caf\xc3\xa9");
}

TEST(TextTest, CasePatterns) {
  EXPECT_EQ(DetectCasePattern("he"), CasePattern::kLower);
  EXPECT_EQ(DetectCasePattern("He"), CasePattern::kInitialCapital);
  EXPECT_EQ(DetectCasePattern("HE"), CasePattern::kAllCaps);
  EXPECT_EQ(DetectCasePattern("I"), CasePattern::kInitialCapital);
  EXPECT_EQ(DetectCasePattern("hE"), CasePattern::kLower);
  EXPECT_EQ(ApplyCasePattern("she", CasePattern::kAllCaps), "SHE");
  EXPECT_EQ(ApplyCasePattern("she", CasePattern::kInitialCapital), "She");
  EXPECT_EQ(ApplyCasePattern("mr.", CasePattern::kInitialCapital), "Mr.");
  EXPECT_EQ(ApplyCasePattern("\xc3\xa9lan", CasePattern::kInitialCapital),
            "\xc3\x89lan");
}

TEST(TextTest, CodePointClasses) {
  char32_t cp = 0;
  EXPECT_EQ(NextCodePoint("\xc3\xa9x", 0, &cp), 2u);
  EXPECT_EQ(cp, U'é');
  EXPECT_TRUE(IsWordCodePoint(U'a'));
  EXPECT_TRUE(IsWordCodePoint(U'7'));
  EXPECT_TRUE(IsWordCodePoint(U'́'));
  EXPECT_FALSE(IsWordCodePoint(U'-'));
  EXPECT_TRUE(IsWhitespaceCodePoint(U' '));
  EXPECT_FALSE(IsWhitespaceCodePoint(U'x'));
}

TEST(CsvTest, ParsesQuotedFieldsAndLineNumbers) {
  absl::StatusOr<std::vector<CsvRecord>> rows =
      ParseCsv("a,b\r\n\"x, y\",\"say \"\"hi\"\"\"\n\n\"multi\nline\",z\n");
  ASSERT_TRUE(rows.ok()) << rows.status();
  ASSERT_EQ(rows->size(), 3u);
  EXPECT_EQ((*rows)[1].fields, (std::vector<std::string>{"x, y", "say \"hi\""}));
  EXPECT_EQ((*rows)[1].line, 2);
  EXPECT_EQ((*rows)[2].fields[0], "multi\nline");
  EXPECT_EQ((*rows)[2].line, 4);
}

TEST(CsvTest, RejectsUnterminatedQuote) {
  absl::StatusOr<std::vector<CsvRecord>> rows = ParseCsv("a\n\"open\n");
  ASSERT_FALSE(rows.ok());
  EXPECT_NE(rows.status().message().find("line 2"), absl::string_view::npos)
      << rows.status();
}

TEST(CsvTest, FormatRoundTrips) {
  const std::vector<std::string> fields = {"plain", "with,comma", "q\"uote",
                                           "new\nline", ""};
  absl::StatusOr<std::vector<CsvRecord>> rows = ParseCsv(FormatCsvRow(fields));
  ASSERT_TRUE(rows.ok());
  ASSERT_EQ(rows->size(), 1u);
  EXPECT_EQ((*rows)[0].fields, fields);
}

TEST(IoTest, Sha256KnownVectors) {
  EXPECT_EQ(Sha256Hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(IoTest, AtomicWriteReplacesAndLeavesNoTemporary) {
  const std::filesystem::path dir = testing::ScratchDir("io");
  const std::filesystem::path file = dir / "out.txt";
  ASSERT_TRUE(WriteFileAtomically(file, "first").ok());
  ASSERT_TRUE(WriteFileAtomically(file, "second").ok());
  absl::StatusOr<std::string> back = ReadFile(file);
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(*back, "second");
  int entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) {
    ++entries;
  }
  EXPECT_EQ(entries, 1);
  EXPECT_FALSE(ReadFile(dir / "missing").ok());
  std::filesystem::remove_all(dir);
}

TEST(StringsTest, SplitJoinStrip) {
  EXPECT_EQ(StrSplit("a,,b", ',').size(), 3u);
  EXPECT_EQ(StrSplitAny("  a \t b ", " \t").size(), 2u);
  EXPECT_EQ(StrJoin(std::vector<std::string>{"x", "y"}, "+"), "x+y");
  EXPECT_EQ(StripAsciiWhitespace("  x \n"), "x");
  EXPECT_EQ(StrCat("n=", 3, " p=", 0.25), "n=3 p=0.25");
  EXPECT_EQ(Annotate(absl::NotFoundError("gone"), "file").message(),
            "file: gone");
}

}  // namespace
}  // namespace textaudit
