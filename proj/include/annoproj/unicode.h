#ifndef ANNOPROJ_UNICODE_H_
#define ANNOPROJ_UNICODE_H_

#include <string>
#include <string_view>
#include <vector>

namespace annoproj {

// Decodes UTF-8 into scalar values. Ill-formed sequences decode to U+FFFD.
std::u32string DecodeUtf8(std::string_view text);
std::string EncodeUtf8(std::u32string_view text);
bool IsValidUtf8(std::string_view text);

// Simple (one-to-one) case folding for Latin, Greek, Cyrillic and Armenian.
// Characters outside those blocks fold to themselves.
char32_t FoldCase(char32_t c);
std::u32string FoldCase(std::u32string_view text);
std::string FoldCaseUtf8(std::string_view text);

bool IsSpace(char32_t c);
bool IsPunct(char32_t c);

// True for a non-empty string made only of punctuation.
bool IsPunctuationOnly(std::string_view token);
bool ContainsSpace(std::string_view text);

// Splits raw text on whitespace, then peels leading and trailing punctuation
// off each chunk into single-character tokens. A trailing period stays
// attached when the chunk already contains an inner period ("EE.UU.",
// "U.S."). Chunks made only of punctuation are kept whole.
std::vector<std::string> Tokenize(std::string_view text);

// Joins tokens with single spaces.
std::string JoinTokens(const std::vector<std::string> &tokens,
                       std::size_t first, std::size_t last);
std::string JoinTokens(const std::vector<std::string> &tokens);

}  // namespace annoproj

#endif  // ANNOPROJ_UNICODE_H_
