#include "annoproj/unicode.h"

#include <algorithm>

namespace annoproj {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Returns the number of bytes consumed; writes the scalar to *out.
std::size_t DecodeOne(std::string_view s, std::size_t i, char32_t *out) {
  const auto byte = [&](std::size_t k) {
    return static_cast<unsigned char>(s[k]);
  };
  unsigned char b0 = byte(i);
  if (b0 < 0x80) {
    *out = b0;
    return 1;
  }
  std::size_t len;
  char32_t cp;
  char32_t min;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
    min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
    min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
    min = 0x10000;
  } else {
    *out = kReplacement;
    return 1;
  }
  if (i + len > s.size()) {
    *out = kReplacement;
    return 1;
  }
  for (std::size_t k = 1; k < len; ++k) {
    unsigned char b = byte(i + k);
    if ((b & 0xC0) != 0x80) {
      *out = kReplacement;
      return 1;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    *out = kReplacement;
    return 1;
  }
  *out = cp;
  return len;
}

bool IsAbbreviationChunk(std::u32string_view core) {
  // Inner period before the final character, e.g. "EE.UU." or "U.S.".
  if (core.size() < 3 || core.back() != U'.') return false;
  auto inner = core.substr(1, core.size() - 2);
  return inner.find(U'.') != std::u32string_view::npos;
}

}  // namespace

std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    char32_t cp;
    i += DecodeOne(text, i, &cp);
    out.push_back(cp);
  }
  return out;
}

std::string EncodeUtf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = kReplacement;
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

bool IsValidUtf8(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    char32_t cp;
    std::size_t n = DecodeOne(text, i, &cp);
    // A literal U+FFFD is three bytes; a decode failure consumes one.
    if (cp == kReplacement && n == 1) return false;
    i += n;
  }
  return true;
}

char32_t FoldCase(char32_t c) {
  if (c < 0x80) {
    return (c >= U'A' && c <= U'Z') ? c + 32 : c;
  }
  // Latin-1 Supplement.
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  // Latin Extended-A: mostly even upper / odd lower pairs.
  if (c >= 0x100 && c <= 0x17F) {
    if (c == 0x130) return U'i';
    if (c == 0x178) return 0xFF;
    if ((c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E)) {
      return (c % 2 == 1) ? c + 1 : c;
    }
    if (c == 0x131 || c == 0x138 || c == 0x149 || c == 0x17F) return c;
    return (c % 2 == 0) ? c + 1 : c;
  }
  // Greek.
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 32;
  if (c == 0x3C2) return 0x3C3;
  if (c == 0x386) return 0x3AC;
  if (c >= 0x388 && c <= 0x38A) return c + 37;
  if (c == 0x38C) return 0x3CC;
  if (c == 0x38E || c == 0x38F) return c + 63;
  // Cyrillic.
  if (c >= 0x400 && c <= 0x40F) return c + 80;
  if (c >= 0x410 && c <= 0x42F) return c + 32;
  if (c >= 0x460 && c <= 0x481) return (c % 2 == 0) ? c + 1 : c;
  if (c >= 0x48A && c <= 0x4BF) return (c % 2 == 0) ? c + 1 : c;
  // Armenian.
  if (c >= 0x531 && c <= 0x556) return c + 48;
  return c;
}

std::u32string FoldCase(std::u32string_view text) {
  std::u32string out(text);
  for (auto &c : out) c = FoldCase(c);
  return out;
}

std::string FoldCaseUtf8(std::string_view text) {
  return EncodeUtf8(FoldCase(DecodeUtf8(text)));
}

bool IsSpace(char32_t c) {
  switch (c) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

bool IsPunct(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
           (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
  }
  switch (c) {
    case 0xA1: case 0xA7: case 0xAB: case 0xB6: case 0xB7: case 0xBB:
    case 0xBF: case 0x37E: case 0x387: case 0x55A: case 0x55B: case 0x55C:
    case 0x55D: case 0x55E: case 0x55F: case 0x589: case 0x964: case 0x965:
      return true;
    default:
      break;
  }
  // General Punctuation, CJK symbols and fullwidth ASCII punctuation.
  if (c >= 0x2010 && c <= 0x2027) return true;
  if (c >= 0x2030 && c <= 0x205E) return true;
  if (c >= 0x3001 && c <= 0x3003) return true;
  if (c >= 0x3008 && c <= 0x3011) return true;
  if (c >= 0xFF01 && c <= 0xFF0F) return true;
  if (c >= 0xFF1A && c <= 0xFF20) return true;
  return false;
}

bool IsPunctuationOnly(std::string_view token) {
  if (token.empty()) return false;
  auto cps = DecodeUtf8(token);
  return std::all_of(cps.begin(), cps.end(),
                     [](char32_t c) { return IsPunct(c); });
}

bool ContainsSpace(std::string_view text) {
  auto cps = DecodeUtf8(text);
  return std::any_of(cps.begin(), cps.end(),
                     [](char32_t c) { return IsSpace(c); });
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  const std::u32string cps = DecodeUtf8(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && IsSpace(cps[i])) ++i;
    std::size_t start = i;
    while (i < cps.size() && !IsSpace(cps[i])) ++i;
    if (start == i) break;
    std::u32string_view chunk(cps.data() + start, i - start);

    bool all_punct = std::all_of(chunk.begin(), chunk.end(),
                                 [](char32_t c) { return IsPunct(c); });
    if (all_punct) {
      tokens.push_back(EncodeUtf8(chunk));
      continue;
    }
    std::size_t lo = 0;
    std::size_t hi = chunk.size();
    while (lo < hi && IsPunct(chunk[lo])) ++lo;
    std::vector<std::string> trailing;
    while (hi > lo && IsPunct(chunk[hi - 1])) {
      if (chunk[hi - 1] == U'.' &&
          IsAbbreviationChunk(chunk.substr(lo, hi - lo))) {
        break;
      }
      trailing.push_back(EncodeUtf8(chunk.substr(hi - 1, 1)));
      --hi;
    }
    for (std::size_t k = 0; k < lo; ++k) {
      tokens.push_back(EncodeUtf8(chunk.substr(k, 1)));
    }
    tokens.push_back(EncodeUtf8(chunk.substr(lo, hi - lo)));
    tokens.insert(tokens.end(), trailing.rbegin(), trailing.rend());
  }
  return tokens;
}

std::string JoinTokens(const std::vector<std::string> &tokens,
                       std::size_t first, std::size_t last) {
  std::string out;
  for (std::size_t i = first; i <= last && i < tokens.size(); ++i) {
    if (i != first) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::string JoinTokens(const std::vector<std::string> &tokens) {
  if (tokens.empty()) return {};
  return JoinTokens(tokens, 0, tokens.size() - 1);
}

}  // namespace annoproj
