#include "annoproj/phonetics.h"

#include <algorithm>

#include "annoproj/error.h"
#include "annoproj/unicode.h"
#include "io_util.h"

namespace annoproj {

void G2PTable::AddRule(std::string_view grapheme, std::string_view phoneme) {
  if (grapheme.empty()) throw ContractError("empty grapheme in G2P rule");
  G2PRule rule{DecodeUtf8(grapheme), DecodeUtf8(phoneme)};
  // Insert after every rule at least as long, keeping file order on ties.
  auto pos = std::find_if(rules_.begin(), rules_.end(), [&](const G2PRule &r) {
    return r.grapheme.size() < rule.grapheme.size();
  });
  rules_.insert(pos, std::move(rule));
}

std::u32string Transliterate(std::u32string_view token, const G2PTable &table) {
  std::u32string out;
  out.reserve(token.size());
  std::size_t i = 0;
  while (i < token.size()) {
    const G2PRule *hit = nullptr;
    for (const auto &rule : table.rules()) {
      if (token.substr(i).starts_with(rule.grapheme)) {
        hit = &rule;
        break;
      }
    }
    if (hit != nullptr) {
      out += hit->phoneme;
      i += hit->grapheme.size();
    } else {
      out.push_back(token[i]);
      ++i;
    }
  }
  return out;
}

std::string Transliterate(std::string_view token, const G2PTable &table) {
  return EncodeUtf8(Transliterate(DecodeUtf8(token), table));
}

G2PTable ParseG2PTable(std::string_view text, std::string language) {
  G2PTable table(std::move(language));
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (!IsValidUtf8(line)) throw ParseError("invalid UTF-8", line_no);
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError("expected grapheme<TAB>phoneme", line_no);
    }
    std::string_view grapheme = line.substr(0, tab);
    std::string_view phoneme = line.substr(tab + 1);
    if (grapheme.empty()) throw ParseError("empty grapheme", line_no);
    if (phoneme.find('\t') != std::string_view::npos) {
      throw ParseError("too many columns", line_no);
    }
    table.AddRule(grapheme, phoneme);
  }
  return table;
}

G2PTable LoadG2PTable(const std::filesystem::path &path) {
  // "es.g2p.tsv" -> "es"
  std::string name = path.filename().string();
  return ParseG2PTable(ReadTextFile(path), name.substr(0, name.find('.')));
}

std::string SerializeG2PTable(const G2PTable &table) {
  std::string out;
  for (const auto &rule : table.rules()) {
    out += EncodeUtf8(rule.grapheme);
    out.push_back('\t');
    out += EncodeUtf8(rule.phoneme);
    out.push_back('\n');
  }
  return out;
}

}  // namespace annoproj
