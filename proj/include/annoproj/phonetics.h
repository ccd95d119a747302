#ifndef ANNOPROJ_PHONETICS_H_
#define ANNOPROJ_PHONETICS_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace annoproj {

struct G2PRule {
  std::u32string grapheme;
  std::u32string phoneme;

  friend bool operator==(const G2PRule &, const G2PRule &) = default;
};

// Grapheme-to-phoneme rewrite table. Rules are kept sorted by grapheme
// length, longest first; equal lengths keep their insertion order.
class G2PTable {
 public:
  G2PTable() = default;
  explicit G2PTable(std::string language) : language_(std::move(language)) {}

  // Throws ContractError for an empty grapheme.
  void AddRule(std::string_view grapheme, std::string_view phoneme);

  const std::string &language() const { return language_; }
  const std::vector<G2PRule> &rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }

  friend bool operator==(const G2PTable &, const G2PTable &) = default;

 private:
  std::string language_;
  std::vector<G2PRule> rules_;
};

// Left-to-right longest-match rewriting. Characters without a rule are
// copied through unchanged.
std::u32string Transliterate(std::u32string_view token, const G2PTable &table);
std::string Transliterate(std::string_view token, const G2PTable &table);

// TSV "grapheme<TAB>phoneme"; '#' comment lines and blank lines are ignored.
// An empty phoneme deletes the grapheme.
G2PTable ParseG2PTable(std::string_view text, std::string language = {});
G2PTable LoadG2PTable(const std::filesystem::path &path);
std::string SerializeG2PTable(const G2PTable &table);

}  // namespace annoproj

#endif  // ANNOPROJ_PHONETICS_H_
