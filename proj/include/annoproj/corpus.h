#ifndef ANNOPROJ_CORPUS_H_
#define ANNOPROJ_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace annoproj {

enum class IobKind { kOutside, kBegin, kInside };

// One IOB label. The type is empty for O and a bare entity type ("PER")
// otherwise.
struct IobTag {
  IobKind kind = IobKind::kOutside;
  std::string type;

  static IobTag Outside() { return {}; }
  static IobTag Begin(std::string type) { return {IobKind::kBegin, std::move(type)}; }
  static IobTag Inside(std::string type) { return {IobKind::kInside, std::move(type)}; }

  std::string ToString() const;
  friend bool operator==(const IobTag &, const IobTag &) = default;
};

// Parses "O", "B-X" or "I-X". Returns nullopt for anything else.
std::optional<IobTag> ParseIobTag(std::string_view text);

// The entity types a corpus may use.
class TagSet {
 public:
  TagSet();  // PER, ORG, LOC, MISC
  explicit TagSet(std::vector<std::string> types);

  bool Contains(std::string_view type) const;
  const std::vector<std::string> &types() const { return types_; }

 private:
  std::vector<std::string> types_;
};

// Maps an entity type to a replacement type; an empty replacement drops the
// entity (its tokens become O). Types without an entry are kept.
using TagMap = std::map<std::string, std::string, std::less<>>;

struct Token {
  std::string surface;
  std::size_t index = 0;
};

// A tokenized sentence with an optional parallel IOB tag sequence. Untagged
// sentences have an empty tag vector.
struct TaggedSentence {
  std::vector<std::string> tokens;
  std::vector<IobTag> tags;

  std::size_t size() const { return tokens.size(); }
  bool tagged() const { return !tags.empty(); }
  Token token(std::size_t i) const { return {tokens.at(i), i}; }

  friend bool operator==(const TaggedSentence &, const TaggedSentence &) = default;
};

// A contiguous entity mention, [first, last] inclusive.
struct Entity {
  std::size_t first = 0;
  std::size_t last = 0;
  std::string type;
  std::string surface;

  std::size_t length() const { return last - first + 1; }
  friend bool operator==(const Entity &, const Entity &) = default;
};

struct Corpus {
  std::string id;
  std::vector<TaggedSentence> sentences;

  std::size_t size() const { return sentences.size(); }
  bool tagged() const { return !sentences.empty() && sentences.front().tagged(); }

  friend bool operator==(const Corpus &, const Corpus &) = default;
};

struct ConllOptions {
  TagSet tag_set;
  std::string id;
};

// Parses a CoNLL-style document: one "TOKEN<TAB|space>TAG" (or "TOKEN") line
// per token, blank lines between sentences. Documents with more than two
// columns take the last column as the tag. "-DOCSTART-" lines and lines
// starting with "# " are skipped; CRLF is accepted.
//
// Throws ParseError on inconsistent column counts or invalid UTF-8, and
// ValidationError on unknown tag types or IOB violations.
Corpus ParseConll(std::string_view text, const ConllOptions &options = {});
Corpus ReadConllFile(const std::filesystem::path &path,
                     const ConllOptions &options = {});

// Emits TAB-separated lines, LF endings, one blank line after each sentence.
std::string SerializeConll(const Corpus &corpus);
void WriteConllFile(const Corpus &corpus, const std::filesystem::path &path);

// Checks length agreement, tag types and that every I-X follows B-X or I-X.
void ValidateIob(const TaggedSentence &sentence, std::size_t sentence_index,
                 const TagSet *tag_set = nullptr);

// Maximal B-X (I-X)* runs, left to right.
std::vector<Entity> ExtractEntities(const TaggedSentence &sentence);

// Inverse of ExtractEntities for non-overlapping entities.
std::vector<IobTag> TagsFromEntities(std::size_t length,
                                     const std::vector<Entity> &entities);

Corpus ApplyTagMap(const Corpus &corpus, const TagMap &map);

// Parses "MISC=,GPE=LOC" style mapping specs.
TagMap ParseTagMap(std::string_view spec);

std::size_t CountEntities(const Corpus &corpus);

}  // namespace annoproj

#endif  // ANNOPROJ_CORPUS_H_
