#include "annoproj/corpus.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "annoproj/error.h"
#include "annoproj/unicode.h"
#include "io_util.h"

namespace annoproj {

namespace {

std::vector<std::string_view> SplitColumns(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == '\t' || line[i] == ' ')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != '\t' && line[i] != ' ') ++i;
    if (i > start) cols.push_back(line.substr(start, i - start));
  }
  return cols;
}

bool IsSkippedLine(std::string_view line) {
  if (line.starts_with("# ")) return true;
  return line.starts_with("-DOCSTART-");
}

}  // namespace

std::string IobTag::ToString() const {
  switch (kind) {
    case IobKind::kOutside:
      return "O";
    case IobKind::kBegin:
      return "B-" + type;
    case IobKind::kInside:
      return "I-" + type;
  }
  return "O";
}

std::optional<IobTag> ParseIobTag(std::string_view text) {
  if (text == "O") return IobTag::Outside();
  if (text.size() < 3 || text[1] != '-') return std::nullopt;
  std::string type(text.substr(2));
  if (text[0] == 'B') return IobTag::Begin(std::move(type));
  if (text[0] == 'I') return IobTag::Inside(std::move(type));
  return std::nullopt;
}

TagSet::TagSet() : types_{"PER", "ORG", "LOC", "MISC"} {}

TagSet::TagSet(std::vector<std::string> types) : types_(std::move(types)) {}

bool TagSet::Contains(std::string_view type) const {
  return std::find(types_.begin(), types_.end(), type) != types_.end();
}

void ValidateIob(const TaggedSentence &sentence, std::size_t sentence_index,
                 const TagSet *tag_set) {
  if (!sentence.tagged()) return;
  if (sentence.tags.size() != sentence.tokens.size()) {
    throw ValidationError("tag count does not match token count",
                          sentence_index, 0);
  }
  const IobTag *prev = nullptr;
  for (std::size_t i = 0; i < sentence.tags.size(); ++i) {
    const IobTag &tag = sentence.tags[i];
    if (tag.kind != IobKind::kOutside) {
      if (tag.type.empty()) {
        throw ValidationError("empty entity type", sentence_index, i);
      }
      if (tag_set != nullptr && !tag_set->Contains(tag.type)) {
        throw ValidationError("unknown entity type '" + tag.type + "'",
                              sentence_index, i);
      }
    }
    if (tag.kind == IobKind::kInside) {
      bool continues = prev != nullptr && prev->kind != IobKind::kOutside &&
                       prev->type == tag.type;
      if (!continues) {
        throw ValidationError(tag.ToString() + " does not continue an entity",
                              sentence_index, i);
      }
    }
    prev = &tag;
  }
}

Corpus ParseConll(std::string_view text, const ConllOptions &options) {
  Corpus corpus;
  corpus.id = options.id;
  if (!IsValidUtf8(text)) {
    // Locate the offending line for the error message.
    std::size_t line_no = 1;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      if (!IsValidUtf8(text.substr(start, end - start))) break;
      start = end + 1;
      ++line_no;
    }
    throw ParseError("invalid UTF-8", line_no);
  }

  std::size_t columns = 0;  // fixed by the first token line
  TaggedSentence current;
  auto flush = [&]() {
    if (current.tokens.empty()) return;
    ValidateIob(current, corpus.sentences.size(), &options.tag_set);
    corpus.sentences.push_back(std::move(current));
    current = TaggedSentence{};
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (IsSkippedLine(line)) continue;
    auto cols = SplitColumns(line);
    if (cols.empty()) {
      flush();
      continue;
    }
    if (columns == 0) columns = cols.size();
    if (cols.size() != columns) {
      throw ParseError("expected " + std::to_string(columns) +
                           " columns, found " + std::to_string(cols.size()),
                       line_no);
    }
    current.tokens.emplace_back(cols.front());
    if (columns >= 2) {
      auto tag = ParseIobTag(cols.back());
      if (!tag) {
        throw ParseError("malformed tag '" + std::string(cols.back()) + "'",
                         line_no);
      }
      current.tags.push_back(std::move(*tag));
    }
  }
  flush();
  return corpus;
}

Corpus ReadConllFile(const std::filesystem::path &path,
                     const ConllOptions &options) {
  ConllOptions opts = options;
  if (opts.id.empty()) opts.id = path.filename().string();
  return ParseConll(ReadTextFile(path), opts);
}

std::string SerializeConll(const Corpus &corpus) {
  std::string out;
  for (const auto &sentence : corpus.sentences) {
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
      out += sentence.tokens[i];
      if (sentence.tagged()) {
        out.push_back('\t');
        out += sentence.tags[i].ToString();
      }
      out.push_back('\n');
    }
    out.push_back('\n');
  }
  return out;
}

void WriteConllFile(const Corpus &corpus, const std::filesystem::path &path) {
  WriteTextFileAtomic(path, SerializeConll(corpus));
}

std::vector<Entity> ExtractEntities(const TaggedSentence &sentence) {
  std::vector<Entity> entities;
  const auto &tags = sentence.tags;
  std::size_t i = 0;
  while (i < tags.size()) {
    if (tags[i].kind == IobKind::kOutside) {
      ++i;
      continue;
    }
    Entity e;
    e.first = i;
    e.type = tags[i].type;
    std::size_t j = i + 1;
    while (j < tags.size() && tags[j].kind == IobKind::kInside &&
           tags[j].type == e.type) {
      ++j;
    }
    e.last = j - 1;
    e.surface = JoinTokens(sentence.tokens, e.first, e.last);
    entities.push_back(std::move(e));
    i = j;
  }
  return entities;
}

std::vector<IobTag> TagsFromEntities(std::size_t length,
                                     const std::vector<Entity> &entities) {
  std::vector<IobTag> tags(length);
  for (const auto &e : entities) {
    tags.at(e.first) = IobTag::Begin(e.type);
    for (std::size_t i = e.first + 1; i <= e.last; ++i) {
      tags.at(i) = IobTag::Inside(e.type);
    }
  }
  return tags;
}

Corpus ApplyTagMap(const Corpus &corpus, const TagMap &map) {
  if (map.empty()) return corpus;
  Corpus out;
  out.id = corpus.id;
  out.sentences.reserve(corpus.size());
  for (const auto &sentence : corpus.sentences) {
    TaggedSentence s;
    s.tokens = sentence.tokens;
    if (sentence.tagged()) {
      std::vector<Entity> kept;
      for (auto &e : ExtractEntities(sentence)) {
        auto it = map.find(e.type);
        if (it != map.end()) {
          if (it->second.empty()) continue;
          e.type = it->second;
        }
        kept.push_back(std::move(e));
      }
      s.tags = TagsFromEntities(s.tokens.size(), kept);
    }
    out.sentences.push_back(std::move(s));
  }
  return out;
}

TagMap ParseTagMap(std::string_view spec) {
  TagMap map;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t end = spec.find(',', pos);
    if (end == std::string_view::npos) end = spec.size();
    std::string_view item = spec.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error("bad tag map entry '" + std::string(item) +
                  "', expected TYPE=NEWTYPE or TYPE=");
    }
    map[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
  }
  return map;
}

std::size_t CountEntities(const Corpus &corpus) {
  std::size_t n = 0;
  for (const auto &s : corpus.sentences) n += ExtractEntities(s).size();
  return n;
}

}  // namespace annoproj
