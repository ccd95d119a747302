#ifndef ANNOPROJ_TRANSLATION_H_
#define ANNOPROJ_TRANSLATION_H_

#include <atomic>
#include <compare>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "annoproj/corpus.h"

namespace annoproj {

struct LanguagePair {
  std::string source;
  std::string target;

  LanguagePair Reversed() const { return {target, source}; }
  friend bool operator==(const LanguagePair &, const LanguagePair &) = default;
};

// Anything that maps a source string to zero or more target strings.
class TranslationProvider {
 public:
  virtual ~TranslationProvider() = default;

  // Throws TranslationError when the text cannot be resolved.
  virtual std::vector<std::string> Translate(const std::string &text,
                                             const LanguagePair &langs) = 0;

  // Default implementation calls Translate() once per input.
  virtual std::vector<std::vector<std::string>> TranslateBatch(
      const std::vector<std::string> &texts, const LanguagePair &langs);
};

// Echoes its input. Useful for parallel-corpus runs and tests.
class IdentityProvider : public TranslationProvider {
 public:
  std::vector<std::string> Translate(const std::string &text,
                                     const LanguagePair &langs) override;
};

// Persistent (source text, language pair) -> translations store.
//
// On disk: one JSON object per line, {"src", "sl", "tl", "outs"}. Later
// lines win over earlier ones for the same key, which lets a run append new
// entries to a journal and compact on Save(). Reads take a shared lock;
// inserts are serialized.
class TranslationCache {
 public:
  struct Key {
    std::string src;
    std::string sl;
    std::string tl;
    auto operator<=>(const Key &) const = default;
  };

  TranslationCache() = default;
  TranslationCache(const TranslationCache &) = delete;
  TranslationCache &operator=(const TranslationCache &) = delete;

  std::optional<std::vector<std::string>> Lookup(
      const std::string &src, const LanguagePair &langs) const;
  void Insert(const std::string &src, const LanguagePair &langs,
              std::vector<std::string> outs);
  std::size_t size() const;
  std::map<Key, std::vector<std::string>> Snapshot() const;

  // Merges entries from JSON lines text. Throws ParseError.
  void Parse(std::string_view text);
  // Compacted form: one line per key, sorted by key.
  std::string Serialize() const;

  // Loads an existing file (a missing file is an empty cache).
  void Load(const std::filesystem::path &path);
  void Save(const std::filesystem::path &path) const;

  // Every subsequent Insert() is also appended to this file.
  void AttachJournal(const std::filesystem::path &path);

 private:
  mutable std::shared_mutex mu_;
  std::map<Key, std::vector<std::string>> entries_;
  std::ofstream journal_;
};

// Serves translations from a cache. Misses go to the optional live
// provider and are written through; without one, a miss is a
// TranslationError.
class CachedProvider : public TranslationProvider {
 public:
  explicit CachedProvider(TranslationCache *cache,
                          TranslationProvider *live = nullptr)
      : cache_(cache), live_(live) {}

  std::vector<std::string> Translate(const std::string &text,
                                     const LanguagePair &langs) override;
  std::vector<std::vector<std::string>> TranslateBatch(
      const std::vector<std::string> &texts,
      const LanguagePair &langs) override;

  std::size_t live_calls() const { return live_calls_.load(); }

 private:
  TranslationCache *cache_;
  TranslationProvider *live_;
  std::mutex live_mu_;
  std::atomic<std::size_t> live_calls_{0};
};

// Bilingual dictionary loaded from "source<TAB>target" lines. A source may
// map to several targets.
class BilingualLexicon {
 public:
  void Add(const std::string &source, const std::string &target);

  // Exact-key lookup, or case-insensitive when fold_case is set. Targets come
  // back in file order.
  std::vector<std::string> Lookup(const std::string &source,
                                  bool fold_case = false) const;

  const std::map<std::string, std::vector<std::string>> &entries() const {
    return entries_;
  }
  bool empty() const { return entries_.empty(); }
  friend bool operator==(const BilingualLexicon &a, const BilingualLexicon &b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::map<std::string, std::vector<std::string>> entries_;
  std::map<std::string, std::vector<std::string>> folded_;
};

BilingualLexicon ParseLexicon(std::string_view text);
BilingualLexicon LoadLexicon(const std::filesystem::path &path);
std::string SerializeLexicon(const BilingualLexicon &lexicon);

enum class Channel { kMt, kCopy, kLexicon };
std::string_view ChannelName(Channel channel);

struct ChannelFlags {
  bool use_mt = true;
  bool use_copy = true;
  bool use_lexicon = true;
};

struct Hypothesis {
  std::string text;
  Channel channel;
  friend bool operator==(const Hypothesis &, const Hypothesis &) = default;
};

// Candidate target-language renderings of one source entity, de-duplicated
// on case-folded text. Channel order is MT, copy, lexicon.
struct TranslationSet {
  Entity entity;
  std::vector<Hypothesis> hypotheses;

  bool empty() const { return hypotheses.empty(); }
  bool Contains(std::string_view text) const;
};

// Union of the tokenized hypotheses, without punctuation-only tokens.
struct HypothesisTokens {
  std::vector<std::string> tokens;
};

// Token-order permutations of every hypothesis.
struct PermutationSet {
  std::vector<std::string> candidates;
  bool truncated = false;
};

// Throws ContractError if no channel is enabled. The provider and lexicon
// may be null when their channel is disabled.
TranslationSet BuildTranslationSet(const Entity &entity,
                                   const ChannelFlags &flags,
                                   TranslationProvider *provider,
                                   const BilingualLexicon *lexicon,
                                   const LanguagePair &langs,
                                   bool fold_lexicon_keys = true);

HypothesisTokens TokenizeTranslations(const TranslationSet &set);

// Hypotheses keep their original order first. Each hypothesis of at most
// cap_tokens tokens then contributes its remaining orderings until
// cap_total candidates exist; longer hypotheses, or hitting cap_total, set
// `truncated`.
PermutationSet PermuteTranslations(const TranslationSet &set,
                                   std::size_t cap_tokens,
                                   std::size_t cap_total);

// Translates every sentence (space-joined tokens) and tokenizes the first
// output. The result is untagged and index-aligned with the input. Throws
// TranslationError naming the first sentence that fails; nothing is
// returned on failure.
Corpus TranslateSentences(const Corpus &corpus, TranslationProvider &provider,
                          const LanguagePair &langs);

}  // namespace annoproj

#endif  // ANNOPROJ_TRANSLATION_H_
