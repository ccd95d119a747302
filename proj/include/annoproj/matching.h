#ifndef ANNOPROJ_MATCHING_H_
#define ANNOPROJ_MATCHING_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "annoproj/corpus.h"
#include "annoproj/phonetics.h"
#include "annoproj/translation.h"

namespace annoproj {

struct MatchConfig {
  double delta = 0.25;  // span threshold
  std::size_t k = 5;    // top-k list size for distributional matching

  bool orthographic = true;
  bool phonetic = false;

  bool use_mt = true;
  bool use_copy = true;
  bool use_lexicon = true;
  bool use_dist = true;

  bool case_fold = true;
  std::size_t cap_tokens = 6;
  std::size_t cap_total = 1000;

  // Throws ContractError unless 0 <= delta <= 1, k >= 1 and cap_tokens >= 1.
  void Validate() const;
  ChannelFlags channels() const { return {use_mt, use_copy, use_lexicon}; }
};

// Length of the longest common prefix or suffix, in code points.
std::size_t AffixMatchLength(std::u32string_view h, std::u32string_view r);
std::size_t AffixMatchLength(std::string_view h, std::string_view r,
                             bool case_fold = true);

// min(n/|h|, n/|r|) with n the affix match length. Throws ContractError if
// either string is empty.
double TokenScore(std::u32string_view h, std::u32string_view r);
double TokenScore(std::string_view h, std::string_view r,
                  bool case_fold = true);

// Unit-cost Levenshtein distance over code points.
std::size_t EditDistance(std::u32string_view a, std::u32string_view b);
std::size_t EditDistance(std::string_view a, std::string_view b,
                         bool case_fold = true);

// A string prepared for scoring under one configuration: the (optionally
// case-folded) surface and, when the phonetic channel is on, its IPA form.
struct MatchForm {
  std::u32string surface;
  std::u32string ipa;
};

MatchForm MakeMatchForm(std::string_view text, const MatchConfig &config,
                        const G2PTable *table);

// Max token score over hypothesis forms and enabled channels.
double EntityTokenScore(std::span<const MatchForm> hypotheses,
                        const MatchForm &target, const MatchConfig &config);
double EntityTokenScore(const HypothesisTokens &hypotheses,
                        std::string_view target_token,
                        const MatchConfig &config,
                        const G2PTable *table = nullptr);

// Entity-by-target-token score table for one sentence pair.
class ScoreMatrix {
 public:
  ScoreMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
  double &at(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const {
    return {cells_.data() + r * cols_, cols_};
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> cells_;
};

ScoreMatrix BuildScoreMatrix(const std::vector<HypothesisTokens> &hypotheses,
                             const TaggedSentence &target,
                             const MatchConfig &config,
                             const G2PTable *table = nullptr);

// A maximal run of target tokens, [first, last] inclusive, that all score at
// least delta for one entity.
struct CandidateSpan {
  std::size_t first = 0;
  std::size_t last = 0;
  std::vector<double> scores;
  std::string surface;

  friend bool operator==(const CandidateSpan &, const CandidateSpan &) = default;
};

// Throws ContractError if the row length differs from the sentence length.
std::vector<CandidateSpan> GenerateSpans(std::span<const double> scores,
                                         const TaggedSentence &target,
                                         double delta);

enum class MatchMethod { kEdit, kDist };
std::string_view MatchMethodName(MatchMethod method);

// A source entity aligned to a target span. `score` is the edit distance for
// kEdit pairs and the tf-idf value for kDist pairs.
struct AlignmentPair {
  std::size_t sentence = 0;
  Entity source;
  std::size_t target_first = 0;
  std::size_t target_last = 0;
  std::string target_surface;
  double score = 0.0;
  MatchMethod method = MatchMethod::kEdit;

  bool Overlaps(const AlignmentPair &other) const {
    return target_first <= other.target_last && other.target_first <= target_last;
  }
  friend bool operator==(const AlignmentPair &, const AlignmentPair &) = default;
};

// The candidate closest in edit distance to any permutation. Ties go to the
// leftmost, then the shorter span. Returns nullopt for no candidates.
std::optional<AlignmentPair> SelectBestMatch(
    const Entity &entity, const std::vector<CandidateSpan> &candidates,
    const PermutationSet &permutations, bool case_fold = true);

// Per-entity evidence derived from its translation set.
struct EntityHypotheses {
  TranslationSet translations;
  HypothesisTokens tokens;
  PermutationSet permutations;
};

EntityHypotheses PrepareEntity(const Entity &entity, const MatchConfig &config,
                               TranslationProvider *provider,
                               const BilingualLexicon *lexicon,
                               const LanguagePair &langs);

struct SentenceAlignment {
  std::vector<AlignmentPair> pairs;
  std::vector<Entity> unmatched;
  std::vector<bool> claimed;  // per target token
};

// Greedy left-to-right best-match alignment of one sentence pair. `evidence`
// holds one entry per entity of ExtractEntities(source). Spans overlapping
// an earlier claim are not offered to later entities.
SentenceAlignment AlignSentence(std::size_t sentence_index,
                                const TaggedSentence &source,
                                const TaggedSentence &target,
                                const std::vector<EntityHypotheses> &evidence,
                                const MatchConfig &config,
                                const G2PTable *table = nullptr);

// tf counts unclaimed tokens of sentences that still have unmatched
// entities; df and the document count cover the whole target corpus.
// idf(t) = ln((N + 1) / (df(t) + 1)) + 1.
struct TfIdfStats {
  std::map<std::string, std::size_t> tf;
  std::map<std::string, std::size_t> df;
  std::size_t documents = 0;
  bool case_fold = true;

  std::string Key(std::string_view token) const;
  double Idf(std::string_view token) const;
  double Score(std::string_view token) const;
};

TfIdfStats ComputeTfIdf(const Corpus &target,
                        const std::vector<SentenceAlignment> &alignments,
                        bool case_fold = true);

// Pairs each unmatched entity of one sentence, left to right, with the best
// still-unclaimed token of the sentence's top-k tf-idf list. Punctuation-only
// tokens are never candidates. Claims are recorded in `claimed`.
std::vector<AlignmentPair> DistributionMatchSentence(
    std::size_t sentence_index, const TaggedSentence &target,
    const std::vector<Entity> &unmatched, std::vector<bool> &claimed,
    const TfIdfStats &stats, std::size_t k);

// Corpus-order driver over DistributionMatchSentence. Matched entities move
// from `unmatched` to `pairs` in each alignment.
std::vector<AlignmentPair> DistributionMatch(
    const Corpus &target, std::vector<SentenceAlignment> &alignments,
    const TfIdfStats &stats, std::size_t k, std::size_t workers = 1);

}  // namespace annoproj

#endif  // ANNOPROJ_MATCHING_H_
