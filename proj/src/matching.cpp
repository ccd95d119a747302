#include "annoproj/matching.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "annoproj/error.h"
#include "annoproj/unicode.h"
#include "parallel.h"

namespace annoproj {

void MatchConfig::Validate() const {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw ContractError("delta must lie in [0, 1]");
  }
  if (k < 1) throw ContractError("k must be at least 1");
  if (cap_tokens < 1) throw ContractError("cap_tokens must be at least 1");
  if (!orthographic && !phonetic) {
    throw ContractError("at least one of orthographic and phonetic must be on");
  }
}

// --- Token-level scores -----------------------------------------------------

std::size_t AffixMatchLength(std::u32string_view h, std::u32string_view r) {
  std::size_t limit = std::min(h.size(), r.size());
  std::size_t prefix = 0;
  while (prefix < limit && h[prefix] == r[prefix]) ++prefix;
  std::size_t suffix = 0;
  while (suffix < limit &&
         h[h.size() - 1 - suffix] == r[r.size() - 1 - suffix]) {
    ++suffix;
  }
  return std::max(prefix, suffix);
}

std::size_t AffixMatchLength(std::string_view h, std::string_view r,
                             bool case_fold) {
  auto a = DecodeUtf8(h);
  auto b = DecodeUtf8(r);
  if (case_fold) {
    a = FoldCase(a);
    b = FoldCase(b);
  }
  return AffixMatchLength(a, b);
}

double TokenScore(std::u32string_view h, std::u32string_view r) {
  if (h.empty() || r.empty()) {
    throw ContractError("token score is undefined for empty strings");
  }
  double n = static_cast<double>(AffixMatchLength(h, r));
  return std::min(n / static_cast<double>(h.size()),
                  n / static_cast<double>(r.size()));
}

double TokenScore(std::string_view h, std::string_view r, bool case_fold) {
  auto a = DecodeUtf8(h);
  auto b = DecodeUtf8(r);
  if (case_fold) {
    a = FoldCase(a);
    b = FoldCase(b);
  }
  return TokenScore(a, b);
}

std::size_t EditDistance(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t EditDistance(std::string_view a, std::string_view b,
                         bool case_fold) {
  auto x = DecodeUtf8(a);
  auto y = DecodeUtf8(b);
  if (case_fold) {
    x = FoldCase(x);
    y = FoldCase(y);
  }
  return EditDistance(x, y);
}

// --- Entity-level scores ----------------------------------------------------

MatchForm MakeMatchForm(std::string_view text, const MatchConfig &config,
                        const G2PTable *table) {
  MatchForm form;
  form.surface = DecodeUtf8(text);
  if (config.case_fold) form.surface = FoldCase(form.surface);
  if (config.phonetic && table != nullptr) {
    form.ipa = Transliterate(form.surface, *table);
  }
  return form;
}

double EntityTokenScore(std::span<const MatchForm> hypotheses,
                        const MatchForm &target, const MatchConfig &config) {
  double best = 0.0;
  if (target.surface.empty()) return best;
  for (const auto &h : hypotheses) {
    if (h.surface.empty()) continue;
    if (config.orthographic) {
      best = std::max(best, TokenScore(h.surface, target.surface));
    }
    if (config.phonetic && !h.ipa.empty() && !target.ipa.empty()) {
      best = std::max(best, TokenScore(h.ipa, target.ipa));
    }
    if (best == 1.0) break;
  }
  return best;
}

double EntityTokenScore(const HypothesisTokens &hypotheses,
                        std::string_view target_token,
                        const MatchConfig &config, const G2PTable *table) {
  std::vector<MatchForm> forms;
  forms.reserve(hypotheses.tokens.size());
  for (const auto &h : hypotheses.tokens) {
    forms.push_back(MakeMatchForm(h, config, table));
  }
  return EntityTokenScore(forms, MakeMatchForm(target_token, config, table),
                          config);
}

ScoreMatrix BuildScoreMatrix(const std::vector<HypothesisTokens> &hypotheses,
                             const TaggedSentence &target,
                             const MatchConfig &config,
                             const G2PTable *table) {
  ScoreMatrix matrix(hypotheses.size(), target.size());
  std::vector<MatchForm> target_forms;
  target_forms.reserve(target.size());
  for (const auto &tok : target.tokens) {
    target_forms.push_back(MakeMatchForm(tok, config, table));
  }
  for (std::size_t r = 0; r < hypotheses.size(); ++r) {
    std::vector<MatchForm> forms;
    for (const auto &h : hypotheses[r].tokens) {
      forms.push_back(MakeMatchForm(h, config, table));
    }
    for (std::size_t c = 0; c < target.size(); ++c) {
      matrix.at(r, c) = EntityTokenScore(forms, target_forms[c], config);
    }
  }
  return matrix;
}

// --- Spans and best match ---------------------------------------------------

std::vector<CandidateSpan> GenerateSpans(std::span<const double> scores,
                                         const TaggedSentence &target,
                                         double delta) {
  if (scores.size() != target.size()) {
    throw ContractError("score row length " + std::to_string(scores.size()) +
                        " does not match sentence length " +
                        std::to_string(target.size()));
  }
  std::vector<CandidateSpan> spans;
  std::size_t i = 0;
  while (i < scores.size()) {
    if (scores[i] < delta) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < scores.size() && scores[j + 1] >= delta) ++j;
    CandidateSpan span;
    span.first = i;
    span.last = j;
    span.scores.assign(scores.begin() + i, scores.begin() + j + 1);
    span.surface = JoinTokens(target.tokens, i, j);
    spans.push_back(std::move(span));
    i = j + 1;
  }
  return spans;
}

std::string_view MatchMethodName(MatchMethod method) {
  return method == MatchMethod::kEdit ? "edit" : "dist";
}

std::optional<AlignmentPair> SelectBestMatch(
    const Entity &entity, const std::vector<CandidateSpan> &candidates,
    const PermutationSet &permutations, bool case_fold) {
  if (candidates.empty()) return std::nullopt;

  std::vector<std::u32string> perms;
  perms.reserve(permutations.candidates.size());
  for (const auto &p : permutations.candidates) {
    auto cps = DecodeUtf8(p);
    perms.push_back(case_fold ? FoldCase(cps) : cps);
  }

  const CandidateSpan *best = nullptr;
  std::size_t best_distance = std::numeric_limits<std::size_t>::max();
  for (const auto &span : candidates) {
    auto surface = DecodeUtf8(span.surface);
    if (case_fold) surface = FoldCase(surface);
    std::size_t distance = perms.empty() ? surface.size()
                                         : std::numeric_limits<std::size_t>::max();
    for (const auto &p : perms) {
      distance = std::min(distance, EditDistance(p, surface));
      if (distance == 0) break;
    }
    bool better = best == nullptr || distance < best_distance;
    if (!better && distance == best_distance) {
      better = span.first < best->first ||
               (span.first == best->first &&
                span.last - span.first < best->last - best->first);
    }
    if (better) {
      best = &span;
      best_distance = distance;
    }
  }

  AlignmentPair pair;
  pair.source = entity;
  pair.target_first = best->first;
  pair.target_last = best->last;
  pair.target_surface = best->surface;
  pair.score = static_cast<double>(best_distance);
  pair.method = MatchMethod::kEdit;
  return pair;
}

// --- Sentence alignment -----------------------------------------------------

EntityHypotheses PrepareEntity(const Entity &entity, const MatchConfig &config,
                               TranslationProvider *provider,
                               const BilingualLexicon *lexicon,
                               const LanguagePair &langs) {
  EntityHypotheses ev;
  ev.translations = BuildTranslationSet(entity, config.channels(), provider,
                                        lexicon, langs, config.case_fold);
  ev.tokens = TokenizeTranslations(ev.translations);
  ev.permutations =
      PermuteTranslations(ev.translations, config.cap_tokens, config.cap_total);
  return ev;
}

SentenceAlignment AlignSentence(std::size_t sentence_index,
                                const TaggedSentence &source,
                                const TaggedSentence &target,
                                const std::vector<EntityHypotheses> &evidence,
                                const MatchConfig &config,
                                const G2PTable *table) {
  const auto entities = ExtractEntities(source);
  if (entities.size() != evidence.size()) {
    throw ContractError("sentence " + std::to_string(sentence_index) + ": " +
                        std::to_string(entities.size()) + " entities but " +
                        std::to_string(evidence.size()) + " evidence entries");
  }

  SentenceAlignment result;
  result.claimed.assign(target.size(), false);

  std::vector<MatchForm> target_forms;
  target_forms.reserve(target.size());
  for (const auto &tok : target.tokens) {
    target_forms.push_back(MakeMatchForm(tok, config, table));
  }

  for (std::size_t e = 0; e < entities.size(); ++e) {
    std::vector<MatchForm> forms;
    for (const auto &h : evidence[e].tokens.tokens) {
      forms.push_back(MakeMatchForm(h, config, table));
    }
    std::vector<double> row(target.size());
    for (std::size_t c = 0; c < target.size(); ++c) {
      row[c] = EntityTokenScore(forms, target_forms[c], config);
    }
    auto spans = GenerateSpans(row, target, config.delta);
    std::erase_if(spans, [&](const CandidateSpan &s) {
      for (std::size_t i = s.first; i <= s.last; ++i) {
        if (result.claimed[i]) return true;
      }
      return false;
    });

    auto pair = SelectBestMatch(entities[e], spans, evidence[e].permutations,
                                config.case_fold);
    if (!pair) {
      result.unmatched.push_back(entities[e]);
      continue;
    }
    pair->sentence = sentence_index;
    for (std::size_t i = pair->target_first; i <= pair->target_last; ++i) {
      result.claimed[i] = true;
    }
    result.pairs.push_back(std::move(*pair));
  }
  return result;
}

// --- Distribution-based matching --------------------------------------------

std::string TfIdfStats::Key(std::string_view token) const {
  return case_fold ? FoldCaseUtf8(token) : std::string(token);
}

double TfIdfStats::Idf(std::string_view token) const {
  auto it = df.find(Key(token));
  double d = it == df.end() ? 0.0 : static_cast<double>(it->second);
  return std::log((static_cast<double>(documents) + 1.0) / (d + 1.0)) + 1.0;
}

double TfIdfStats::Score(std::string_view token) const {
  auto it = tf.find(Key(token));
  double t = it == tf.end() ? 0.0 : static_cast<double>(it->second);
  return t * Idf(token);
}

TfIdfStats ComputeTfIdf(const Corpus &target,
                        const std::vector<SentenceAlignment> &alignments,
                        bool case_fold) {
  if (alignments.size() != target.size()) {
    throw ContractError("alignment count does not match corpus size");
  }
  TfIdfStats stats;
  stats.case_fold = case_fold;
  stats.documents = target.size();
  for (std::size_t i = 0; i < target.size(); ++i) {
    const auto &tokens = target.sentences[i].tokens;
    std::set<std::string> seen;
    for (const auto &tok : tokens) seen.insert(stats.Key(tok));
    for (const auto &key : seen) ++stats.df[key];

    const auto &al = alignments[i];
    if (al.unmatched.empty()) continue;
    for (std::size_t p = 0; p < tokens.size(); ++p) {
      bool claimed = p < al.claimed.size() && al.claimed[p];
      if (!claimed) ++stats.tf[stats.Key(tokens[p])];
    }
  }
  return stats;
}

std::vector<AlignmentPair> DistributionMatchSentence(
    std::size_t sentence_index, const TaggedSentence &target,
    const std::vector<Entity> &unmatched, std::vector<bool> &claimed,
    const TfIdfStats &stats, std::size_t k) {
  std::vector<AlignmentPair> pairs;
  if (unmatched.empty()) return pairs;
  claimed.resize(target.size(), false);

  struct Scored {
    std::size_t position;
    double score;
  };
  std::vector<Scored> ranked;
  for (std::size_t p = 0; p < target.size(); ++p) {
    if (claimed[p] || IsPunctuationOnly(target.tokens[p])) continue;
    ranked.push_back({p, stats.Score(target.tokens[p])});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Scored &a, const Scored &b) {
                     return a.score > b.score;
                   });
  if (ranked.size() > k) ranked.resize(k);

  for (const auto &entity : unmatched) {
    auto it = std::find_if(ranked.begin(), ranked.end(), [&](const Scored &s) {
      return !claimed[s.position];
    });
    if (it == ranked.end()) continue;
    claimed[it->position] = true;
    AlignmentPair pair;
    pair.sentence = sentence_index;
    pair.source = entity;
    pair.target_first = it->position;
    pair.target_last = it->position;
    pair.target_surface = target.tokens[it->position];
    pair.score = it->score;
    pair.method = MatchMethod::kDist;
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<AlignmentPair> DistributionMatch(
    const Corpus &target, std::vector<SentenceAlignment> &alignments,
    const TfIdfStats &stats, std::size_t k, std::size_t workers) {
  if (alignments.size() != target.size()) {
    throw ContractError("alignment count does not match corpus size");
  }
  std::vector<std::vector<AlignmentPair>> found(target.size());
  ParallelFor(target.size(), workers, [&](std::size_t i) {
    auto &al = alignments[i];
    found[i] = DistributionMatchSentence(i, target.sentences[i], al.unmatched,
                                         al.claimed, stats, k);
    std::erase_if(al.unmatched, [&](const Entity &e) {
      return std::any_of(found[i].begin(), found[i].end(),
                         [&](const AlignmentPair &p) { return p.source == e; });
    });
    al.pairs.insert(al.pairs.end(), found[i].begin(), found[i].end());
    std::stable_sort(al.pairs.begin(), al.pairs.end(),
                     [](const AlignmentPair &a, const AlignmentPair &b) {
                       return a.source.first < b.source.first;
                     });
  });
  std::vector<AlignmentPair> all;
  for (auto &f : found) all.insert(all.end(), f.begin(), f.end());
  return all;
}

}  // namespace annoproj
