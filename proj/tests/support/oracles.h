// Independent reference implementations used to check the library. Each one
// takes the slow, obvious route and shares no code with the code under test
// beyond plain data types.
#ifndef ANNOPROJ_TESTS_ORACLES_H_
#define ANNOPROJ_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

// Longest n such that h and r share a prefix or a suffix of length n, found
// by testing every length from the longest down.
inline std::size_t Affix(const std::u32string &h, const std::u32string &r) {
  for (std::size_t n = std::min(h.size(), r.size()); n > 0; --n) {
    if (h.substr(0, n) == r.substr(0, n)) return n;
    if (h.substr(h.size() - n) == r.substr(r.size() - n)) return n;
  }
  return 0;
}

inline double Score(const std::u32string &h, const std::u32string &r) {
  double n = static_cast<double>(Affix(h, r));
  return std::min(n / h.size(), n / r.size());
}

// Full-table Levenshtein.
inline std::size_t Levenshtein(const std::u32string &a, const std::u32string &b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u)});
    }
  }
  return d[a.size()][b.size()];
}

// Every [q, r] whose tokens all clear delta and whose neighbours do not.
inline std::vector<std::pair<std::size_t, std::size_t>> MaximalSpans(
    const std::vector<double> &scores, double delta) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = scores.size();
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t r = q; r < n; ++r) {
      bool valid = true;
      for (std::size_t u = q; u <= r; ++u) valid = valid && scores[u] >= delta;
      if (!valid) continue;
      bool left_ok = q == 0 || scores[q - 1] < delta;
      bool right_ok = r + 1 == n || scores[r + 1] < delta;
      if (left_ok && right_ok) out.emplace_back(q, r);
    }
  }
  return out;
}

struct Choice {
  std::size_t index;
  std::size_t distance;
};

// Fills the whole (permutation x span) distance table, then takes the
// lexicographic minimum of (distance, first, length).
inline std::optional<Choice> BestSpan(
    const std::vector<std::u32string> &perms,
    const std::vector<std::u32string> &span_surfaces,
    const std::vector<std::pair<std::size_t, std::size_t>> &spans) {
  if (spans.empty()) return std::nullopt;
  std::vector<std::vector<std::size_t>> table(
      perms.size(), std::vector<std::size_t>(spans.size()));
  for (std::size_t p = 0; p < perms.size(); ++p) {
    for (std::size_t s = 0; s < spans.size(); ++s) {
      table[p][s] = Levenshtein(perms[p], span_surfaces[s]);
    }
  }
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> keys;
  for (std::size_t s = 0; s < spans.size(); ++s) {
    std::size_t best = perms.empty() ? span_surfaces[s].size() : SIZE_MAX;
    for (std::size_t p = 0; p < perms.size(); ++p) best = std::min(best, table[p][s]);
    keys.emplace_back(best, spans[s].first, spans[s].second - spans[s].first, s);
  }
  auto m = *std::min_element(keys.begin(), keys.end());
  return Choice{std::get<3>(m), std::get<0>(m)};
}

// tf/df by re-reading the corpus twice: once for document frequencies, once
// for term counts restricted to flagged sentences and unclaimed positions.
struct TfIdf {
  std::map<std::string, std::size_t> tf;
  std::map<std::string, std::size_t> df;
  std::size_t n = 0;

  double Idf(const std::string &key) const {
    auto it = df.find(key);
    double d = it == df.end() ? 0.0 : it->second;
    return std::log((n + 1.0) / (d + 1.0)) + 1.0;
  }
};

inline TfIdf Recount(const std::vector<std::vector<std::string>> &sentences,
                     const std::vector<bool> &has_unmatched,
                     const std::vector<std::vector<bool>> &claimed) {
  TfIdf out;
  out.n = sentences.size();
  for (const auto &s : sentences) {
    for (const auto &key : std::set<std::string>(s.begin(), s.end())) {
      ++out.df[key];
    }
  }
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (!has_unmatched[i]) continue;
    for (std::size_t p = 0; p < sentences[i].size(); ++p) {
      if (!claimed[i][p]) ++out.tf[sentences[i][p]];
    }
  }
  return out;
}

inline std::size_t Factorial(std::size_t m) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= m; ++i) f *= i;
  return f;
}

// Precision, recall and F1 from two sets via std::set_intersection.
template <typename T>
std::tuple<double, double, double> SetPrf(std::vector<T> pred, std::vector<T> gold) {
  std::sort(pred.begin(), pred.end());
  pred.erase(std::unique(pred.begin(), pred.end()), pred.end());
  std::sort(gold.begin(), gold.end());
  gold.erase(std::unique(gold.begin(), gold.end()), gold.end());
  std::vector<T> common;
  std::set_intersection(pred.begin(), pred.end(), gold.begin(), gold.end(),
                        std::back_inserter(common));
  double p = pred.empty() ? 0.0 : double(common.size()) / pred.size();
  double r = gold.empty() ? 0.0 : double(common.size()) / gold.size();
  double f = p + r == 0.0 ? 0.0 : 2 * p * r / (p + r);
  return {p, r, f};
}

// Entity spans read straight off a tag-string sequence ("B-X", "I-X", "O").
inline std::vector<std::tuple<std::size_t, std::size_t, std::string>> Spans(
    const std::vector<std::string> &tags) {
  std::vector<std::tuple<std::size_t, std::size_t, std::string>> out;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i][0] != 'B') continue;
    std::string type = tags[i].substr(2);
    std::size_t j = i;
    while (j + 1 < tags.size() && tags[j + 1] == "I-" + type) ++j;
    out.emplace_back(i, j, type);
  }
  return out;
}

}  // namespace oracle

#endif  // ANNOPROJ_TESTS_ORACLES_H_
