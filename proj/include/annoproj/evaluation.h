#ifndef ANNOPROJ_EVALUATION_H_
#define ANNOPROJ_EVALUATION_H_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "annoproj/corpus.h"
#include "annoproj/matching.h"

namespace annoproj {

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// f1 = 2PR / (P + R), or 0 when P + R == 0.
Prf MakePrf(std::size_t correct, std::size_t predicted, std::size_t gold);

// Over sentences whose projection has no more entities than the source:
// sum(source - projected) / sum(source). 0 when no entity qualifies.
// Throws Error when the corpora differ in length.
double MissRate(const Corpus &source, const Corpus &projected);

// Over sentences whose projection has more entities than the source:
// sum(projected - source) / sum(projected).
double ExcessRate(const Corpus &source, const Corpus &projected);

// One aligned pair as stored in alignment files:
// {"sent": int, "src_span": [j, k], "tgt_span": [q, r], "type": str}
struct AlignmentRecord {
  std::size_t sent = 0;
  std::size_t src_first = 0;
  std::size_t src_last = 0;
  std::size_t tgt_first = 0;
  std::size_t tgt_last = 0;
  std::string type;

  auto operator<=>(const AlignmentRecord &) const = default;
};

AlignmentRecord ToRecord(const AlignmentPair &pair);

std::vector<AlignmentRecord> ParseAlignments(std::string_view text);
std::vector<AlignmentRecord> LoadAlignments(const std::filesystem::path &path);
std::string SerializeAlignments(const std::vector<AlignmentRecord> &records);

// A prediction is correct when a gold record has the same sentence, source
// span and target span. Duplicates count once.
Prf AlignmentPrf(const std::vector<AlignmentRecord> &pred,
                 const std::vector<AlignmentRecord> &gold);

// Exact span and type match over index-aligned tagged corpora.
Prf NerSpanPrf(const Corpus &pred, const Corpus &gold);
double NerSpanF1(const Corpus &pred, const Corpus &gold);

struct EvalReport {
  double miss_rate = 0.0;
  double excess_rate = 0.0;
  std::optional<Prf> alignment;  // when gold alignments are available
  std::optional<Prf> span;       // when a gold target corpus is available

  std::string ToJson() const;
  std::string ToTable() const;
};

}  // namespace annoproj

#endif  // ANNOPROJ_EVALUATION_H_
