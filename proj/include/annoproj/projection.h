#ifndef ANNOPROJ_PROJECTION_H_
#define ANNOPROJ_PROJECTION_H_

#include <vector>

#include "annoproj/corpus.h"
#include "annoproj/matching.h"

namespace annoproj {

// Tags each aligned target span B-X I-X... with the source entity's type and
// everything else O. Throws ContractError for overlapping or out-of-range
// spans.
TaggedSentence ProjectTags(const TaggedSentence &target,
                           const std::vector<AlignmentPair> &pairs);

}  // namespace annoproj

#endif  // ANNOPROJ_PROJECTION_H_
