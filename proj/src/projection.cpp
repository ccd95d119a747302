#include "annoproj/projection.h"

#include <algorithm>

#include "annoproj/error.h"

namespace annoproj {

TaggedSentence ProjectTags(const TaggedSentence &target,
                           const std::vector<AlignmentPair> &pairs) {
  std::vector<const AlignmentPair *> order;
  order.reserve(pairs.size());
  for (const auto &p : pairs) {
    if (p.target_first > p.target_last || p.target_last >= target.size()) {
      throw ContractError("aligned span [" + std::to_string(p.target_first) +
                          "," + std::to_string(p.target_last) +
                          "] is outside the target sentence");
    }
    order.push_back(&p);
  }
  std::sort(order.begin(), order.end(),
            [](const AlignmentPair *a, const AlignmentPair *b) {
              return a->target_first < b->target_first;
            });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i - 1]->Overlaps(*order[i])) {
      throw ContractError("overlapping aligned spans at target token " +
                          std::to_string(order[i]->target_first));
    }
  }

  TaggedSentence out;
  out.tokens = target.tokens;
  out.tags.assign(target.size(), IobTag::Outside());
  for (const auto *p : order) {
    out.tags[p->target_first] = IobTag::Begin(p->source.type);
    for (std::size_t i = p->target_first + 1; i <= p->target_last; ++i) {
      out.tags[i] = IobTag::Inside(p->source.type);
    }
  }
  return out;
}

}  // namespace annoproj
