#ifndef INDISUM_CLASSIFIER_H_
#define INDISUM_CLASSIFIER_H_

#include <set>

#include "indisum/composite.h"
#include "indisum/core_model.h"
#include "indisum/topic_typing.h"

namespace indisum {

struct TypeDistribution {
  int typical = 0;
  int rare = 0;
  int intricate = 0;
  int irrelevant = 0;
  int total = 0;
  // Distinct composite topics inside the composite's query region that this
  // document covers with typical-typed nodes.
  int covered_typical = 0;
  // Composite topics with typicality >= alpha inside that region.
  int possible_typical = 0;

  int count(TopicType type) const;
  double ratio(TopicType type) const;
  // covered / possible, 0 when nothing is possible.
  double coverage() const;

  // Throws ContractViolation when counts do not add up or covered > possible.
  void validate() const;

  friend bool operator==(const TypeDistribution&, const TypeDistribution&) = default;
};

// Composite nodes with typicality >= alpha in the relevant region of the
// composite for this query (empty when the query does not map).
std::set<CompositeId> possible_typical_topics(const CompositeTopicTree& composite,
                                              std::string_view query,
                                              const TypingParams& params);

TypeDistribution distribution(const TypedTree& typed, const CompositeTopicTree& composite,
                              const Alignment& alignment, const TypingParams& params);
// Variant that reuses a precomputed possible_typical_topics set.
TypeDistribution distribution(const TypedTree& typed, const Alignment& alignment,
                              const std::set<CompositeId>& possible);

// First matching row, in category order, of the "strictly more than half"
// rules; generic when none match.
DocumentCategory classify(const TypeDistribution& d);

}  // namespace indisum

#endif  // INDISUM_CLASSIFIER_H_
