#include "indisum/classifier.h"

namespace indisum {

int TypeDistribution::count(TopicType type) const {
  switch (type) {
    case TopicType::typical: return typical;
    case TopicType::rare: return rare;
    case TopicType::intricate: return intricate;
    case TopicType::irrelevant: return irrelevant;
  }
  return 0;
}

double TypeDistribution::ratio(TopicType type) const {
  return total > 0 ? static_cast<double>(count(type)) / static_cast<double>(total) : 0.0;
}

double TypeDistribution::coverage() const {
  if (possible_typical <= 0) return 0.0;
  return static_cast<double>(covered_typical) / static_cast<double>(possible_typical);
}

void TypeDistribution::validate() const {
  if (typical < 0 || rare < 0 || intricate < 0 || irrelevant < 0 || covered_typical < 0 ||
      possible_typical < 0) {
    throw ContractViolation("distribution counts must be non-negative");
  }
  if (total < 1) throw ContractViolation("distribution total must be positive");
  if (typical + rare + intricate + irrelevant != total) {
    throw ContractViolation("distribution counts must sum to total");
  }
  if (covered_typical > possible_typical) {
    throw ContractViolation("covered typical topics exceed possible typical topics");
  }
}

std::set<CompositeId> possible_typical_topics(const CompositeTopicTree& composite,
                                              std::string_view query,
                                              const TypingParams& params) {
  params.validate();
  std::set<CompositeId> out;
  auto query_node = map_query(query, composite.root, params.tau);
  if (!query_node) return out;
  TreeIndex<CompositeNode> index(composite.root);
  for (const auto& [id, region] : assign_regions(composite.root, *query_node, params.k)) {
    if (region == Region::relevant && index.at(id).node->typicality >= params.alpha) {
      out.insert(id);
    }
  }
  return out;
}

TypeDistribution distribution(const TypedTree& typed, const CompositeTopicTree& composite,
                              const Alignment& alignment, const TypingParams& params) {
  return distribution(typed, alignment, possible_typical_topics(composite, typed.query, params));
}

TypeDistribution distribution(const TypedTree& typed, const Alignment& alignment,
                              const std::set<CompositeId>& possible) {
  TypeDistribution d;
  std::set<CompositeId> covered;
  for (const auto& [id, type] : typed.types) {
    switch (type) {
      case TopicType::typical: ++d.typical; break;
      case TopicType::rare: ++d.rare; break;
      case TopicType::intricate: ++d.intricate; break;
      case TopicType::irrelevant: ++d.irrelevant; break;
    }
    if (type == TopicType::typical) {
      if (auto match = alignment.find(id); match && possible.count(*match)) covered.insert(*match);
    }
  }
  d.total = static_cast<int>(typed.types.size());
  d.covered_typical = static_cast<int>(covered.size());
  d.possible_typical = static_cast<int>(possible.size());
  return d;
}

DocumentCategory classify(const TypeDistribution& d) {
  d.validate();
  // "More than 50%" is strict: twice the count must exceed the total.
  auto majority = [&](int count) { return 2 * count > d.total; };
  bool covers_most = d.possible_typical > 0 && 2 * d.covered_typical > d.possible_typical;

  if (majority(d.typical) && covers_most) return DocumentCategory::prototypical;
  if (covers_most) return DocumentCategory::comprehensive;
  if (majority(d.typical)) return DocumentCategory::specialized;
  if (majority(d.rare)) return DocumentCategory::atypical;
  if (majority(d.intricate)) return DocumentCategory::deep;
  if (majority(d.irrelevant)) return DocumentCategory::irrelevant;
  return DocumentCategory::generic;
}

}  // namespace indisum
