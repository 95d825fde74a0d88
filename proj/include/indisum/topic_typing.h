#ifndef INDISUM_TOPIC_TYPING_H_
#define INDISUM_TOPIC_TYPING_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "indisum/composite.h"
#include "indisum/core_model.h"

namespace indisum {

enum class Region { relevant, intricate, irrelevant };

std::string_view to_string(Region region);

// A document with one topic type per node, relative to a query.
struct TypedTree {
  DocumentTopicTree doc;
  std::string query;
  std::optional<NodeId> query_node;
  std::map<NodeId, TopicType> types;

  std::size_t count(TopicType type) const;
};

// Node whose lexical forms are most similar to the query; ties go to the
// shallower node, then the earlier node in pre-order. nullopt when the best
// similarity is below tau. Throws ContractViolation for a blank query.
std::optional<NodeId> map_query(std::string_view query, const TopicNode& root, double tau);
std::optional<CompositeId> map_query(std::string_view query, const CompositeNode& root,
                                     double tau);

// Query-node subtree within k hops is relevant (the query node included),
// deeper subtree nodes are intricate, everything else is irrelevant.
std::map<NodeId, Region> assign_regions(const TopicNode& root, NodeId query_node, int k);
std::map<CompositeId, Region> assign_regions(const CompositeNode& root, CompositeId query_node,
                                             int k);

// Relevant nodes become typical when their aligned composite node has
// typicality >= alpha, rare otherwise (unaligned nodes count as 0).
TypedTree assign_types(const DocumentTopicTree& doc, const std::map<NodeId, Region>& regions,
                       const CompositeTopicTree& composite, const Alignment& alignment,
                       double alpha);

// map_query + assign_regions + assign_types. With no query match every node
// is irrelevant.
TypedTree type_document(const DocumentTopicTree& doc, std::string_view query,
                        const CompositeTopicTree& composite, const Alignment& alignment,
                        const TypingParams& params);

}  // namespace indisum

#endif  // INDISUM_TOPIC_TYPING_H_
