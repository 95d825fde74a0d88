#include "indisum/topic_typing.h"

#include <tuple>

namespace indisum {

namespace {

template <typename Node>
std::optional<decltype(Node::id)> map_query_impl(std::string_view query, const Node& root,
                                                 double tau) {
  if (display_text(query).empty()) throw ContractViolation("query must be non-empty");
  LexicalForms query_forms(query);
  TreeIndex<Node> index(root);

  const typename TreeIndex<Node>::Entry* best = nullptr;
  double best_sim = -1.0;
  for (const auto& e : index.preorder()) {
    double sim = label_similarity(query_forms, e.node->label);
    // Pre-order visit means an equal-depth tie keeps the earlier node.
    if (!best || sim > best_sim || (sim == best_sim && e.depth < best->depth)) {
      best = &e;
      best_sim = sim;
    }
  }
  if (best_sim < tau) return std::nullopt;
  return best->node->id;
}

template <typename Node>
std::map<decltype(Node::id), Region> assign_regions_impl(const Node& root,
                                                         decltype(Node::id) query_node, int k) {
  if (k < 1) throw ContractViolation("k must be >= 1");
  TreeIndex<Node> index(root);
  index.at(query_node);
  std::map<decltype(Node::id), Region> regions;
  for (const auto& e : index.preorder()) {
    auto depth = depth_below(index, query_node, e.node->id);
    Region r = Region::irrelevant;
    if (depth) r = *depth <= static_cast<std::size_t>(k) ? Region::relevant : Region::intricate;
    regions.emplace(e.node->id, r);
  }
  return regions;
}

}  // namespace

std::string_view to_string(Region region) {
  switch (region) {
    case Region::relevant: return "relevant";
    case Region::intricate: return "intricate";
    case Region::irrelevant: return "irrelevant";
  }
  return "?";
}

std::size_t TypedTree::count(TopicType type) const {
  std::size_t n = 0;
  for (const auto& [id, t] : types) n += t == type;
  return n;
}

std::optional<NodeId> map_query(std::string_view query, const TopicNode& root, double tau) {
  return map_query_impl(query, root, tau);
}

std::optional<CompositeId> map_query(std::string_view query, const CompositeNode& root,
                                     double tau) {
  return map_query_impl(query, root, tau);
}

std::map<NodeId, Region> assign_regions(const TopicNode& root, NodeId query_node, int k) {
  return assign_regions_impl(root, query_node, k);
}

std::map<CompositeId, Region> assign_regions(const CompositeNode& root, CompositeId query_node,
                                             int k) {
  return assign_regions_impl(root, query_node, k);
}

TypedTree assign_types(const DocumentTopicTree& doc, const std::map<NodeId, Region>& regions,
                       const CompositeTopicTree& composite, const Alignment& alignment,
                       double alpha) {
  TreeIndex<TopicNode> dindex(doc.root);
  TreeIndex<CompositeNode> cindex(composite.root);
  TypedTree out{doc, {}, std::nullopt, {}};
  for (const auto& e : dindex.preorder()) {
    auto it = regions.find(e.node->id);
    if (it == regions.end()) {
      throw ContractViolation("region map misses node " + std::to_string(value_of(e.node->id)));
    }
    TopicType type = TopicType::irrelevant;
    switch (it->second) {
      case Region::irrelevant: type = TopicType::irrelevant; break;
      case Region::intricate: type = TopicType::intricate; break;
      case Region::relevant: {
        double typicality = 0.0;
        if (auto match = alignment.find(e.node->id)) typicality = cindex.at(*match).node->typicality;
        type = typicality >= alpha ? TopicType::typical : TopicType::rare;
        break;
      }
    }
    out.types.emplace(e.node->id, type);
    // The query node is the shallowest relevant node; pre-order meets it first.
    if (it->second == Region::relevant && !out.query_node) out.query_node = e.node->id;
  }
  return out;
}

TypedTree type_document(const DocumentTopicTree& doc, std::string_view query,
                        const CompositeTopicTree& composite, const Alignment& alignment,
                        const TypingParams& params) {
  params.validate();
  auto query_node = map_query(query, doc.root, params.tau);
  TypedTree out;
  if (!query_node) {
    out = TypedTree{doc, {}, std::nullopt, {}};
    TreeIndex<TopicNode> index(doc.root);
    for (const auto& e : index.preorder()) out.types.emplace(e.node->id, TopicType::irrelevant);
  } else {
    out = assign_types(doc, assign_regions(doc.root, *query_node, params.k), composite, alignment,
                       params.alpha);
    out.query_node = query_node;
  }
  out.query = std::string(query);
  return out;
}

}  // namespace indisum
