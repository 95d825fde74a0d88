#include "indisum/content_planner.h"

#include <algorithm>
#include <map>
#include <set>

namespace indisum {

namespace {

std::size_t relevant_count(const TypedTree& t) {
  return t.count(TopicType::typical) + t.count(TopicType::rare);
}

const std::set<std::string>& feature_values(const DocumentTopicTree& doc, FeatureKind kind) {
  return kind == FeatureKind::content_types ? doc.metadata.content_types
                                            : doc.metadata.special_content;
}

// Picks the value set shared by the most members (a member shares a set when
// its own values include it). Ties prefer larger sets, then the
// lexicographically smaller one.
std::optional<std::set<std::string>> dominant_values(const std::vector<const ClassifiedDocument*>& members,
                                                     FeatureKind kind) {
  std::set<std::set<std::string>> candidates;
  for (const auto* m : members) {
    const auto& v = feature_values(m->typed.doc, kind);
    if (!v.empty()) candidates.insert(v);
  }
  std::optional<std::set<std::string>> best;
  std::size_t best_score = 0;
  for (const auto& cand : candidates) {
    std::size_t score = 0;
    for (const auto* m : members) {
      const auto& v = feature_values(m->typed.doc, kind);
      score += std::includes(v.begin(), v.end(), cand.begin(), cand.end());
    }
    if (!best || score > best_score || (score == best_score && cand.size() > best->size())) {
      best = cand;
      best_score = score;
    }
  }
  return best;
}

std::vector<std::string> sample_topics(const std::vector<const ClassifiedDocument*>& members,
                                       TopicType wanted, std::size_t cap) {
  struct Tally {
    std::string display;
    std::size_t docs = 0;
  };
  std::map<std::string, Tally> tally;
  for (const auto* m : members) {
    std::set<std::string> seen;
    TreeIndex<TopicNode> index(m->typed.doc.root);
    for (const auto& e : index.preorder()) {
      if (m->typed.types.at(e.node->id) != wanted) continue;
      std::string key = normalize_text(e.node->label.canonical());
      if (!seen.insert(key).second) continue;
      auto& t = tally[key];
      if (t.display.empty()) t.display = display_text(e.node->label.canonical());
      ++t.docs;
    }
  }
  std::vector<std::pair<std::string, Tally>> ranked(tally.begin(), tally.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second.docs > b.second.docs;
  });
  std::vector<std::string> out;
  for (const auto& [key, t] : ranked) {
    if (out.size() >= cap) break;
    out.push_back(t.display);
  }
  return out;
}

}  // namespace

std::string_view to_string(FeatureKind kind) {
  return kind == FeatureKind::content_types ? "content_types" : "special_content";
}

std::string_view relation_name(const Message& message) {
  struct Visitor {
    std::string_view operator()(const Description&) const { return "description"; }
    std::string_view operator()(const SetElements&) const { return "setElements"; }
    std::string_view operator()(const HasTopics&) const { return "hasTopics"; }
    std::string_view operator()(const HasFeature&) const { return "hasFeature"; }
  };
  return std::visit(Visitor{}, message);
}

DocumentCategory category_of(const Message& message) {
  return std::visit([](const auto& m) { return m.category; }, message);
}

bool is_obligatory(const Message& message) {
  return std::holds_alternative<Description>(message) ||
         std::holds_alternative<SetElements>(message);
}

const SetElements& CategoryPlan::set_elements() const {
  for (const auto& m : messages) {
    if (const auto* s = std::get_if<SetElements>(&m)) return *s;
  }
  throw ContractViolation("category plan has no setElements message");
}

CategoryPlan instantiate(DocumentCategory category, const std::vector<ClassifiedDocument>& members,
                         const PlannerOptions& options) {
  if (members.empty()) {
    throw ContractViolation("cannot instantiate category '" + std::string(to_string(category)) +
                            "' without members");
  }
  std::vector<const ClassifiedDocument*> ordered;
  for (const auto& m : members) {
    if (m.category != category) {
      throw ContractViolation("document '" + m.typed.doc.doc_id + "' is not in category '" +
                              std::string(to_string(category)) + "'");
    }
    ordered.push_back(&m);
  }
  std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
    auto ra = relevant_count(a->typed), rb = relevant_count(b->typed);
    if (ra != rb) return ra > rb;
    return a->typed.doc.doc_id < b->typed.doc.doc_id;
  });

  struct FeatureChoice {
    FeatureKind kind;
    std::set<std::string> values;
  };
  std::vector<FeatureChoice> features;
  for (FeatureKind kind : {FeatureKind::content_types, FeatureKind::special_content}) {
    if (auto v = dominant_values(ordered, kind)) features.push_back({kind, std::move(*v)});
  }

  auto has_values = [](const ClassifiedDocument* m, const FeatureChoice& f) {
    const auto& v = feature_values(m->typed.doc, f.kind);
    return std::includes(v.begin(), v.end(), f.values.begin(), f.values.end());
  };

  bool reordered = false;
  if (!features.empty()) {
    auto before = ordered;
    std::stable_partition(ordered.begin(), ordered.end(),
                          [&](const auto* m) { return has_values(m, features.front()); });
    reordered = before != ordered;
  }

  CategoryPlan out{category, {}};
  out.messages.emplace_back(Description{category});
  SetElements set{category, {}, reordered};
  for (const auto* m : ordered) {
    set.members.push_back(DocRef{m->typed.doc.doc_id, display_title(m->typed.doc)});
  }
  out.messages.emplace_back(std::move(set));

  if (category == DocumentCategory::atypical || category == DocumentCategory::deep) {
    TopicType wanted =
        category == DocumentCategory::atypical ? TopicType::rare : TopicType::intricate;
    auto topics = sample_topics(ordered, wanted, options.topic_cap);
    if (!topics.empty()) out.messages.emplace_back(HasTopics{category, std::move(topics)});
  }

  for (const auto& f : features) {
    HasFeature msg{category, f.kind, {f.values.begin(), f.values.end()}, {}};
    for (const auto* m : ordered) {
      if (has_values(m, f)) msg.subset.push_back(m->typed.doc.doc_id);
    }
    out.messages.emplace_back(std::move(msg));
  }
  return out;
}

SummaryPlan plan(const std::vector<ClassifiedDocument>& classified, const PlannerOptions& options) {
  SummaryPlan out;
  for (DocumentCategory category : kCategoryOrder) {
    std::vector<ClassifiedDocument> members;
    for (const auto& c : classified) {
      if (c.category == category) members.push_back(c);
    }
    if (members.empty()) continue;
    out.categories.push_back(instantiate(category, members, options));
  }
  return out;
}

}  // namespace indisum
