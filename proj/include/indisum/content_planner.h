#ifndef INDISUM_CONTENT_PLANNER_H_
#define INDISUM_CONTENT_PLANNER_H_

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "indisum/core_model.h"
#include "indisum/topic_typing.h"

namespace indisum {

struct DocRef {
  std::string doc_id;
  std::string title;
  friend bool operator==(const DocRef&, const DocRef&) = default;
};

enum class FeatureKind { content_types, special_content };

std::string_view to_string(FeatureKind kind);

// Messages -------------------------------------------------------------------

struct Description {
  DocumentCategory category;
  friend bool operator==(const Description&, const Description&) = default;
};

struct SetElements {
  DocumentCategory category;
  std::vector<DocRef> members;
  // Members were permuted so a feature subset forms a contiguous prefix.
  bool reordered = false;
  friend bool operator==(const SetElements&, const SetElements&) = default;
};

struct HasTopics {
  DocumentCategory category;
  std::vector<std::string> topics;
  friend bool operator==(const HasTopics&, const HasTopics&) = default;
};

struct HasFeature {
  DocumentCategory category;
  FeatureKind kind;
  std::vector<std::string> values;
  std::vector<std::string> subset;  // doc ids, in SetElements order
  friend bool operator==(const HasFeature&, const HasFeature&) = default;
};

using Message = std::variant<Description, SetElements, HasTopics, HasFeature>;

std::string_view relation_name(const Message& message);
DocumentCategory category_of(const Message& message);
bool is_obligatory(const Message& message);

// Plans ----------------------------------------------------------------------

struct CategoryPlan {
  DocumentCategory category;
  std::vector<Message> messages;

  const SetElements& set_elements() const;
};

struct SummaryPlan {
  std::vector<CategoryPlan> categories;
};

struct ClassifiedDocument {
  TypedTree typed;
  DocumentCategory category;
};

struct PlannerOptions {
  std::size_t topic_cap = 3;
};

// Messages for one instantiated category. Throws ContractViolation when
// members is empty or holds a document of another category.
CategoryPlan instantiate(DocumentCategory category, const std::vector<ClassifiedDocument>& members,
                         const PlannerOptions& options = {});

// One CategoryPlan per category that has members, in the fixed category order.
SummaryPlan plan(const std::vector<ClassifiedDocument>& classified,
                 const PlannerOptions& options = {});

}  // namespace indisum

#endif  // INDISUM_CONTENT_PLANNER_H_
