#ifndef INDISUM_CORE_MODEL_H_
#define INDISUM_CORE_MODEL_H_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace indisum {

// Errors ---------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A node id was referenced that the tree does not contain, or ids collide.
class MalformedTree : public Error {
 public:
  using Error::Error;
};

// A caller broke an operation's precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Identifiers ----------------------------------------------------------------

// Document node ids are pre-order indices assigned at parse time.
enum class NodeId : std::uint32_t {};
// Composite node ids are pre-order indices of the (sorted) composite tree.
enum class CompositeId : std::uint32_t {};

constexpr std::uint32_t value_of(NodeId id) { return static_cast<std::uint32_t>(id); }
constexpr std::uint32_t value_of(CompositeId id) { return static_cast<std::uint32_t>(id); }

// Text normalization ---------------------------------------------------------

// Case-fold (ASCII), trim, collapse internal whitespace and strip trailing
// punctuation. All label comparison goes through this.
std::string normalize_text(std::string_view text);

// Lowercase, trimmed, whitespace-collapsed text that keeps punctuation. Used
// when a topic label is quoted inside generated prose.
std::string display_text(std::string_view text);

// Word tokens of already-normalized text. Bytes >= 0x80 count as word
// characters so UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view normalized);

// Lexical forms --------------------------------------------------------------

// Ordered, non-empty set of surface strings for one topic; the first entry is
// the canonical form. Forms are unique after normalization.
class LexicalForms {
 public:
  LexicalForms() : LexicalForms(std::string_view("untitled")) {}
  explicit LexicalForms(std::string_view canonical);
  explicit LexicalForms(const std::vector<std::string>& forms);

  // Returns false when an equivalent form is already present.
  bool add(std::string_view form);
  void merge(const LexicalForms& other);

  const std::string& canonical() const { return forms_.front(); }
  const std::string& canonical_normalized() const { return normalized_.front(); }
  std::span<const std::string> forms() const { return forms_; }
  std::span<const std::string> normalized() const { return normalized_; }
  bool contains(std::string_view form) const;
  std::size_t size() const { return forms_.size(); }

  friend bool operator==(const LexicalForms& a, const LexicalForms& b) {
    return a.forms_ == b.forms_;
  }

 private:
  std::vector<std::string> forms_;
  std::vector<std::string> normalized_;
};

// Document topic trees -------------------------------------------------------

struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct TopicNode {
  NodeId id{};
  LexicalForms label;
  std::vector<TopicNode> children;
  std::optional<CompositeId> composite_link;
  std::optional<SourceSpan> source_span;

  friend bool operator==(const TopicNode&, const TopicNode&) = default;
};

struct DocumentMetadata {
  std::optional<std::string> title;
  std::set<std::string> content_types;
  std::set<std::string> special_content;
  std::string source_path;

  friend bool operator==(const DocumentMetadata&, const DocumentMetadata&) = default;
};

struct DocumentTopicTree {
  std::string doc_id;
  TopicNode root;
  DocumentMetadata metadata;

  friend bool operator==(const DocumentTopicTree&, const DocumentTopicTree&) = default;
};

// Title used when a document is named in prose: metadata title, else the root
// label, else the doc id.
std::string display_title(const DocumentTopicTree& doc);

// Composite topic trees ------------------------------------------------------

// Exact non-negative rational, used to accumulate sibling ranks so that the
// composite does not depend on floating-point summation order.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction make(std::int64_t num, std::int64_t den);
  // Closest fraction with denominator <= max_den (continued fractions).
  static Fraction approximate(double value, std::int64_t max_den = 1'000'000);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Fraction operator+(const Fraction& a, const Fraction& b);
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct CompositeNode {
  CompositeId id{};
  LexicalForms label;
  double typicality = 0.0;
  double position = 0.0;
  int support = 0;
  // Sum of normalized sibling ranks over contributing documents;
  // position == rank_sum / support.
  Fraction rank_sum;
  std::vector<CompositeNode> children;

  friend bool operator==(const CompositeNode&, const CompositeNode&) = default;
};

struct CompositeTopicTree {
  CompositeNode root;
  std::string domain_genre;
  int doc_count = 0;

  friend bool operator==(const CompositeTopicTree&, const CompositeTopicTree&) = default;
};

// Parameters and labels ------------------------------------------------------

struct TypingParams {
  int k = 2;             // intricate beam depth
  double alpha = 0.5;    // typicality threshold
  double tau = 0.3;      // query-match similarity floor

  // Throws ContractViolation when out of range.
  void validate() const;
};

enum class TopicType { typical, rare, intricate, irrelevant };

enum class DocumentCategory {
  prototypical,
  comprehensive,
  specialized,
  atypical,
  deep,
  irrelevant,
  generic,
};

inline constexpr std::array<DocumentCategory, 7> kCategoryOrder = {
    DocumentCategory::prototypical, DocumentCategory::comprehensive,
    DocumentCategory::specialized,  DocumentCategory::atypical,
    DocumentCategory::deep,         DocumentCategory::irrelevant,
    DocumentCategory::generic,
};

inline constexpr std::array<TopicType, 4> kTopicTypes = {
    TopicType::typical, TopicType::rare, TopicType::intricate, TopicType::irrelevant};

std::string_view to_string(TopicType type);
std::string_view to_string(DocumentCategory category);
std::optional<DocumentCategory> parse_category(std::string_view name);

// Tree queries ---------------------------------------------------------------

// Flat pre-order view of a tree with parent links and depths. Works for both
// TopicNode and CompositeNode.
template <typename Node>
class TreeIndex {
 public:
  using Id = decltype(Node::id);

  struct Entry {
    const Node* node = nullptr;
    std::optional<Id> parent;
    std::size_t depth = 0;
    std::size_t preorder = 0;
  };

  explicit TreeIndex(const Node& root);

  bool contains(Id id) const { return by_id_.count(id) != 0; }
  // Throws MalformedTree for unknown ids.
  const Entry& at(Id id) const;
  std::span<const Entry> preorder() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<Entry> entries_;
  std::map<Id, std::size_t> by_id_;
};

extern template class TreeIndex<TopicNode>;
extern template class TreeIndex<CompositeNode>;

// Downward edge count ancestor -> target, or nullopt when target is not in
// ancestor's subtree. Throws MalformedTree for unknown ids.
std::optional<std::size_t> depth_below(const TopicNode& tree, NodeId ancestor, NodeId target);
std::optional<std::size_t> depth_below(const TreeIndex<TopicNode>& index, NodeId ancestor,
                                       NodeId target);
std::optional<std::size_t> depth_below(const TreeIndex<CompositeNode>& index,
                                       CompositeId ancestor, CompositeId target);

// Number of nodes including the root.
std::size_t topic_count(const DocumentTopicTree& tree);
std::size_t node_count(const CompositeTopicTree& tree);

}  // namespace indisum

#endif  // INDISUM_CORE_MODEL_H_
