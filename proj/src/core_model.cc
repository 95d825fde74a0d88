#include "indisum/core_model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace indisum {

namespace {

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c >= 0x80;
}

bool is_ascii_punct(unsigned char c) {
  return c < 0x80 && !is_word_byte(c) && !is_space(c) && c > 0x20 && c != 0x7f;
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string fold_and_collapse(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char raw : text) {
    auto c = static_cast<unsigned char>(raw);
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(ascii_lower(raw));
  }
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("fraction overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error("fraction overflow");
  return r;
}

}  // namespace

std::string normalize_text(std::string_view text) {
  std::string out = fold_and_collapse(text);
  while (!out.empty() && (is_ascii_punct(static_cast<unsigned char>(out.back())) ||
                          out.back() == ' ')) {
    out.pop_back();
  }
  return out;
}

std::string display_text(std::string_view text) { return fold_and_collapse(text); }

std::vector<std::string> tokenize(std::string_view normalized) {
  std::vector<std::string> tokens;
  std::string current;
  for (char raw : normalized) {
    if (is_word_byte(static_cast<unsigned char>(raw))) {
      current.push_back(ascii_lower(raw));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

// LexicalForms ---------------------------------------------------------------

LexicalForms::LexicalForms(std::string_view canonical) {
  if (!add(canonical)) throw ContractViolation("lexical form must be non-empty");
}

LexicalForms::LexicalForms(const std::vector<std::string>& forms) {
  for (const auto& f : forms) add(f);
  if (forms_.empty()) throw ContractViolation("lexical forms must contain at least one form");
}

bool LexicalForms::add(std::string_view form) {
  std::string collapsed = display_text(form);
  if (collapsed.empty()) return false;
  std::string norm = normalize_text(form);
  if (std::find(normalized_.begin(), normalized_.end(), norm) != normalized_.end()) return false;
  // Keep the caller's spelling, minus surrounding whitespace.
  std::size_t b = form.find_first_not_of(" \t\r\n\f\v");
  std::size_t e = form.find_last_not_of(" \t\r\n\f\v");
  forms_.emplace_back(form.substr(b, e - b + 1));
  normalized_.push_back(std::move(norm));
  return true;
}

void LexicalForms::merge(const LexicalForms& other) {
  for (const auto& f : other.forms_) add(f);
}

bool LexicalForms::contains(std::string_view form) const {
  std::string norm = normalize_text(form);
  return std::find(normalized_.begin(), normalized_.end(), norm) != normalized_.end();
}

std::string display_title(const DocumentTopicTree& doc) {
  if (doc.metadata.title && !doc.metadata.title->empty()) return *doc.metadata.title;
  if (!doc.root.label.canonical().empty()) return doc.root.label.canonical();
  return doc.doc_id;
}

// Fraction -------------------------------------------------------------------

Fraction Fraction::make(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) throw ContractViolation("fraction must be non-negative with positive denominator");
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  return Fraction{num / g, den / g};
}

Fraction Fraction::approximate(double value, std::int64_t max_den) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ContractViolation("cannot approximate a negative or non-finite value");
  }
  // Stern-Brocot style continued fraction expansion.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = value;
  for (int iter = 0; iter < 64; ++iter) {
    double a_d = std::floor(x);
    if (a_d > static_cast<double>(std::numeric_limits<std::int32_t>::max())) break;
    auto a = static_cast<std::int64_t>(a_d);
    std::int64_t p2 = a * p1 + p0;
    std::int64_t q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = x - a_d;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  if (q1 == 0) return make(static_cast<std::int64_t>(std::llround(value)), 1);
  return make(p1, q1);
}

Fraction operator+(const Fraction& a, const Fraction& b) {
  std::int64_t g = std::gcd(a.den, b.den);
  std::int64_t lcm = checked_mul(a.den / g, b.den);
  std::int64_t num = checked_add(checked_mul(a.num, lcm / a.den), checked_mul(b.num, lcm / b.den));
  return Fraction::make(num, lcm);
}

// Params and labels ----------------------------------------------------------

void TypingParams::validate() const {
  if (k < 1) throw ContractViolation("k must be >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ContractViolation("alpha must lie in [0, 1]");
  if (!(tau >= 0.0 && tau <= 1.0)) throw ContractViolation("tau must lie in [0, 1]");
}

std::string_view to_string(TopicType type) {
  switch (type) {
    case TopicType::typical: return "typical";
    case TopicType::rare: return "rare";
    case TopicType::intricate: return "intricate";
    case TopicType::irrelevant: return "irrelevant";
  }
  return "?";
}

std::string_view to_string(DocumentCategory category) {
  switch (category) {
    case DocumentCategory::prototypical: return "prototypical";
    case DocumentCategory::comprehensive: return "comprehensive";
    case DocumentCategory::specialized: return "specialized";
    case DocumentCategory::atypical: return "atypical";
    case DocumentCategory::deep: return "deep";
    case DocumentCategory::irrelevant: return "irrelevant";
    case DocumentCategory::generic: return "generic";
  }
  return "?";
}

std::optional<DocumentCategory> parse_category(std::string_view name) {
  for (auto c : kCategoryOrder) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

// TreeIndex ------------------------------------------------------------------

template <typename Node>
TreeIndex<Node>::TreeIndex(const Node& root) {
  struct Frame {
    const Node* node;
    std::optional<Id> parent;
    std::size_t depth;
  };
  std::vector<Frame> stack{{&root, std::nullopt, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    std::size_t pos = entries_.size();
    if (!by_id_.emplace(f.node->id, pos).second) {
      throw MalformedTree("duplicate node id " + std::to_string(value_of(f.node->id)));
    }
    entries_.push_back(Entry{f.node, f.parent, f.depth, pos});
    for (auto it = f.node->children.rbegin(); it != f.node->children.rend(); ++it) {
      stack.push_back(Frame{&*it, f.node->id, f.depth + 1});
    }
  }
}

template <typename Node>
const typename TreeIndex<Node>::Entry& TreeIndex<Node>::at(Id id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) {
    throw MalformedTree("unknown node id " + std::to_string(value_of(id)));
  }
  return entries_[it->second];
}

template class TreeIndex<TopicNode>;
template class TreeIndex<CompositeNode>;

namespace {

template <typename Node, typename Id>
std::optional<std::size_t> depth_below_impl(const TreeIndex<Node>& index, Id ancestor, Id target) {
  const auto& anc = index.at(ancestor);
  const auto* cur = &index.at(target);
  while (cur->depth > anc.depth) cur = &index.at(*cur->parent);
  if (cur->node != anc.node) return std::nullopt;
  return index.at(target).depth - anc.depth;
}

template <typename Node>
std::size_t count_nodes(const Node& node) {
  std::size_t n = 1;
  for (const auto& c : node.children) n += count_nodes(c);
  return n;
}

}  // namespace

std::optional<std::size_t> depth_below(const TopicNode& tree, NodeId ancestor, NodeId target) {
  return depth_below(TreeIndex<TopicNode>(tree), ancestor, target);
}

std::optional<std::size_t> depth_below(const TreeIndex<TopicNode>& index, NodeId ancestor,
                                       NodeId target) {
  return depth_below_impl(index, ancestor, target);
}

std::optional<std::size_t> depth_below(const TreeIndex<CompositeNode>& index,
                                       CompositeId ancestor, CompositeId target) {
  return depth_below_impl(index, ancestor, target);
}

std::size_t topic_count(const DocumentTopicTree& tree) { return count_nodes(tree.root); }
std::size_t node_count(const CompositeTopicTree& tree) { return count_nodes(tree.root); }

}  // namespace indisum
