#include "indisum/composite.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace indisum {

namespace {

using Json = nlohmann::ordered_json;

// Mutable flat copy of a composite used while folding in a document.
struct WorkNode {
  LexicalForms label;
  int support = 0;
  Fraction rank_sum;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> kids;
  bool touched = false;
  bool created = false;
};

void flatten(const CompositeNode& node, std::optional<std::size_t> parent,
             std::vector<WorkNode>& out, std::map<CompositeId, std::size_t>& by_id) {
  std::size_t self = out.size();
  out.push_back(WorkNode{node.label, node.support, node.rank_sum, parent, {}, false, false});
  by_id[node.id] = self;
  if (parent) out[*parent].kids.push_back(self);
  for (const auto& c : node.children) flatten(c, self, out, by_id);
}

double position_of(const WorkNode& w) {
  return w.support > 0 ? w.rank_sum.to_double() / w.support : 0.0;
}

CompositeNode rebuild(const std::vector<WorkNode>& work, std::size_t i, int doc_count,
                      std::uint32_t& next_id) {
  const WorkNode& w = work[i];
  CompositeNode node{static_cast<CompositeId>(next_id++),
                     w.label,
                     static_cast<double>(w.support) / static_cast<double>(doc_count),
                     position_of(w),
                     w.support,
                     w.rank_sum,
                     {}};
  std::vector<std::size_t> kids = w.kids;
  std::sort(kids.begin(), kids.end(), [&](std::size_t a, std::size_t b) {
    return std::forward_as_tuple(position_of(work[a]), work[a].label.canonical_normalized(), a) <
           std::forward_as_tuple(position_of(work[b]), work[b].label.canonical_normalized(), b);
  });
  node.children.reserve(kids.size());
  for (std::size_t k : kids) node.children.push_back(rebuild(work, k, doc_count, next_id));
  return node;
}

// Normalized sibling rank: index / max(count - 1, 1).
Fraction sibling_rank(std::size_t index, std::size_t count) {
  auto den = static_cast<std::int64_t>(std::max<std::size_t>(count, 2) - 1);
  return Fraction::make(static_cast<std::int64_t>(index), den);
}

void fold_document(std::vector<WorkNode>& work, const std::map<CompositeId, std::size_t>& by_id,
                   const TopicNode& node, std::size_t node_slot, const Alignment& alignment) {
  const std::size_t count = node.children.size();
  for (std::size_t i = 0; i < count; ++i) {
    const TopicNode& child = node.children[i];
    Fraction rank = sibling_rank(i, count);
    std::size_t slot = 0;
    if (auto match = alignment.find(child.id)) {
      auto it = by_id.find(*match);
      if (it == by_id.end()) {
        throw MalformedTree("alignment refers to unknown composite id " +
                            std::to_string(value_of(*match)));
      }
      slot = it->second;
    } else {
      // Repeated novel headers under one parent collapse into one new node.
      std::optional<std::size_t> reuse;
      for (std::size_t k : work[node_slot].kids) {
        if (work[k].created && label_similarity(work[k].label, child.label) == 1.0) {
          reuse = k;
          break;
        }
      }
      if (reuse) {
        slot = *reuse;
      } else {
        slot = work.size();
        work.push_back(WorkNode{child.label, 0, Fraction{}, node_slot, {}, false, true});
        work[node_slot].kids.push_back(slot);
      }
    }
    WorkNode& w = work[slot];
    if (!w.touched) {
      w.touched = true;
      w.support += 1;
      w.rank_sum = w.rank_sum + rank;
    }
    w.label.merge(child.label);
    fold_document(work, by_id, child, slot, alignment);
  }
}

void ensure_doc_covered(const DocumentTopicTree& doc, const Alignment& alignment) {
  TreeIndex<TopicNode> index(doc.root);
  for (const auto& e : index.preorder()) {
    bool paired = alignment.pairs.count(e.node->id) != 0;
    bool unmatched = alignment.unmatched.count(e.node->id) != 0;
    if (paired == unmatched) {
      throw MalformedTree("document node " + std::to_string(value_of(e.node->id)) +
                          " must be either paired or unmatched");
    }
  }
  if (alignment.pairs.size() + alignment.unmatched.size() != index.size()) {
    throw MalformedTree("alignment references nodes outside the document");
  }
}

CompositeTopicTree fold(const CompositeTopicTree& composite, const DocumentTopicTree& doc,
                        const Alignment& alignment) {
  std::vector<WorkNode> work;
  std::map<CompositeId, std::size_t> by_id;
  flatten(composite.root, std::nullopt, work, by_id);

  WorkNode& root = work[0];
  root.touched = true;
  root.support += 1;
  root.rank_sum = root.rank_sum + Fraction{0, 1};
  root.label.merge(doc.root.label);
  fold_document(work, by_id, doc.root, 0, alignment);

  int doc_count = composite.doc_count + 1;
  std::uint32_t next_id = 0;
  return CompositeTopicTree{rebuild(work, 0, doc_count, next_id), composite.domain_genre,
                            doc_count};
}

// Serialization --------------------------------------------------------------

Json node_to_json(const CompositeNode& node) {
  Json j;
  j["id"] = value_of(node.id);
  j["forms"] = Json::array();
  for (const auto& f : node.label.forms()) j["forms"].push_back(f);
  j["typicality"] = node.typicality;
  j["position"] = node.position;
  j["support"] = node.support;
  j["rank_sum"] = Json::array({node.rank_sum.num, node.rank_sum.den});
  j["children"] = Json::array();
  for (const auto& c : node.children) j["children"].push_back(node_to_json(c));
  return j;
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + ": missing field '" + key + "'");
  return *it;
}

std::int64_t require_int(const Json& j, const char* key, const std::string& where) {
  const Json& v = require(j, key, where);
  if (!v.is_number_integer()) throw SchemaError(where + ": field '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

double require_number(const Json& j, const char* key, const std::string& where) {
  const Json& v = require(j, key, where);
  if (!v.is_number()) throw SchemaError(where + ": field '" + key + "' must be a number");
  return v.get<double>();
}

constexpr double kTolerance = 1e-9;

CompositeNode node_from_json(const Json& j, int doc_count, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": node must be an object");
  std::int64_t id = require_int(j, "id", where);
  if (id < 0 || id > static_cast<std::int64_t>(UINT32_MAX)) {
    throw SchemaError(where + ": id out of range");
  }
  std::string here = where + "/" + std::to_string(id);

  const Json& forms_j = require(j, "forms", here);
  if (!forms_j.is_array() || forms_j.empty()) {
    throw SchemaError(here + ": 'forms' must be a non-empty array");
  }
  std::vector<std::string> forms;
  for (const auto& f : forms_j) {
    if (!f.is_string()) throw SchemaError(here + ": forms must be strings");
    forms.push_back(f.get<std::string>());
  }
  std::optional<LexicalForms> label;
  try {
    label.emplace(forms);
  } catch (const ContractViolation& e) {
    throw SchemaError(here + ": " + e.what());
  }
  if (label->size() != forms.size()) {
    throw SchemaError(here + ": forms must be unique after normalization");
  }

  std::int64_t support = require_int(j, "support", here);
  if (support < 1) throw SchemaError(here + ": support must be positive");
  if (support > doc_count) {
    throw SchemaError(here + ": support " + std::to_string(support) + " exceeds doc_count " +
                      std::to_string(doc_count));
  }
  double typicality = static_cast<double>(support) / static_cast<double>(doc_count);
  double stored_typicality = require_number(j, "typicality", here);
  if (std::fabs(stored_typicality - typicality) > kTolerance) {
    throw SchemaError(here + ": typicality does not equal support/doc_count");
  }

  double position = require_number(j, "position", here);
  if (!(position >= 0.0 && position <= 1.0)) {
    throw SchemaError(here + ": position must lie in [0, 1]");
  }
  Fraction rank_sum;
  if (auto it = j.find("rank_sum"); it != j.end()) {
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_integer() ||
        !(*it)[1].is_number_integer()) {
      throw SchemaError(here + ": rank_sum must be [numerator, denominator]");
    }
    auto num = (*it)[0].get<std::int64_t>();
    auto den = (*it)[1].get<std::int64_t>();
    if (num < 0 || den <= 0) throw SchemaError(here + ": rank_sum must be a non-negative fraction");
    rank_sum = Fraction::make(num, den);
    double derived = rank_sum.to_double() / static_cast<double>(support);
    if (std::fabs(derived - position) > kTolerance) {
      throw SchemaError(here + ": position does not equal rank_sum/support");
    }
    position = derived;
  } else {
    rank_sum = Fraction::approximate(position * static_cast<double>(support));
  }

  CompositeNode node{static_cast<CompositeId>(id), std::move(*label), typicality, position,
                     static_cast<int>(support), rank_sum, {}};
  const Json& kids = require(j, "children", here);
  if (!kids.is_array()) throw SchemaError(here + ": 'children' must be an array");
  for (const auto& c : kids) node.children.push_back(node_from_json(c, doc_count, here));
  for (std::size_t i = 1; i < node.children.size(); ++i) {
    if (node.children[i].position < node.children[i - 1].position) {
      throw SchemaError(here + ": children must be ordered by ascending position");
    }
  }
  return node;
}

}  // namespace

double label_similarity(const LexicalForms& a, const LexicalForms& b) {
  for (const auto& na : a.normalized()) {
    for (const auto& nb : b.normalized()) {
      if (na == nb) return 1.0;
    }
  }
  double best = 0.0;
  for (const auto& na : a.normalized()) {
    auto ta = tokenize(na);
    std::set<std::string> sa(ta.begin(), ta.end());
    for (const auto& nb : b.normalized()) {
      auto tb = tokenize(nb);
      std::set<std::string> sb(tb.begin(), tb.end());
      std::size_t shared = 0;
      for (const auto& t : sa) shared += sb.count(t);
      std::size_t uni = sa.size() + sb.size() - shared;
      if (uni == 0) continue;
      best = std::max(best, static_cast<double>(shared) / static_cast<double>(uni));
    }
  }
  return best;
}

Alignment align_tree(const DocumentTopicTree& doc, const CompositeTopicTree& composite,
                     double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ContractViolation("alignment threshold must lie in [0, 1]");
  }
  Alignment out;
  out.pairs[doc.root.id] = composite.root.id;

  struct Candidate {
    const CompositeNode* node;
    double similarity;
    bool is_anchor;
  };
  auto better = [](const Candidate& a, const Candidate& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    if (a.is_anchor != b.is_anchor) return !a.is_anchor;
    if (a.node->position != b.node->position) return a.node->position < b.node->position;
    return a.node->id < b.node->id;
  };

  struct Frame {
    const TopicNode* node;
    const CompositeNode* anchor;
  };
  std::vector<Frame> stack{{&doc.root, &composite.root}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    for (auto it = f.node->children.rbegin(); it != f.node->children.rend(); ++it) {
      const TopicNode& child = *it;
      std::optional<Candidate> best;
      auto consider = [&](const CompositeNode& c, bool is_anchor) {
        Candidate cand{&c, label_similarity(child.label, c.label), is_anchor};
        if (!best || better(cand, *best)) best = cand;
      };
      for (const auto& c : f.anchor->children) consider(c, false);
      consider(*f.anchor, true);

      if (best && best->similarity >= threshold) {
        out.pairs[child.id] = best->node->id;
        stack.push_back(Frame{&child, best->node});
      } else {
        out.unmatched.insert(child.id);
        stack.push_back(Frame{&child, f.anchor});
      }
    }
  }
  return out;
}

void check_alignment(const DocumentTopicTree& doc, const CompositeTopicTree& composite,
                     const Alignment& alignment) {
  ensure_doc_covered(doc, alignment);
  TreeIndex<TopicNode> dindex(doc.root);
  TreeIndex<CompositeNode> cindex(composite.root);
  for (const auto& [node, target] : alignment.pairs) {
    if (!cindex.contains(target)) {
      throw MalformedTree("alignment targets unknown composite id " +
                          std::to_string(value_of(target)));
    }
    const auto& entry = dindex.at(node);
    if (!entry.parent) {
      if (target != composite.root.id) throw MalformedTree("document root must align with composite root");
      continue;
    }
    if (auto parent_target = alignment.find(*entry.parent)) {
      if (!depth_below(cindex, *parent_target, target)) {
        throw MalformedTree("node " + std::to_string(value_of(node)) +
                            " aligned outside its parent's composite subtree");
      }
    }
  }
}

DocumentTopicTree link_to_composite(const DocumentTopicTree& doc, const Alignment& alignment) {
  DocumentTopicTree out = doc;
  std::vector<TopicNode*> stack{&out.root};
  while (!stack.empty()) {
    TopicNode* n = stack.back();
    stack.pop_back();
    n->composite_link = alignment.find(n->id);
    for (auto& c : n->children) stack.push_back(&c);
  }
  return out;
}

CompositeTopicTree merge(const CompositeTopicTree& composite, const DocumentTopicTree& doc,
                         const Alignment& alignment) {
  ensure_doc_covered(doc, alignment);
  if (alignment.find(doc.root.id) != composite.root.id) {
    throw MalformedTree("document root must align with composite root");
  }
  return fold(composite, doc, alignment);
}

CompositeTopicTree seed_composite(const DocumentTopicTree& doc, std::string domain_genre) {
  CompositeTopicTree empty{
      CompositeNode{CompositeId{0}, doc.root.label, 0.0, 0.0, 0, Fraction{}, {}},
      std::move(domain_genre), 0};
  Alignment alignment;
  alignment.pairs[doc.root.id] = empty.root.id;
  TreeIndex<TopicNode> index(doc.root);
  for (const auto& e : index.preorder()) {
    if (e.parent) alignment.unmatched.insert(e.node->id);
  }
  return fold(empty, doc, alignment);
}

CompositeTopicTree build_composite(const CorpusSet& corpus, double threshold,
                                   std::string domain_genre) {
  if (corpus.docs.empty()) throw EmptyCorpus();
  CompositeTopicTree composite = seed_composite(corpus.docs.front(), std::move(domain_genre));
  for (std::size_t i = 1; i < corpus.docs.size(); ++i) {
    const auto& doc = corpus.docs[i];
    composite = merge(composite, doc, align_tree(doc, composite, threshold));
  }
  return composite;
}

std::string serialize_composite(const CompositeTopicTree& composite) {
  Json j;
  j["version"] = std::string(kCompositeSchemaVersion);
  j["domain_genre"] = composite.domain_genre;
  j["doc_count"] = composite.doc_count;
  j["root"] = node_to_json(composite.root);
  return j.dump(2) + "\n";
}

CompositeTopicTree parse_composite(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("composite file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("composite file must hold an object");
  const Json& version = require(j, "version", "composite");
  if (!version.is_string() || version.get<std::string>() != kCompositeSchemaVersion) {
    throw SchemaError("unsupported composite schema version " + version.dump() + " (expected \"" +
                      std::string(kCompositeSchemaVersion) + "\")");
  }
  std::int64_t doc_count = require_int(j, "doc_count", "composite");
  if (doc_count < 1 || doc_count > INT32_MAX) throw SchemaError("doc_count must be positive");
  std::string domain_genre;
  if (auto it = j.find("domain_genre"); it != j.end()) {
    if (!it->is_string()) throw SchemaError("domain_genre must be a string");
    domain_genre = it->get<std::string>();
  }

  CompositeTopicTree out{node_from_json(require(j, "root", "composite"),
                                        static_cast<int>(doc_count), "root"),
                         std::move(domain_genre), static_cast<int>(doc_count)};
  if (out.root.support != out.doc_count) {
    throw SchemaError("root support must equal doc_count");
  }
  try {
    TreeIndex<CompositeNode> index(out.root);
  } catch (const MalformedTree& e) {
    throw SchemaError(e.what());
  }
  return out;
}

void save_composite(const CompositeTopicTree& composite, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write composite file: " + path.string());
  out << serialize_composite(composite);
  if (!out) throw IoError("failed writing composite file: " + path.string());
}

CompositeTopicTree load_composite(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read composite file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_composite(buf.str());
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

}  // namespace indisum
