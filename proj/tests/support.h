#ifndef INDISUM_TESTS_SUPPORT_H_
#define INDISUM_TESTS_SUPPORT_H_

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "indisum/pipeline.h"

namespace indisum::testing {

inline std::filesystem::path fixture_dir() { return INDISUM_FIXTURE_DIR; }

// Tree literal: T("root", {T("a"), T("b", {T("c")})}). Ids are assigned in
// pre-order by make_doc.
struct T {
  std::string label;
  std::vector<T> kids;
  T(std::string l, std::vector<T> k = {}) : label(std::move(l)), kids(std::move(k)) {}
};

inline TopicNode build_node(const T& t, std::uint32_t& next) {
  TopicNode n;
  n.id = NodeId{next++};
  n.label = LexicalForms(t.label);
  for (const auto& k : t.kids) n.children.push_back(build_node(k, next));
  return n;
}

inline DocumentTopicTree make_doc(std::string doc_id, const T& root) {
  std::uint32_t next = 0;
  DocumentTopicTree d;
  d.doc_id = std::move(doc_id);
  d.root = build_node(root, next);
  return d;
}

// Finds the id of the first node (pre-order) with the given canonical label.
inline NodeId id_of(const DocumentTopicTree& doc, std::string_view label) {
  TreeIndex<TopicNode> index(doc.root);
  for (const auto& e : index.preorder()) {
    if (e.node->label.canonical() == label) return e.node->id;
  }
  throw std::runtime_error("no node labeled " + std::string(label));
}

inline CompositeId cid_of(const CompositeTopicTree& c, std::string_view label) {
  TreeIndex<CompositeNode> index(c.root);
  for (const auto& e : index.preorder()) {
    if (e.node->label.contains(label)) return e.node->id;
  }
  throw std::runtime_error("no composite node labeled " + std::string(label));
}

inline const CompositeNode& cnode(const CompositeTopicTree& c, std::string_view label) {
  TreeIndex<CompositeNode> index(c.root);
  return *index.at(cid_of(c, label)).node;
}

// Random tree over a fixed label pool. Children of one parent get distinct
// labels so exact-label corpora stay unambiguous.
inline T random_tree(std::mt19937& rng, const std::vector<std::string>& pool, int max_depth,
                     int max_children, std::string root_label = "Root") {
  std::function<T(std::string, int)> grow = [&](std::string label, int depth) {
    T t(std::move(label));
    if (depth >= max_depth) return t;
    int n = std::uniform_int_distribution<int>(0, max_children)(rng);
    std::vector<std::string> labels = pool;
    std::shuffle(labels.begin(), labels.end(), rng);
    for (int i = 0; i < n && i < static_cast<int>(labels.size()); ++i) {
      t.kids.push_back(grow(labels[i], depth + 1));
    }
    return t;
  };
  return grow(std::move(root_label), 0);
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::filesystem::path& p, std::string_view text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("indisum_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "indisum");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Independent reading of the table of category rules: ratios in doubles,
// evaluated row by row.
inline DocumentCategory table_oracle(const TypeDistribution& d) {
  double t = static_cast<double>(d.typical) / d.total;
  double r = static_cast<double>(d.rare) / d.total;
  double i = static_cast<double>(d.intricate) / d.total;
  double x = static_cast<double>(d.irrelevant) / d.total;
  double cov = d.possible_typical == 0 ? 0.0
                                       : static_cast<double>(d.covered_typical) / d.possible_typical;
  struct Row {
    bool hit;
    DocumentCategory cat;
  };
  const Row rows[] = {
      {t > 0.5 && cov > 0.5, DocumentCategory::prototypical},
      {cov > 0.5, DocumentCategory::comprehensive},
      {t > 0.5, DocumentCategory::specialized},
      {r > 0.5, DocumentCategory::atypical},
      {i > 0.5, DocumentCategory::deep},
      {x > 0.5, DocumentCategory::irrelevant},
  };
  for (const auto& row : rows) {
    if (row.hit) return row.cat;
  }
  return DocumentCategory::generic;
}

// Parent-pointer walk: distance from `ancestor` down to `target`, or -1.
inline int naive_depth_below(const TopicNode& root, NodeId ancestor, NodeId target) {
  std::map<NodeId, NodeId> parent;
  std::vector<const TopicNode*> stack{&root};
  while (!stack.empty()) {
    const auto* n = stack.back();
    stack.pop_back();
    for (const auto& c : n->children) {
      parent[c.id] = n->id;
      stack.push_back(&c);
    }
  }
  int d = 0;
  NodeId cur = target;
  while (true) {
    if (cur == ancestor) return d;
    auto it = parent.find(cur);
    if (it == parent.end()) return -1;
    cur = it->second;
    ++d;
  }
}

}  // namespace indisum::testing

#endif  // INDISUM_TESTS_SUPPORT_H_
