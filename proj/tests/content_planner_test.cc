#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.h"

using namespace indisum;
using namespace indisum::testing;

namespace {

// Every node typed `fill` except the labels listed in `overrides`.
ClassifiedDocument classified(const std::string& id, const T& tree, DocumentCategory category,
                              TopicType fill = TopicType::typical,
                              std::map<std::string, TopicType> overrides = {},
                              DocumentMetadata meta = {}) {
  ClassifiedDocument c{TypedTree{make_doc(id, tree), "q", NodeId{0}, {}}, category};
  c.typed.doc.metadata = std::move(meta);
  TreeIndex<TopicNode> index(c.typed.doc.root);
  for (const auto& e : index.preorder()) {
    auto it = overrides.find(e.node->label.canonical());
    c.typed.types[e.node->id] = it == overrides.end() ? fill : it->second;
  }
  return c;
}

DocumentMetadata content(std::set<std::string> types) {
  DocumentMetadata m;
  m.content_types = std::move(types);
  return m;
}

std::vector<std::string> relations(const CategoryPlan& p) {
  std::vector<std::string> out;
  for (const auto& m : p.messages) out.emplace_back(relation_name(m));
  return out;
}

}  // namespace

TEST_CASE("atypical category with two guides") {
  auto rare = std::map<std::string, TopicType>{{"Definition", TopicType::rare},
                                               {"What are the risks?", TopicType::rare}};
  DocumentMetadata ama_meta, cu_meta;
  ama_meta.title = "AMA guide";
  cu_meta.title = "CU Guide";
  std::vector<ClassifiedDocument> members{
      classified("cu", T("CU Guide", {T("Definition"), T("What are the risks?")}),
                 DocumentCategory::atypical, TopicType::typical, rare, cu_meta),
      classified("ama", T("AMA guide", {T("Definition"), T("What are the risks?")}),
                 DocumentCategory::atypical, TopicType::typical, rare, ama_meta),
  };
  auto p = instantiate(DocumentCategory::atypical, members);
  CHECK(relations(p) == std::vector<std::string>{"description", "setElements", "hasTopics"});
  const auto& set = p.set_elements();
  REQUIRE(set.members.size() == 2);
  CHECK(set.members[0] == DocRef{"ama", "AMA guide"});
  CHECK(set.members[1] == DocRef{"cu", "CU Guide"});
  CHECK(std::get<HasTopics>(p.messages[2]).topics ==
        std::vector<std::string>{"definition", "what are the risks?"});
}

TEST_CASE("single prototypical member without metadata") {
  auto p = instantiate(DocumentCategory::prototypical,
                       {classified("m", T("Mayo", {T("Causes")}), DocumentCategory::prototypical)});
  CHECK(relations(p) == std::vector<std::string>{"description", "setElements"});
}

TEST_CASE("five of nine members share figures and tables") {
  std::vector<ClassifiedDocument> members;
  for (int i = 0; i < 9; ++i) {
    auto meta = i % 2 == 0 ? content({"figures", "tables"}) : DocumentMetadata{};
    members.push_back(classified("d" + std::to_string(i), T("Doc"), DocumentCategory::generic,
                                 TopicType::irrelevant, {}, meta));
  }
  auto p = instantiate(DocumentCategory::generic, members);
  REQUIRE(p.messages.size() == 3);
  const auto& f = std::get<HasFeature>(p.messages[2]);
  CHECK(f.kind == FeatureKind::content_types);
  CHECK(f.values == std::vector<std::string>{"figures", "tables"});
  CHECK(f.subset == std::vector<std::string>{"d0", "d2", "d4", "d6", "d8"});
  // Members are reordered so the subset comes first.
  const auto& set = p.set_elements();
  CHECK(set.reordered);
  for (std::size_t i = 0; i < 5; ++i) CHECK(set.members[i].doc_id == f.subset[i]);
}

TEST_CASE("dominant feature set prefers the larger set on ties") {
  std::vector<ClassifiedDocument> members{
      classified("a", T("A"), DocumentCategory::generic, TopicType::irrelevant, {},
                 content({"figures", "tables"})),
      classified("b", T("B"), DocumentCategory::generic, TopicType::irrelevant, {},
                 content({"figures", "tables"})),
      classified("c", T("C"), DocumentCategory::generic, TopicType::irrelevant, {},
                 content({"figures"})),
  };
  auto p = instantiate(DocumentCategory::generic, members);
  const auto& f = std::get<HasFeature>(p.messages.back());
  // {figures} is shared by 3, {figures, tables} by 2.
  CHECK(f.values == std::vector<std::string>{"figures"});
  CHECK(f.subset.size() == 3);
}

TEST_CASE("deep category samples intricate topics by frequency then alphabet") {
  auto intricate = [](std::vector<std::string> labels) {
    std::map<std::string, TopicType> m;
    for (auto& l : labels) m[l] = TopicType::intricate;
    return m;
  };
  std::vector<ClassifiedDocument> members{
      classified("a", T("A", {T("Zeta"), T("Recovery"), T("Stents")}), DocumentCategory::deep,
                 TopicType::typical, intricate({"Zeta", "Recovery", "Stents"})),
      classified("b", T("B", {T("Zeta"), T("Alpha"), T("Recovery")}), DocumentCategory::deep,
                 TopicType::typical, intricate({"Zeta", "Alpha", "Recovery"})),
  };
  auto p = instantiate(DocumentCategory::deep, members);
  CHECK(std::get<HasTopics>(p.messages[2]).topics ==
        std::vector<std::string>{"recovery", "zeta", "alpha"});
}

TEST_CASE("member order: more relevant topics first, then doc id") {
  std::vector<ClassifiedDocument> members{
      classified("b", T("B", {T("x")}), DocumentCategory::specialized),
      classified("c", T("C", {T("x"), T("y")}), DocumentCategory::specialized),
      classified("a", T("A", {T("x")}), DocumentCategory::specialized),
  };
  auto p = instantiate(DocumentCategory::specialized, members);
  std::vector<std::string> ids;
  for (const auto& m : p.set_elements().members) ids.push_back(m.doc_id);
  CHECK(ids == std::vector<std::string>{"c", "a", "b"});
  CHECK_FALSE(p.set_elements().reordered);
}

TEST_CASE("instantiate contract") {
  CHECK_THROWS_AS(instantiate(DocumentCategory::deep, {}), ContractViolation);
  CHECK_THROWS_AS(instantiate(DocumentCategory::deep,
                              {classified("a", T("A"), DocumentCategory::generic)}),
                  ContractViolation);
}

TEST_CASE("plan examples") {
  auto doc = [](const std::string& id, DocumentCategory c) { return classified(id, T(id), c); };
  SUBCASE("three categories in fixed order") {
    auto p = plan({doc("d", DocumentCategory::deep), doc("a", DocumentCategory::atypical),
                   doc("p", DocumentCategory::prototypical)});
    REQUIRE(p.categories.size() == 3);
    CHECK(p.categories[0].category == DocumentCategory::prototypical);
    CHECK(p.categories[1].category == DocumentCategory::atypical);
    CHECK(p.categories[2].category == DocumentCategory::deep);
  }
  SUBCASE("empty input") { CHECK(plan({}).categories.empty()); }
  SUBCASE("generic and specialized") {
    auto p = plan({doc("g", DocumentCategory::generic), doc("s", DocumentCategory::specialized)});
    REQUIRE(p.categories.size() == 2);
    CHECK(p.categories[0].category == DocumentCategory::specialized);
    CHECK(p.categories[1].category == DocumentCategory::generic);
  }
}

TEST_CASE("plan invariants on random category assignments") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<ClassifiedDocument> docs;
    std::set<DocumentCategory> used;
    int n = std::uniform_int_distribution<int>(0, 9)(rng);
    for (int i = 0; i < n; ++i) {
      auto c = kCategoryOrder[std::uniform_int_distribution<std::size_t>(0, 6)(rng)];
      used.insert(c);
      auto fill = c == DocumentCategory::atypical ? TopicType::rare
                  : c == DocumentCategory::deep   ? TopicType::intricate
                                                  : TopicType::typical;
      DocumentMetadata meta;
      if (std::bernoulli_distribution(0.4)(rng)) meta.content_types = {"figures"};
      if (std::bernoulli_distribution(0.3)(rng)) meta.special_content = {"glossary"};
      docs.push_back(classified("d" + std::to_string(i), T("R", {T("x"), T("y")}), c, fill, {},
                                meta));
    }
    auto p = plan(docs);
    // Subsequence of the fixed order, one plan per used category.
    std::size_t cursor = 0;
    std::set<DocumentCategory> planned;
    std::size_t members = 0;
    for (const auto& cp : p.categories) {
      while (cursor < kCategoryOrder.size() && kCategoryOrder[cursor] != cp.category) ++cursor;
      CHECK(cursor < kCategoryOrder.size());
      ++cursor;
      planned.insert(cp.category);
      members += cp.set_elements().members.size();
      bool optional_seen = false;
      for (const auto& m : cp.messages) {
        CHECK(category_of(m) == cp.category);
        if (is_obligatory(m)) {
          CHECK_FALSE(optional_seen);
        } else {
          optional_seen = true;
        }
      }
      if (cp.category == DocumentCategory::atypical || cp.category == DocumentCategory::deep) {
        CHECK(std::holds_alternative<HasTopics>(cp.messages[2]));
      }
    }
    CHECK(planned == used);
    CHECK(members == docs.size());
    CHECK(p.categories.size() == planned.size());
  }
}
