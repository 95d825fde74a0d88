#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.h"

using namespace indisum;
using namespace indisum::testing;

namespace {

std::vector<std::string> preorder_labels(const DocumentTopicTree& doc) {
  std::vector<std::string> out;
  TreeIndex<TopicNode> index(doc.root);
  for (const auto& e : index.preorder()) out.push_back(e.node->label.canonical());
  return out;
}

std::string shape(const TopicNode& n) {
  std::string out = n.label.canonical();
  if (n.children.empty()) return out;
  out += "(";
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (i) out += ",";
    out += shape(n.children[i]);
  }
  return out + ")";
}

}  // namespace

TEST_CASE("headers become a tree mirroring their levels") {
  auto doc = parse_document(
      "# Coronary Artery Disease\n\nIntro.\n\n## Definition\n\ntext\n\n## Symptoms\n\n### Angina\n",
      "cad");
  auto want = make_doc("cad", T("Coronary Artery Disease",
                                {T("Definition"), T("Symptoms", {T("Angina")})}));
  CHECK(doc.root.label.canonical() == "Coronary Artery Disease");
  REQUIRE(doc.root.children.size() == 2);
  CHECK(doc.root.children[1].children.size() == 1);
  CHECK(preorder_labels(doc) == preorder_labels(want));
  CHECK(shape(doc.root) == shape(want.root));
  CHECK(value_of(doc.root.children[1].children[0].id) == 3);
}

TEST_CASE("no headers yields a single node named after the doc id") {
  auto doc = parse_document("just some prose\nwithout any headers\n", "x");
  CHECK(doc.root.label.canonical() == "x");
  CHECK(doc.root.children.empty());
}

TEST_CASE("level jumps attach to the nearest shallower header") {
  auto doc = parse_document("# Top\n### Deep\n## Mid\n", "j");
  CHECK(shape(doc.root) == "Top(Deep,Mid)");
}

TEST_CASE("root selection") {
  SUBCASE("front-matter title wins over the first H1") {
    auto doc = parse_document("---\ntitle: AMA Guide\n---\n# Angina\n## Risks\n", "ama");
    CHECK(doc.root.label.canonical() == "AMA Guide");
    CHECK(preorder_labels(doc) == std::vector<std::string>{"AMA Guide", "Angina", "Risks"});
  }
  SUBCASE("several H1s get a synthesized root") {
    auto doc = parse_document("# One\n# Two\n", "multi");
    CHECK(preorder_labels(doc) == std::vector<std::string>{"multi", "One", "Two"});
  }
  SUBCASE("leading H2s get a synthesized root") {
    auto doc = parse_document("## A\n## B\n", "flat");
    CHECK(doc.root.children.size() == 2);
    CHECK(doc.root.label.canonical() == "flat");
  }
}

TEST_CASE("header syntax details") {
  auto doc = parse_document(
      "# Title #\n\n```\n# not a header\n```\n#NoSpace\n####### seven\n## Closing ##\n", "s");
  CHECK(preorder_labels(doc) == std::vector<std::string>{"Title", "Closing"});
  CHECK(doc.root.source_span.has_value());
}

TEST_CASE("duplicate sibling headers stay separate") {
  auto doc = parse_document("# R\n## Risks\n## Risks\n", "d");
  CHECK(doc.root.children.size() == 2);
  CHECK(doc.root.children[0].id != doc.root.children[1].id);
}

TEST_CASE("pre-order labels equal the header sequence on random header lists") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    int n = std::uniform_int_distribution<int>(0, 12)(rng);
    std::string text;
    std::vector<std::string> want{"doc"};
    for (int i = 0; i < n; ++i) {
      int level = std::uniform_int_distribution<int>(2, 6)(rng);
      std::string label = "H" + std::to_string(i);
      text += std::string(level, '#') + " " + label + "\nbody\n";
      want.push_back(label);
    }
    auto a = parse_document(text, "doc");
    CHECK(preorder_labels(a) == want);
    CHECK(parse_document(text, "doc") == a);
    TreeIndex<TopicNode> index(a.root);
    for (std::size_t i = 0; i < index.size(); ++i) {
      CHECK(value_of(index.preorder()[i].node->id) == i);
    }
  }
}

TEST_CASE("parse_metadata examples") {
  auto m = parse_metadata("title: AMA Guide\ncontent_types: figures, tables");
  CHECK(m.metadata.title == "AMA Guide");
  CHECK(m.metadata.content_types == std::set<std::string>{"figures", "tables"});
  CHECK(m.warnings.empty());

  auto empty = parse_metadata("");
  CHECK(empty.metadata == DocumentMetadata{});

  auto special = parse_metadata("special_content: credit hours");
  CHECK(special.metadata.special_content == std::set<std::string>{"credit hours"});
}

TEST_CASE("malformed metadata lines warn and unknown keys are ignored") {
  auto m = parse_metadata("title: \"Quoted\"\nthis line has no colon\naudience: adults\n");
  CHECK(m.metadata.title == "Quoted");
  CHECK(m.warnings.size() == 1);

  std::vector<Warning> warnings;
  auto doc = parse_document("---\nbroken\n---\n# T\n", "w", &warnings);
  CHECK(warnings.size() == 1);
  CHECK(warnings[0].source == "w");
  CHECK(doc.root.label.canonical() == "T");
}

TEST_CASE("load_corpus") {
  auto dir = scratch_dir("ingest_corpus");
  SUBCASE("files in name order, other extensions skipped") {
    write_file(dir / "c.md", "# C\n");
    write_file(dir / "a.txt", "# A\n");
    write_file(dir / "b.md", "# B\n");
    write_file(dir / "notes.json", "{}");
    auto set = load_corpus(dir);
    REQUIRE(set.docs.size() == 3);
    CHECK(set.docs[0].doc_id == "a");
    CHECK(set.docs[1].doc_id == "b");
    CHECK(set.docs[2].doc_id == "c");
    CHECK(set.docs[2].metadata.source_path.find("c.md") != std::string::npos);
  }
  SUBCASE("empty directory") { CHECK(load_corpus(dir).docs.empty()); }
  SUBCASE("invalid encoding names the file") {
    write_file(dir / "a.md", "# A\n");
    write_file(dir / "bad.md", std::string("# B\n\xC3\x28 broken\n"));
    write_file(dir / "c.md", "# C\n");
    try {
      load_corpus(dir);
      FAIL("expected CorpusError");
    } catch (const CorpusError& e) {
      CHECK(std::string(e.what()).find("bad.md") != std::string::npos);
    }
  }
  SUBCASE("duplicate stems") {
    write_file(dir / "a.md", "# A\n");
    write_file(dir / "a.txt", "# A\n");
    CHECK_THROWS_AS(load_corpus(dir), CorpusError);
  }
  SUBCASE("missing directory") { CHECK_THROWS_AS(load_corpus(dir / "nope"), CorpusError); }
  std::filesystem::remove_all(dir);
}

TEST_CASE("is_valid_utf8") {
  CHECK(is_valid_utf8("plain"));
  CHECK(is_valid_utf8("caf\xC3\xA9"));
  CHECK_FALSE(is_valid_utf8("\xC3\x28"));
  CHECK_FALSE(is_valid_utf8("\xED\xA0\x80"));  // surrogate
  CHECK_FALSE(is_valid_utf8("\xC0\xAF"));      // overlong
}
