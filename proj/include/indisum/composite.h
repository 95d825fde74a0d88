#ifndef INDISUM_COMPOSITE_H_
#define INDISUM_COMPOSITE_H_

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "indisum/core_model.h"
#include "indisum/ingest.h"

namespace indisum {

inline constexpr double kDefaultAlignThreshold = 0.5;
inline constexpr std::string_view kCompositeSchemaVersion = "1";

class SchemaError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("cannot build norm from empty corpus") {}
};

// Correspondence between one document tree and a composite. Every document
// node is in exactly one of pairs / unmatched. Several document nodes may map
// onto the same composite node (repeated headers, absorbed level skips).
struct Alignment {
  std::map<NodeId, CompositeId> pairs;
  std::set<NodeId> unmatched;

  std::optional<CompositeId> find(NodeId id) const {
    auto it = pairs.find(id);
    if (it == pairs.end()) return std::nullopt;
    return it->second;
  }
};

// 1.0 when the two share a normalized form, else the best token-set Jaccard
// over all form pairs.
double label_similarity(const LexicalForms& a, const LexicalForms& b);

// Top-down greedy alignment. Roots always align. Any other node is matched
// against the children of its nearest matched ancestor's composite node, or
// that node itself. Candidates rank by similarity, then children before the
// anchor itself, then composite position, then composite id.
Alignment align_tree(const DocumentTopicTree& doc, const CompositeTopicTree& composite,
                     double threshold = kDefaultAlignThreshold);

// Throws MalformedTree when the alignment does not partition the document or
// breaks the ancestry rule.
void check_alignment(const DocumentTopicTree& doc, const CompositeTopicTree& composite,
                     const Alignment& alignment);

// Copy of doc with composite_link filled in from the alignment.
DocumentTopicTree link_to_composite(const DocumentTopicTree& doc, const Alignment& alignment);

// Folds one aligned document into the composite. The result has siblings
// sorted by position and ids renumbered in pre-order.
CompositeTopicTree merge(const CompositeTopicTree& composite, const DocumentTopicTree& doc,
                         const Alignment& alignment);

// Composite of a single document, support 1 everywhere.
CompositeTopicTree seed_composite(const DocumentTopicTree& doc, std::string domain_genre = {});

// Throws EmptyCorpus for an empty corpus.
CompositeTopicTree build_composite(const CorpusSet& corpus,
                                   double threshold = kDefaultAlignThreshold,
                                   std::string domain_genre = {});

std::string serialize_composite(const CompositeTopicTree& composite);
// Throws SchemaError on version mismatch or invariant violations.
CompositeTopicTree parse_composite(std::string_view text);

void save_composite(const CompositeTopicTree& composite, const std::filesystem::path& path);
CompositeTopicTree load_composite(const std::filesystem::path& path);

}  // namespace indisum

#endif  // INDISUM_COMPOSITE_H_
