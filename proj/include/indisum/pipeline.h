#ifndef INDISUM_PIPELINE_H_
#define INDISUM_PIPELINE_H_

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "indisum/classifier.h"
#include "indisum/composite.h"
#include "indisum/content_planner.h"
#include "indisum/ingest.h"
#include "indisum/realizer.h"
#include "indisum/topic_typing.h"

namespace indisum {

struct SummaryOptions {
  TypingParams typing;
  double align_threshold = kDefaultAlignThreshold;
  PlannerOptions planner;
  std::size_t limit = kDefaultEnumerationLimit;
  std::uint64_t seed = 0;
  bool extract_available = false;
};

// Every intermediate result for one document of the summary set.
struct DocumentAnalysis {
  Alignment alignment;
  TypedTree typed;
  TypeDistribution distribution;
  DocumentCategory category = DocumentCategory::generic;
};

struct SummaryRun {
  std::string query;
  std::optional<CompositeId> composite_query_node;
  std::set<CompositeId> possible_typical;
  std::vector<DocumentAnalysis> documents;
  SummaryPlan plan;
  Realization realization;
};

// Aligns, types, classifies, plans and realizes the summary set.
SummaryRun summarize(const CorpusSet& summary_set, const CompositeTopicTree& composite,
                     std::string_view query, const SummaryOptions& options,
                     const Lexicon& lexicon);

// Line-oriented dump of a run with a fixed key order.
std::string format_trace(const SummaryRun& run, const CompositeTopicTree& composite,
                         const SummaryOptions& options);

// Command-line entry point: "build", "summarize" and "lexicon" subcommands.
// Exit codes: 0 success, 1 usage or input error, 2 missing/invalid composite
// or empty reference corpus, 3 lexicon gap.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace indisum

#endif  // INDISUM_PIPELINE_H_
