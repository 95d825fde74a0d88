#include "indisum/pipeline.h"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace indisum {

namespace {

std::string quoted(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

std::string number(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

template <typename Range, typename Fn>
std::string bracketed(const Range& items, Fn fn) {
  std::string out = "[";
  bool first = true;
  for (const auto& item : items) {
    if (!first) out += ",";
    out += fn(item);
    first = false;
  }
  return out + "]";
}

void trace_message(std::ostream& os, const Message& message) {
  os << "    message: " << relation_name(message);
  if (const auto* s = std::get_if<SetElements>(&message)) {
    os << " members=" << bracketed(s->members, [](const DocRef& r) { return r.doc_id; })
       << " reordered=" << (s->reordered ? "true" : "false");
  } else if (const auto* t = std::get_if<HasTopics>(&message)) {
    os << " topics=" << bracketed(t->topics, quoted);
  } else if (const auto* f = std::get_if<HasFeature>(&message)) {
    os << " kind=" << to_string(f->kind) << " values=" << bracketed(f->values, quoted)
       << " subset=" << bracketed(f->subset, [](const std::string& s) { return s; });
  }
  os << "\n";
}

}  // namespace

SummaryRun summarize(const CorpusSet& summary_set, const CompositeTopicTree& composite,
                     std::string_view query, const SummaryOptions& options,
                     const Lexicon& lexicon) {
  options.typing.validate();
  SummaryRun run;
  run.query = std::string(query);
  run.composite_query_node = map_query(query, composite.root, options.typing.tau);
  run.possible_typical = possible_typical_topics(composite, query, options.typing);

  std::vector<ClassifiedDocument> classified;
  for (const auto& doc : summary_set.docs) {
    DocumentAnalysis a;
    a.alignment = align_tree(doc, composite, options.align_threshold);
    a.typed = type_document(link_to_composite(doc, a.alignment), query, composite, a.alignment,
                            options.typing);
    a.distribution = distribution(a.typed, a.alignment, run.possible_typical);
    a.category = classify(a.distribution);
    classified.push_back(ClassifiedDocument{a.typed, a.category});
    run.documents.push_back(std::move(a));
  }

  run.plan = plan(classified, options.planner);
  RealizerOptions ropts{options.limit, options.seed, std::string(query), options.extract_available};
  run.realization = realize_summary(run.plan, lexicon, ropts);
  return run;
}

std::string format_trace(const SummaryRun& run, const CompositeTopicTree& composite,
                         const SummaryOptions& options) {
  std::ostringstream os;
  os << "indisum-trace 1\n";
  os << "query: " << quoted(run.query) << "\n";
  os << "params: k=" << options.typing.k << " alpha=" << number(options.typing.alpha)
     << " tau=" << number(options.typing.tau)
     << " align_threshold=" << number(options.align_threshold) << " limit=" << options.limit
     << " seed=" << options.seed << " topic_cap=" << options.planner.topic_cap
     << " extract_available=" << (options.extract_available ? "true" : "false") << "\n";
  os << "composite: domain_genre=" << quoted(composite.domain_genre)
     << " doc_count=" << composite.doc_count << " nodes=" << node_count(composite)
     << " query_node="
     << (run.composite_query_node ? std::to_string(value_of(*run.composite_query_node)) : "none")
     << " possible_typical="
     << bracketed(run.possible_typical, [](CompositeId id) { return std::to_string(value_of(id)); })
     << "\n";

  TreeIndex<CompositeNode> cindex(composite.root);
  for (const auto& a : run.documents) {
    const auto& doc = a.typed.doc;
    os << "document: " << doc.doc_id << "\n";
    os << "  title: " << quoted(display_title(doc)) << "\n";
    os << "  query_node: "
       << (a.typed.query_node ? std::to_string(value_of(*a.typed.query_node)) : "none") << "\n";
    TreeIndex<TopicNode> dindex(doc.root);
    for (const auto& e : dindex.preorder()) {
      os << "  node " << value_of(e.node->id) << " depth=" << e.depth
         << " type=" << to_string(a.typed.types.at(e.node->id));
      if (auto match = a.alignment.find(e.node->id)) {
        os << " composite=" << value_of(*match)
           << " typicality=" << number(cindex.at(*match).node->typicality);
      } else {
        os << " composite=none typicality=0";
      }
      os << " label=" << quoted(e.node->label.canonical()) << "\n";
    }
    const auto& d = a.distribution;
    os << "  distribution: typical=" << d.typical << " rare=" << d.rare
       << " intricate=" << d.intricate << " irrelevant=" << d.irrelevant << " total=" << d.total
       << " covered_typical=" << d.covered_typical << " possible_typical=" << d.possible_typical
       << "\n";
    os << "  category: " << to_string(a.category) << "\n";
  }

  os << "plan:\n";
  for (const auto& cp : run.plan.categories) {
    os << "  category: " << to_string(cp.category) << "\n";
    for (const auto& m : cp.messages) trace_message(os, m);
  }
  os << "realization:\n";
  for (const auto& s : run.realization.sentences) {
    os << "  sentence: category=" << to_string(s.category) << " family=" << s.family
       << " pattern=" << s.pattern_id << " description="
       << (s.description_id ? std::to_string(*s.description_id) : "none") << "\n";
    os << "    text: " << quoted(s.text) << "\n";
  }
  os << "summary:\n" << run.realization.text;
  return os.str();
}

}  // namespace indisum
