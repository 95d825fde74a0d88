#include <ostream>

#include "CLI11.hpp"
#include "indisum/pipeline.h"

namespace indisum {

namespace {

void report_warnings(const std::vector<Warning>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w.source << ": " << w.message << "\n";
}

int run_build(const std::string& corpus_dir, const std::string& out_path, double threshold,
              const std::string& domain_genre, std::ostream& out, std::ostream& err) {
  CorpusSet corpus;
  try {
    corpus = load_corpus(corpus_dir);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  report_warnings(corpus.warnings, err);
  try {
    auto composite = build_composite(corpus, threshold, domain_genre);
    save_composite(composite, out_path);
    out << "built composite from " << composite.doc_count << " documents ("
        << node_count(composite) << " topics) -> " << out_path << "\n";
  } catch (const EmptyCorpus& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

struct SummarizeArgs {
  std::string set_dir;
  std::string composite_path;
  std::string query;
  std::string lexicon_path;
  std::string format = "text";
  SummaryOptions options;
};

int run_summarize(const SummarizeArgs& a, std::ostream& out, std::ostream& err) {
  CompositeTopicTree composite;
  try {
    composite = load_composite(a.composite_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  Lexicon lexicon;
  try {
    lexicon = a.lexicon_path.empty() ? Lexicon::builtin() : Lexicon::load(a.lexicon_path);
  } catch (const LexiconGap& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (normalize_text(a.query).empty()) throw ContractViolation("query must not be empty");
    auto set = load_corpus(a.set_dir);
    report_warnings(set.warnings, err);
    auto run = summarize(set, composite, a.query, a.options, lexicon);
    if (!run.composite_query_node) {
      err << "warning: query \"" << a.query << "\" matches no topic of the composite\n";
    }
    for (const auto& d : run.documents) {
      if (!d.typed.query_node) {
        err << "warning: " << d.typed.doc.doc_id << ": query matches no topic\n";
      }
    }
    if (a.format == "trace") {
      out << format_trace(run, composite, a.options);
    } else {
      out << run.realization.text;
    }
  } catch (const LexiconGap& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Query-based indicative multidocument summarizer", "indisum"};
  app.require_subcommand(1);

  std::string corpus_dir, out_path, domain_genre;
  double build_threshold = kDefaultAlignThreshold;
  auto* build = app.add_subcommand("build", "Build the composite topic tree from a reference corpus");
  build->add_option("corpus", corpus_dir, "Directory of .md/.txt documents")->required();
  build->add_option("-o,--out", out_path, "Output composite JSON")->required();
  build->add_option("--align-threshold", build_threshold)->check(CLI::Range(0.0, 1.0));
  build->add_option("--domain-genre", domain_genre);

  SummarizeArgs s;
  auto* sum = app.add_subcommand("summarize", "Summarize a document set for a query");
  sum->add_option("set", s.set_dir, "Directory of documents to summarize")->required();
  sum->add_option("--composite", s.composite_path, "Composite JSON from `build`")->required();
  sum->add_option("--query", s.query)->required();
  sum->add_option("--k", s.options.typing.k)->check(CLI::NonNegativeNumber);
  sum->add_option("--alpha", s.options.typing.alpha)->check(CLI::Range(0.0, 1.0));
  sum->add_option("--tau", s.options.typing.tau)->check(CLI::Range(0.0, 1.0));
  sum->add_option("--align-threshold", s.options.align_threshold)->check(CLI::Range(0.0, 1.0));
  sum->add_option("--limit", s.options.limit, "Enumerate at most this many titles")
      ->check(CLI::PositiveNumber);
  sum->add_option("--topic-cap", s.options.planner.topic_cap)->check(CLI::PositiveNumber);
  sum->add_option("--seed", s.options.seed);
  sum->add_option("--lexicon", s.lexicon_path, "Lexicon JSON (default: builtin)");
  sum->add_option("--format", s.format)->check(CLI::IsMember({"text", "trace"}));
  sum->add_flag("--extract-available", s.options.extract_available);

  auto* lex = app.add_subcommand("lexicon", "Print the builtin lexicon");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  if (*build) return run_build(corpus_dir, out_path, build_threshold, domain_genre, out, err);
  if (*sum) return run_summarize(s, out, err);
  if (*lex) {
    out << Lexicon::builtin_text();
    return 0;
  }
  return 1;
}

}  // namespace indisum
