#include "indisum/realizer.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace indisum {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kExtractRef = "the extract above";

constexpr std::string_view kBuiltinLexicon = R"lex({
  "version": "1",
  "descriptions": {
    "prototypical": [
      "typical information about {QUERY}",
      "a reference-style overview of the usual topics on {QUERY}",
      "the common topics on {QUERY}, as summarized in {EXTRACT_REF}"
    ],
    "comprehensive": [
      "most of the usual topics on {QUERY} along with some additional ones",
      "broad coverage of {QUERY} that goes beyond the usual topics"
    ],
    "specialized": [
      "focused information on a few of the usual topics on {QUERY}",
      "narrower coverage of selected topics on {QUERY}"
    ],
    "atypical": [
      "more information on additional topics which are not included in {EXTRACT_REF}",
      "information on additional topics that most documents on {QUERY} leave out",
      "information on topics that are unusual for documents on {QUERY}"
    ],
    "deep": [
      "detailed information on a particular subtopic of {QUERY}",
      "in-depth material on one narrow aspect of {QUERY}"
    ],
    "irrelevant": [
      "mostly information that is not about {QUERY}",
      "broad material in which {QUERY} plays only a minor part"
    ],
    "generic": [
      "information on {QUERY} without a particular emphasis"
    ]
  },
  "patterns": {
    "description+setElements": [
      "{DESCRIPTION} is available in {~file} ({MEMBERS}).",
      "{MEMBERS} {~contain} {DESCRIPTION}."
    ],
    "description+setElements/exemplar": [
      "There are {COUNT} documents (such as {EXEMPLAR}) that {~have} {DESCRIPTION}.",
      "{COUNT} documents, such as {EXEMPLAR}, {~contain} {DESCRIPTION}."
    ],
    "hasTopics": [
      "{~topic} {~include} {TOPICS}.",
      "{~topic} covered {~include} {TOPICS}."
    ],
    "hasFeature/content_types": [
      "{SUBSET} {~contain} {FEATURES} as well."
    ],
    "hasFeature/special_content": [
      "{SUBSET} also {~offer} {FEATURES}."
    ]
  },
  "morphology": {
    "be": ["is", "are"],
    "contain": ["contains", "contain"],
    "have": ["has", "have"],
    "include": ["includes", "include"],
    "offer": ["offers", "offer"],
    "document": ["document", "documents"],
    "file": ["file", "files"],
    "topic": ["topic", "topics"]
  }
}
)lex";

constexpr std::string_view kFamilies[] = {kSetSentence, kExemplarSentence, kTopicsSentence,
                                          kContentTypesSentence, kSpecialContentSentence};

std::vector<std::string> string_list(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw LexiconError(where + " must be a non-empty array");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string() || v.get<std::string>().empty()) {
      throw LexiconError(where + " entries must be non-empty strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string substitute(std::string_view text, const std::map<std::string, std::string>& bindings,
                       const Lexicon& lexicon, std::size_t agreement) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t open = text.find('{', pos);
    if (open == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    std::size_t close = text.find('}', open);
    if (close == std::string_view::npos) {
      throw LexiconError("unterminated slot in '" + std::string(text) + "'");
    }
    out.append(text.substr(pos, open - pos));
    std::string_view name = text.substr(open + 1, close - open - 1);
    if (!name.empty() && name.front() == '~') {
      const auto* forms = lexicon.inflection(name.substr(1));
      if (!forms) throw LexiconGap("morphology", std::string(name.substr(1)));
      out.append(agreement == 1 ? forms->first : forms->second);
    } else {
      auto it = bindings.find(std::string(name));
      if (it == bindings.end()) {
        throw LexiconError("unbound slot {" + std::string(name) + "} in '" + std::string(text) +
                           "'");
      }
      out.append(it->second);
    }
    pos = close + 1;
  }
  return out;
}

bool is_terminal(char c) { return c == '.' || c == '?' || c == '!'; }

// Whitespace, doubled terminal punctuation and sentence-initial case.
std::string tidy_sentence(std::string_view raw) {
  std::string s;
  for (char c : raw) {
    if (c == ' ' && (s.empty() || s.back() == ' ')) continue;
    if ((c == '.' || c == ',' || c == '?' || c == '!' || c == ')') && !s.empty() &&
        s.back() == ' ') {
      s.pop_back();
    }
    if (c == '.' && !s.empty() && is_terminal(s.back())) continue;
    s.push_back(c);
  }
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (!s.empty() && s.front() >= 'a' && s.front() <= 'z') s.front() = static_cast<char>(s.front() - 'a' + 'A');
  if (!s.empty() && !is_terminal(s.back())) s.push_back('.');
  return s;
}

std::size_t draw(std::mt19937_64& rng, std::size_t n) {
  // Plain modulo keeps the draw identical across standard libraries.
  return static_cast<std::size_t>(rng() % n);
}

}  // namespace

LexiconGap::LexiconGap(std::string category, std::string relation)
    : Error("lexicon has no entry for (" + category + ", " + relation + ")"),
      category_(std::move(category)),
      relation_(std::move(relation)) {}

// Lexicon --------------------------------------------------------------------

std::string_view Lexicon::builtin_text() { return kBuiltinLexicon; }

Lexicon Lexicon::builtin() { return parse(kBuiltinLexicon); }

Lexicon Lexicon::parse(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw LexiconError(std::string("lexicon is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw LexiconError("lexicon must be an object");
  auto version = j.find("version");
  if (version == j.end() || !version->is_string() ||
      version->get<std::string>() != kLexiconSchemaVersion) {
    throw LexiconError("unsupported lexicon schema version (expected \"" +
                       std::string(kLexiconSchemaVersion) + "\")");
  }

  Lexicon lex;
  if (auto it = j.find("descriptions"); it != j.end()) {
    if (!it->is_object()) throw LexiconError("'descriptions' must be an object");
    for (const auto& [key, value] : it->items()) {
      auto category = parse_category(key);
      if (!category) throw LexiconError("unknown category '" + key + "' in descriptions");
      lex.descriptions_[*category] = string_list(value, "descriptions." + key);
    }
  }
  if (auto it = j.find("patterns"); it != j.end()) {
    if (!it->is_object()) throw LexiconError("'patterns' must be an object");
    for (const auto& [key, value] : it->items()) {
      lex.patterns_[key] = string_list(value, "patterns." + key);
    }
  }
  if (auto it = j.find("morphology"); it != j.end()) {
    if (!it->is_object()) throw LexiconError("'morphology' must be an object");
    for (const auto& [key, value] : it->items()) {
      auto forms = string_list(value, "morphology." + key);
      if (forms.size() != 2) throw LexiconError("morphology." + key + " needs [singular, plural]");
      lex.morphology_[key] = {forms[0], forms[1]};
    }
  }
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read lexicon file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::span<const std::string> Lexicon::descriptions(DocumentCategory category) const {
  auto it = descriptions_.find(category);
  if (it == descriptions_.end()) return {};
  return it->second;
}

std::span<const std::string> Lexicon::patterns(std::string_view family) const {
  auto it = patterns_.find(family);
  if (it == patterns_.end()) return {};
  return it->second;
}

const std::pair<std::string, std::string>* Lexicon::inflection(std::string_view word) const {
  auto it = morphology_.find(word);
  return it == morphology_.end() ? nullptr : &it->second;
}

void Lexicon::check_complete() const {
  for (auto c : kCategoryOrder) {
    if (descriptions(c).empty()) throw LexiconGap(std::string(to_string(c)), "description");
  }
  for (auto family : kFamilies) {
    if (patterns(family).empty()) throw LexiconGap("*", std::string(family));
  }
}

// Referring expressions ------------------------------------------------------

std::string cardinal_word(std::size_t n) {
  static constexpr std::string_view kWords[] = {
      "zero",    "one",     "two",       "three",    "four",     "five",    "six",
      "seven",   "eight",   "nine",      "ten",      "eleven",   "twelve",  "thirteen",
      "fourteen", "fifteen", "sixteen",  "seventeen", "eighteen", "nineteen", "twenty"};
  if (n < std::size(kWords)) return std::string(kWords[n]);
  return std::to_string(n);
}

std::string ordinal_word(std::size_t n) {
  static constexpr std::string_view kWords[] = {
      "zeroth",     "first",      "second",      "third",      "fourth",    "fifth",
      "sixth",      "seventh",    "eighth",      "ninth",      "tenth",     "eleventh",
      "twelfth",    "thirteenth", "fourteenth",  "fifteenth",  "sixteenth", "seventeenth",
      "eighteenth", "nineteenth", "twentieth"};
  if (n < std::size(kWords)) return std::string(kWords[n]);
  std::size_t tens = n % 100;
  const char* suffix = "th";
  if (tens < 11 || tens > 13) {
    switch (n % 10) {
      case 1: suffix = "st"; break;
      case 2: suffix = "nd"; break;
      case 3: suffix = "rd"; break;
      default: break;
    }
  }
  return std::to_string(n) + suffix;
}

std::string join_list(std::span<const std::string> items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += (i + 1 == items.size()) ? " and " : ", ";
    out += items[i];
  }
  return out;
}

ReferringExpression refer_to_set(std::span<const std::string> titles, std::size_t limit) {
  if (titles.empty()) throw ContractViolation("cannot refer to an empty document set");
  if (limit < 1) throw ContractViolation("enumeration limit must be positive");
  if (titles.size() <= limit) return Enumeration{{titles.begin(), titles.end()}};
  return Exemplar{titles.size(), titles.front()};
}

ReferringExpression refer_to_subset(std::span<const std::size_t> positions, std::size_t total) {
  if (positions.empty()) throw ContractViolation("cannot refer to an empty subset");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] < 1 || positions[i] > total || (i > 0 && positions[i] <= positions[i - 1])) {
      throw ContractViolation("subset positions must be increasing and within the set");
    }
  }
  if (positions.back() - positions.front() + 1 == positions.size()) {
    return Range{positions.front(), positions.back(), total};
  }
  return Listing{{positions.begin(), positions.end()}, total};
}

std::string render(const ReferringExpression& expression) {
  struct Visitor {
    std::string operator()(const Enumeration& e) const { return join_list(e.titles); }
    std::string operator()(const Exemplar& e) const {
      return std::to_string(e.count) + " documents (such as " + e.sample + ")";
    }
    std::string operator()(const Range& r) const {
      if (r.first == 1 && r.last == r.total) {
        return r.total == 1 ? "This document" : "All " + cardinal_word(r.total) + " documents";
      }
      if (r.first == r.last) return "The " + ordinal_word(r.first) + " document";
      if (r.first == 1) return "The first " + cardinal_word(r.last) + " documents";
      return "The " + ordinal_word(r.first) + " through " + ordinal_word(r.last) + " documents";
    }
    std::string operator()(const Listing& l) const {
      std::vector<std::string> words;
      for (auto p : l.positions) words.push_back(ordinal_word(p));
      return "The " + join_list(words) + " documents";
    }
  };
  return std::visit(Visitor{}, expression);
}

// Sentence planning ----------------------------------------------------------

std::vector<SentencePlan> plan_sentences(const CategoryPlan& plan, const RealizerOptions& options) {
  const SetElements& set = plan.set_elements();
  std::vector<std::string> titles;
  for (const auto& m : set.members) titles.push_back(m.title);

  std::map<std::string, std::string> common{
      {"QUERY", options.query},
      {"EXTRACT_REF", std::string(kExtractRef)},
      {"COUNT", std::to_string(set.members.size())},
  };

  std::vector<SentencePlan> out;
  ReferringExpression ref = refer_to_set(titles, options.limit);
  SentencePlan fused{plan.category, {"description", "setElements"}, {}, common,
                     set.members.size(), true, options.extract_available};
  fused.family = std::holds_alternative<Exemplar>(ref) ? kExemplarSentence : kSetSentence;
  fused.bindings["MEMBERS"] = join_list(titles);
  fused.bindings["EXEMPLAR"] = titles.front();
  out.push_back(std::move(fused));

  for (const auto& message : plan.messages) {
    if (const auto* topics = std::get_if<HasTopics>(&message)) {
      SentencePlan s{plan.category, {"hasTopics"}, std::string(kTopicsSentence), common,
                     topics->topics.size(), false, options.extract_available};
      s.bindings["TOPICS"] = join_list(topics->topics);
      out.push_back(std::move(s));
    } else if (const auto* feature = std::get_if<HasFeature>(&message)) {
      std::vector<std::size_t> positions;
      for (std::size_t i = 0; i < set.members.size(); ++i) {
        if (std::find(feature->subset.begin(), feature->subset.end(), set.members[i].doc_id) !=
            feature->subset.end()) {
          positions.push_back(i + 1);
        }
      }
      if (positions.empty()) continue;
      SentencePlan s{plan.category,
                     {"hasFeature"},
                     std::string(feature->kind == FeatureKind::content_types
                                     ? kContentTypesSentence
                                     : kSpecialContentSentence),
                     common,
                     positions.size(),
                     false,
                     options.extract_available};
      s.bindings["SUBSET"] = render(refer_to_subset(positions, set.members.size()));
      s.bindings["FEATURES"] = join_list(feature->values);
      out.push_back(std::move(s));
    }
  }
  return out;
}

Lexicalized lexicalize(const SentencePlan& plan, const Lexicon& lexicon, std::mt19937_64& rng) {
  const std::string category(to_string(plan.category));
  Lexicalized out;
  std::map<std::string, std::string> bindings = plan.bindings;

  if (plan.has_description) {
    auto all = lexicon.descriptions(plan.category);
    std::vector<std::size_t> eligible;
    std::vector<std::size_t> extract_refs;
    for (std::size_t i = 0; i < all.size(); ++i) {
      bool refs_extract = all[i].find("{EXTRACT_REF}") != std::string::npos;
      if (refs_extract) extract_refs.push_back(i);
      if (!refs_extract) eligible.push_back(i);
    }
    if (plan.extract_available && !extract_refs.empty()) eligible = extract_refs;
    if (eligible.empty()) throw LexiconGap(category, "description");
    std::size_t pick = eligible[draw(rng, eligible.size())];
    out.description_id = pick;
    bindings["DESCRIPTION"] = substitute(all[pick], plan.bindings, lexicon, plan.agreement);
  }

  auto patterns = lexicon.patterns(plan.family);
  if (patterns.empty()) throw LexiconGap(category, plan.family);
  out.pattern_id = draw(rng, patterns.size());
  out.text = tidy_sentence(substitute(patterns[out.pattern_id], bindings, lexicon, plan.agreement));
  return out;
}

std::string lexicalize(const SentencePlan& plan, const Lexicon& lexicon, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return lexicalize(plan, lexicon, rng).text;
}

Realization realize_summary(const SummaryPlan& plan, const Lexicon& lexicon,
                            const RealizerOptions& options) {
  Realization out;
  if (plan.categories.empty()) {
    out.text = std::string(kNoDocumentsNotice) + "\n";
    return out;
  }
  std::mt19937_64 rng(options.seed);
  for (const auto& category : plan.categories) {
    std::string bullet = "-";
    for (const auto& sentence : plan_sentences(category, options)) {
      Lexicalized lex = lexicalize(sentence, lexicon, rng);
      bullet += " " + lex.text;
      out.sentences.push_back(RealizedSentence{category.category, sentence.family, lex.pattern_id,
                                               lex.description_id, std::move(lex.text)});
    }
    out.text += bullet + "\n";
  }
  return out;
}

}  // namespace indisum
