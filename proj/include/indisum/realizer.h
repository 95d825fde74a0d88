#ifndef INDISUM_REALIZER_H_
#define INDISUM_REALIZER_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "indisum/content_planner.h"
#include "indisum/core_model.h"

namespace indisum {

inline constexpr std::string_view kLexiconSchemaVersion = "1";
inline constexpr std::size_t kDefaultEnumerationLimit = 5;

// Pattern families. A category's fused obligatory sentence uses one of the
// first two; each optional message gets its own sentence.
inline constexpr std::string_view kSetSentence = "description+setElements";
inline constexpr std::string_view kExemplarSentence = "description+setElements/exemplar";
inline constexpr std::string_view kTopicsSentence = "hasTopics";
inline constexpr std::string_view kContentTypesSentence = "hasFeature/content_types";
inline constexpr std::string_view kSpecialContentSentence = "hasFeature/special_content";

// The lexicon has no entry for what the plan needs.
class LexiconGap : public Error {
 public:
  LexiconGap(std::string category, std::string relation);
  const std::string& category() const { return category_; }
  const std::string& relation() const { return relation_; }

 private:
  std::string category_;
  std::string relation_;
};

// The lexicon file itself is malformed, or a pattern uses an unknown slot.
class LexiconError : public Error {
 public:
  using Error::Error;
};

// Phrase-level templates. Description phrases are noun phrases per category;
// sentence patterns are keyed by pattern family. Inside text, {SLOT} is
// replaced by a binding and {~word} by the singular or plural form listed
// under morphology, agreeing with the sentence's subject count.
class Lexicon {
 public:
  static Lexicon builtin();
  static Lexicon parse(std::string_view text);
  static Lexicon load(const std::filesystem::path& path);
  static std::string_view builtin_text();

  // Empty span when absent.
  std::span<const std::string> descriptions(DocumentCategory category) const;
  std::span<const std::string> patterns(std::string_view family) const;
  // {singular, plural}
  const std::pair<std::string, std::string>* inflection(std::string_view word) const;

  // Throws LexiconGap when any category or pattern family lacks an entry.
  void check_complete() const;

 private:
  std::map<DocumentCategory, std::vector<std::string>> descriptions_;
  std::map<std::string, std::vector<std::string>, std::less<>> patterns_;
  std::map<std::string, std::pair<std::string, std::string>, std::less<>> morphology_;
};

// Referring expressions ------------------------------------------------------

struct Enumeration {
  std::vector<std::string> titles;
};
struct Exemplar {
  std::size_t count = 0;
  std::string sample;
};
// Contiguous run of 1-based positions within a set of `total` documents.
struct Range {
  std::size_t first = 1;
  std::size_t last = 1;
  std::size_t total = 1;
};
// Non-contiguous 1-based positions.
struct Listing {
  std::vector<std::size_t> positions;
  std::size_t total = 0;
};

using ReferringExpression = std::variant<Enumeration, Exemplar, Range, Listing>;

// Enumeration of all titles up to `limit` members, exemplar beyond it.
ReferringExpression refer_to_set(std::span<const std::string> titles,
                                 std::size_t limit = kDefaultEnumerationLimit);
// positions are 1-based and strictly increasing.
ReferringExpression refer_to_subset(std::span<const std::size_t> positions, std::size_t total);
std::string render(const ReferringExpression& expression);

std::string cardinal_word(std::size_t n);
std::string ordinal_word(std::size_t n);
// "a", "a and b", "a, b and c"
std::string join_list(std::span<const std::string> items);

// Sentence planning ----------------------------------------------------------

struct SentencePlan {
  DocumentCategory category;
  std::vector<std::string> relations;
  std::string family;
  std::map<std::string, std::string> bindings;
  // Subject count used for {~word} agreement.
  std::size_t agreement = 1;
  bool has_description = false;
  bool extract_available = false;
};

struct RealizerOptions {
  std::size_t limit = kDefaultEnumerationLimit;
  std::uint64_t seed = 0;
  std::string query;
  bool extract_available = false;
};

// Groups a category's messages into sentences: the obligatory pair fused into
// one, then one sentence per optional message.
std::vector<SentencePlan> plan_sentences(const CategoryPlan& plan, const RealizerOptions& options);

struct Lexicalized {
  std::string text;
  std::size_t pattern_id = 0;
  std::optional<std::size_t> description_id;
};

// Draws phrase and pattern from the engine; the same engine state always
// yields the same text.
Lexicalized lexicalize(const SentencePlan& plan, const Lexicon& lexicon, std::mt19937_64& rng);
std::string lexicalize(const SentencePlan& plan, const Lexicon& lexicon, std::uint64_t seed);

struct RealizedSentence {
  DocumentCategory category;
  std::string family;
  std::size_t pattern_id = 0;
  std::optional<std::size_t> description_id;
  std::string text;
};

struct Realization {
  std::string text;
  std::vector<RealizedSentence> sentences;
};

inline constexpr std::string_view kNoDocumentsNotice = "No documents matched the query.";

// One "- " bullet per category plan, in plan order.
Realization realize_summary(const SummaryPlan& plan, const Lexicon& lexicon,
                            const RealizerOptions& options);

}  // namespace indisum

#endif  // INDISUM_REALIZER_H_
