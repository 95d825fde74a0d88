#ifndef INDISUM_INGEST_H_
#define INDISUM_INGEST_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "indisum/core_model.h"

namespace indisum {

// Non-fatal problems found while reading input (skipped metadata lines etc.).
struct Warning {
  std::string source;
  std::string message;
};

class CorpusError : public Error {
 public:
  using Error::Error;
};

struct MetadataParse {
  DocumentMetadata metadata;
  std::vector<Warning> warnings;
};

// Parses the body of a front-matter block (the lines between the "---"
// delimiters). Recognized keys: title, content_types, special_content.
MetadataParse parse_metadata(std::string_view front_matter);

// Builds a topic tree from ATX headers. A level-n header becomes a child of
// the nearest preceding header with a lower level. The root is the
// front-matter title when present; otherwise a lone level-1 header that opens
// the document; otherwise a synthesized node labeled with the doc id.
DocumentTopicTree parse_document(std::string_view text, std::string_view doc_id,
                                 std::vector<Warning>* warnings = nullptr);

bool is_valid_utf8(std::string_view bytes);

struct CorpusSet {
  std::vector<DocumentTopicTree> docs;
  std::filesystem::path origin;
  std::vector<Warning> warnings;
};

// Loads every *.md / *.txt file in dir (non-recursive), sorted by file name.
// The doc id is the file stem.
CorpusSet load_corpus(const std::filesystem::path& dir);

}  // namespace indisum

#endif  // INDISUM_INGEST_H_
