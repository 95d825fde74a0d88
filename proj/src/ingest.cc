#include "indisum/ingest.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace indisum {

namespace {

struct Line {
  std::string_view text;  // without the line terminator
  std::size_t offset = 0;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(Line{line, pos});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string_view unquote(std::string_view s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::set<std::string> split_tags(std::string_view value) {
  std::set<std::string> tags;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    std::size_t comma = value.find(',', pos);
    std::size_t end = comma == std::string_view::npos ? value.size() : comma;
    std::string tag = normalize_text(unquote(trim(value.substr(pos, end - pos))));
    if (!tag.empty()) tags.insert(std::move(tag));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return tags;
}

struct Header {
  int level = 0;
  std::string text;
  SourceSpan span;
};

// Recognizes "#"*n + whitespace + text with 1 <= n <= 6. An optional closing
// run of '#' is dropped.
std::optional<Header> match_header(const Line& line) {
  std::string_view s = line.text;
  int level = 0;
  while (level < static_cast<int>(s.size()) && s[level] == '#') ++level;
  if (level < 1 || level > 6) return std::nullopt;
  if (static_cast<std::size_t>(level) == s.size()) return std::nullopt;
  if (s[level] != ' ' && s[level] != '\t') return std::nullopt;

  std::size_t begin = s.find_first_not_of(" \t", level);
  if (begin == std::string_view::npos) return std::nullopt;
  std::size_t end = s.find_last_not_of(" \t") + 1;
  std::string_view body = s.substr(begin, end - begin);
  std::size_t hashes = body.find_last_not_of('#');
  if (hashes != std::string_view::npos && hashes + 1 < body.size() &&
      (body[hashes] == ' ' || body[hashes] == '\t')) {
    body = trim(body.substr(0, hashes));
    end = begin + body.size();
  }
  if (body.empty()) return std::nullopt;
  return Header{level, std::string(body), SourceSpan{line.offset + begin, line.offset + end}};
}

bool is_fence(std::string_view line) {
  std::string_view t = trim(line);
  return t.rfind("```", 0) == 0 || t.rfind("~~~", 0) == 0;
}

struct FlatNode {
  std::string label;
  std::optional<SourceSpan> span;
  std::optional<std::size_t> parent;
  int level = 0;
};

TopicNode assemble(const std::vector<FlatNode>& flat,
                   const std::vector<std::vector<std::size_t>>& kids, std::size_t i) {
  TopicNode node{static_cast<NodeId>(i), LexicalForms(flat[i].label), {}, std::nullopt,
                 flat[i].span};
  node.children.reserve(kids[i].size());
  for (std::size_t c : kids[i]) node.children.push_back(assemble(flat, kids, c));
  return node;
}

}  // namespace

MetadataParse parse_metadata(std::string_view front_matter) {
  MetadataParse out;
  for (const Line& line : split_lines(front_matter)) {
    std::string_view t = trim(line.text);
    if (t.empty() || t.front() == '#') continue;
    std::size_t colon = t.find(':');
    if (colon == std::string_view::npos || colon == 0) {
      out.warnings.push_back({"front-matter", "skipped malformed line: " + std::string(t)});
      continue;
    }
    std::string key = normalize_text(t.substr(0, colon));
    std::string_view value = unquote(trim(t.substr(colon + 1)));
    if (key == "title") {
      if (value.empty()) {
        out.warnings.push_back({"front-matter", "skipped empty title"});
      } else {
        out.metadata.title = std::string(value);
      }
    } else if (key == "content_types") {
      auto tags = split_tags(value);
      out.metadata.content_types.insert(tags.begin(), tags.end());
    } else if (key == "special_content") {
      auto tags = split_tags(value);
      out.metadata.special_content.insert(tags.begin(), tags.end());
    }
  }
  return out;
}

DocumentTopicTree parse_document(std::string_view text, std::string_view doc_id,
                                 std::vector<Warning>* warnings) {
  std::vector<Line> lines = split_lines(text);
  std::size_t body_start = 0;
  DocumentMetadata metadata;

  if (!lines.empty()) {
    std::string_view first = lines[0].text;
    if (first.rfind("\xEF\xBB\xBF", 0) == 0) first.remove_prefix(3);
    if (trim(first) == "---") {
      std::size_t close = 1;
      while (close < lines.size() && trim(lines[close].text) != "---") ++close;
      if (close < lines.size()) {
        std::size_t begin = lines[1 < close ? 1 : close].offset;
        std::size_t end = lines[close].offset;
        MetadataParse meta = parse_metadata(text.substr(begin, end - begin));
        metadata = std::move(meta.metadata);
        if (warnings) {
          for (auto& w : meta.warnings) {
            warnings->push_back({std::string(doc_id), std::move(w.message)});
          }
        }
        body_start = close + 1;
      } else if (warnings) {
        warnings->push_back({std::string(doc_id), "unterminated front matter; treated as body"});
      }
    }
  }

  std::vector<Header> headers;
  bool in_fence = false;
  for (std::size_t i = body_start; i < lines.size(); ++i) {
    if (is_fence(lines[i].text)) {
      in_fence = !in_fence;
      continue;
    }
    if (in_fence) continue;
    if (auto h = match_header(lines[i])) headers.push_back(std::move(*h));
  }

  std::size_t level1 = std::count_if(headers.begin(), headers.end(),
                                     [](const Header& h) { return h.level == 1; });
  bool header_is_root = !metadata.title && !headers.empty() && headers.front().level == 1 &&
                        level1 == 1;

  std::vector<FlatNode> flat;
  std::size_t first_child = 0;
  if (header_is_root) {
    flat.push_back(FlatNode{headers.front().text, headers.front().span, std::nullopt, 1});
    first_child = 1;
  } else {
    std::string label = metadata.title ? *metadata.title : std::string(doc_id);
    if (display_text(label).empty()) throw ContractViolation("document needs a title or doc id");
    flat.push_back(FlatNode{std::move(label), std::nullopt, std::nullopt, 0});
  }

  std::vector<std::size_t> open{0};
  for (std::size_t h = first_child; h < headers.size(); ++h) {
    while (open.size() > 1 && flat[open.back()].level >= headers[h].level) open.pop_back();
    flat.push_back(FlatNode{headers[h].text, headers[h].span, open.back(), headers[h].level});
    open.push_back(flat.size() - 1);
  }

  std::vector<std::vector<std::size_t>> kids(flat.size());
  for (std::size_t i = 1; i < flat.size(); ++i) kids[*flat[i].parent].push_back(i);

  return DocumentTopicTree{std::string(doc_id), assemble(flat, kids, 0), std::move(metadata)};
}

bool is_valid_utf8(std::string_view bytes) {
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    auto c = static_cast<unsigned char>(bytes[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t k = 1; k < len; ++k) {
      auto cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong encodings, surrogates and out-of-range code points.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
      return false;
    }
    i += len;
  }
  return true;
}

CorpusSet load_corpus(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw CorpusError("not a readable directory: " + dir.string());
  }

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    if (ext == ".md" || ext == ".txt") files.push_back(entry.path());
  }
  if (ec) throw CorpusError("cannot list directory " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

  CorpusSet corpus;
  corpus.origin = dir;
  std::map<std::string, fs::path> seen;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw CorpusError("cannot read file: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw CorpusError("cannot read file: " + file.string());
    std::string text = buf.str();
    if (!is_valid_utf8(text)) throw CorpusError("invalid UTF-8 in file: " + file.string());

    std::string doc_id = file.stem().string();
    auto [it, inserted] = seen.emplace(doc_id, file);
    if (!inserted) {
      throw CorpusError("duplicate document id '" + doc_id + "' from " + it->second.string() +
                        " and " + file.string());
    }
    DocumentTopicTree doc = parse_document(text, doc_id, &corpus.warnings);
    doc.metadata.source_path = file.string();
    corpus.docs.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace indisum
