#pragma once

// Topics and the corpus file.
//
// Corpus files are UTF-8 TSV with the header `id<TAB>label<TAB>genre<TAB>text`.
// `label` is PO, NG or empty; `genre` is tweet, hotel, product, tv or empty.
// The text is the last column; any further tabs are read as part of it and
// written back as spaces. Lines starting with `#` are comments.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "arsenti/errors.hpp"
#include "arsenti/polarity.hpp"
#include "arsenti/text_io.hpp"

namespace arsenti {

enum class Genre { Tweet, Hotel, Product, Tv };

inline constexpr Genre kAllGenres[] = {Genre::Tweet, Genre::Hotel, Genre::Product, Genre::Tv};

inline std::string_view to_string(Genre g) {
  switch (g) {
    case Genre::Tweet: return "tweet";
    case Genre::Hotel: return "hotel";
    case Genre::Product: return "product";
    case Genre::Tv: return "tv";
  }
  return "tweet";
}

inline std::optional<Genre> parse_genre(std::string_view s) {
  if (s == "tweet") return Genre::Tweet;
  if (s == "hotel") return Genre::Hotel;
  if (s == "product") return Genre::Product;
  if (s == "tv") return Genre::Tv;
  return std::nullopt;
}

/// One tweet, review or comment. `label` is PO or NG when present.
struct Topic {
  std::string id;
  std::string text;
  std::optional<Polarity> label;
  std::optional<Genre> genre;

  friend bool operator==(const Topic&, const Topic&) = default;
};

inline constexpr std::string_view kCorpusHeader = "id\tlabel\tgenre\ttext";

inline std::vector<Topic> parse_corpus(std::string_view content, const std::string& source) {
  std::vector<Topic> topics;
  std::unordered_set<std::string> seen;
  const auto lines = io::split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (io::trim(line).empty() || line.front() == '#') continue;
    if (line == kCorpusHeader) continue;
    auto cols = io::split(line, '\t');
    if (cols.size() < 4) throw ParseError(source, i + 1, "expected id, label, genre, text");
    Topic t;
    t.id = std::string(io::trim(cols[0]));
    if (t.id.empty()) throw ParseError(source, i + 1, "empty topic id");
    if (const auto label = io::trim(cols[1]); !label.empty()) {
      const auto p = parse_polarity(label);
      if (!p || *p == Polarity::NU) {
        throw ParseError(source, i + 1, "label must be PO, NG or empty");
      }
      t.label = p;
    }
    if (const auto genre = io::trim(cols[2]); !genre.empty()) {
      t.genre = parse_genre(genre);
      if (!t.genre) throw ParseError(source, i + 1, "unknown genre '" + std::string(genre) + "'");
    }
    t.text = cols[3];
    for (std::size_t c = 4; c < cols.size(); ++c) t.text += " " + cols[c];
    if (!seen.insert(t.id).second) throw ParseError(source, i + 1, "duplicate topic id " + t.id);
    topics.push_back(std::move(t));
  }
  return topics;
}

inline std::vector<Topic> load_corpus(const std::filesystem::path& path) {
  return parse_corpus(io::read_file(path), path.string());
}

inline std::string format_corpus(std::span<const Topic> topics) {
  std::string out(kCorpusHeader);
  out += '\n';
  for (const auto& t : topics) {
    out += io::escape_field(t.id);
    out += '\t';
    if (t.label) out += to_string(*t.label);
    out += '\t';
    if (t.genre) out += to_string(*t.genre);
    out += '\t';
    out += io::escape_field(t.text);
    out += '\n';
  }
  return out;
}

inline void save_corpus(std::span<const Topic> topics, const std::filesystem::path& path) {
  io::write_file(path, format_corpus(topics));
}

}  // namespace arsenti
