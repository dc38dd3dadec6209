#pragma once

// Arabic text normalization, sentence segmentation, tokenization, stopword
// removal and part-of-speech tagging.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "arsenti/errors.hpp"
#include "arsenti/text_io.hpp"
#include "arsenti/utf8.hpp"

namespace arsenti {

enum class PosTag { JJ, NN, VB, OTHER };

inline std::string_view to_string(PosTag tag) {
  switch (tag) {
    case PosTag::JJ: return "JJ";
    case PosTag::NN: return "NN";
    case PosTag::VB: return "VB";
    case PosTag::OTHER: return "OTHER";
  }
  return "OTHER";
}

inline std::optional<PosTag> parse_pos_tag(std::string_view s) {
  if (s == "JJ") return PosTag::JJ;
  if (s == "NN") return PosTag::NN;
  if (s == "VB") return PosTag::VB;
  if (s == "OTHER") return PosTag::OTHER;
  return std::nullopt;
}

/// Surface forms of the idiom mask tokens.
inline constexpr std::string_view kNegativePhraseMask = "NG_Phrase";
inline constexpr std::string_view kPositivePhraseMask = "PO_Phrase";

inline bool is_mask_token(std::string_view s) {
  return s == kNegativePhraseMask || s == kPositivePhraseMask;
}

struct Token {
  std::string surface;
  std::size_t position = 1;  // 1-based within its sentence
  PosTag tag = PosTag::OTHER;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::vector<Token> tokens;

  std::size_t word_count() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }

  /// Restores the 1..n position invariant after tokens were removed or merged.
  void renumber() {
    for (std::size_t i = 0; i < tokens.size(); ++i) tokens[i].position = i + 1;
  }

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

namespace detail {

inline bool is_diacritic(char32_t cp) {
  return (cp >= 0x0610 && cp <= 0x061A) || (cp >= 0x064B && cp <= 0x065F) ||
         cp == 0x0670 || (cp >= 0x06D6 && cp <= 0x06DC) || (cp >= 0x06DF && cp <= 0x06E4) ||
         cp == 0x06E7 || cp == 0x06E8 || (cp >= 0x06EA && cp <= 0x06ED) ||
         cp == 0x0640;  // tatweel
}

inline bool is_arabic_letter(char32_t cp) {
  return (cp >= 0x0621 && cp <= 0x063A) || (cp >= 0x0641 && cp <= 0x064A) ||
         cp == 0x066E || cp == 0x066F || (cp >= 0x0671 && cp <= 0x06D3) || cp == 0x06D5 ||
         cp == 0x06EE || cp == 0x06EF || (cp >= 0x06FA && cp <= 0x06FC) || cp == 0x06FF;
}

inline bool is_sentence_delimiter(char32_t cp) {
  return cp == U'.' || cp == U'!' || cp == U'?' || cp == 0x061F || cp == 0x061B || cp == U'\n';
}

inline char32_t fold_letter(char32_t cp) {
  switch (cp) {
    case 0x0623:  // alef with hamza above
    case 0x0625:  // alef with hamza below
    case 0x0622:  // alef with madda
    case 0x0671:  // alef wasla
      return 0x0627;
    case 0x0649:  // alef maqsura
      return 0x064A;
    default:
      return cp;
  }
}

}  // namespace detail

/// Canonical form used for every lexicon lookup.
///
/// Alef variants fold to bare alef, alef maqsura to ya; tatweel and harakat are
/// deleted in place. Anything that is not an Arabic letter becomes a word
/// boundary, except sentence delimiters which are kept (one per gap). Runs of
/// boundaries collapse to a single space, leading and trailing boundaries are
/// dropped, so the result is a fixed point of this function.
inline std::string normalize_text(std::string_view raw) {
  enum class Gap { None, Space, Delim };
  std::string out;
  out.reserve(raw.size());
  Gap gap = Gap::None;
  char32_t gap_delim = 0;

  for (std::size_t pos = 0; pos < raw.size();) {
    const char32_t cp = detail::fold_letter(utf8::next(raw, pos));
    if (detail::is_diacritic(cp)) continue;
    if (detail::is_arabic_letter(cp)) {
      if (!out.empty()) {
        if (gap == Gap::Delim) {
          utf8::append(out, gap_delim);
          if (gap_delim != U'\n') out.push_back(' ');
        } else if (gap == Gap::Space) {
          out.push_back(' ');
        }
      }
      gap = Gap::None;
      utf8::append(out, cp);
    } else if (detail::is_sentence_delimiter(cp)) {
      if (gap != Gap::Delim) {
        gap = Gap::Delim;
        gap_delim = cp;
      }
    } else if (gap == Gap::None) {
      gap = Gap::Space;
    }
  }
  return out;
}

/// Splits normalized text on . ! ? ؟ ؛ and newline, dropping empty segments.
inline std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::string current;
  const auto flush = [&] {
    std::string_view t = io::trim(current);
    if (!t.empty()) sentences.emplace_back(t);
    current.clear();
  };
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t start = pos;
    const char32_t cp = utf8::next(text, pos);
    if (detail::is_sentence_delimiter(cp)) {
      flush();
    } else {
      current.append(text.substr(start, pos - start));
    }
  }
  flush();
  return sentences;
}

/// Splits a sentence into letter runs. Mask tokens survive as single tokens.
inline Sentence tokenize(std::string_view sentence) {
  Sentence out;
  std::string current;
  const auto flush = [&] {
    if (!current.empty()) {
      out.tokens.push_back(Token{std::move(current), out.tokens.size() + 1, PosTag::OTHER});
      current.clear();
    }
  };
  std::size_t pos = 0;
  while (pos < sentence.size()) {
    // Whitespace-delimited chunk first, so mask tokens can be recognized whole.
    while (pos < sentence.size() && (sentence[pos] == ' ' || sentence[pos] == '\t' ||
                                     sentence[pos] == '\n' || sentence[pos] == '\r')) {
      ++pos;
    }
    std::size_t end = pos;
    while (end < sentence.size() && sentence[end] != ' ' && sentence[end] != '\t' &&
           sentence[end] != '\n' && sentence[end] != '\r') {
      ++end;
    }
    const std::string_view chunk = sentence.substr(pos, end - pos);
    if (is_mask_token(chunk)) {
      current = std::string(chunk);
      flush();
    } else {
      for (std::size_t p = 0; p < chunk.size();) {
        const std::size_t start = p;
        const char32_t cp = utf8::next(chunk, p);
        if (detail::is_arabic_letter(cp)) {
          current.append(chunk.substr(start, p - start));
        } else if (!detail::is_diacritic(cp)) {
          flush();
        }
      }
      flush();
    }
    pos = end;
  }
  return out;
}

/// normalize_text, split_sentences and tokenize in one pass; empty sentences dropped.
inline std::vector<Sentence> segment(std::string_view raw) {
  std::vector<Sentence> out;
  for (const auto& s : split_sentences(normalize_text(raw))) {
    Sentence sentence = tokenize(s);
    if (!sentence.empty()) out.push_back(std::move(sentence));
  }
  return out;
}

using StopList = std::unordered_set<std::string>;

/// Reads a one-entry-per-line word list. Blank lines and `#` comments are
/// skipped; every entry is normalized.
inline std::vector<std::string> load_word_list(const std::filesystem::path& path) {
  std::vector<std::string> words;
  const auto lines = io::read_lines(path);
  for (const auto& line : lines) {
    const std::string_view t = io::trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::string word = normalize_text(t);
    if (!word.empty()) words.push_back(std::move(word));
  }
  return words;
}

inline StopList load_stoplist(const std::filesystem::path& path) {
  const auto words = load_word_list(path);
  return StopList(words.begin(), words.end());
}

inline Sentence remove_stopwords(const Sentence& s, const StopList& stoplist) {
  Sentence out;
  out.tokens.reserve(s.tokens.size());
  for (const auto& tok : s.tokens) {
    if (is_mask_token(tok.surface) || !stoplist.contains(tok.surface)) out.tokens.push_back(tok);
  }
  out.renumber();
  return out;
}

/// Pluggable part-of-speech tagger. Must return one tag per token.
class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual std::vector<PosTag> tag(std::span<const Token> tokens) const = 0;
};

/// Word -> tag table lookup with an OTHER fallback.
class TableTagger : public PosTagger {
 public:
  TableTagger() = default;
  explicit TableTagger(std::unordered_map<std::string, PosTag> table) : table_(std::move(table)) {}

  /// Loads a `word<TAB>tag` file.
  static TableTagger from_file(const std::filesystem::path& path) {
    std::unordered_map<std::string, PosTag> table;
    const auto lines = io::read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const std::string_view line = io::trim(lines[i]);
      if (line.empty() || line.front() == '#') continue;
      const auto cols = io::split(line, '\t');
      if (cols.size() != 2) throw ParseError(path.string(), i + 1, "expected word<TAB>tag");
      const auto tag = parse_pos_tag(io::trim(cols[1]));
      if (!tag) throw ParseError(path.string(), i + 1, "unknown tag '" + cols[1] + "'");
      std::string word = normalize_text(cols[0]);
      if (word.empty()) throw ParseError(path.string(), i + 1, "empty word");
      table.insert_or_assign(std::move(word), *tag);
    }
    return TableTagger(std::move(table));
  }

  /// Adds `tag` for words not already in the table.
  void add_default(const std::string& word, PosTag tag) { table_.try_emplace(word, tag); }

  std::optional<PosTag> find(const std::string& word) const {
    const auto it = table_.find(word);
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const noexcept { return table_.size(); }

  std::vector<PosTag> tag(std::span<const Token> tokens) const override {
    std::vector<PosTag> tags;
    tags.reserve(tokens.size());
    for (const auto& tok : tokens) tags.push_back(find(tok.surface).value_or(PosTag::OTHER));
    return tags;
  }

 private:
  std::unordered_map<std::string, PosTag> table_;
};

inline Sentence pos_tag(const Sentence& s, const PosTagger& tagger) {
  const auto tags = tagger.tag(s.tokens);
  if (tags.size() != s.tokens.size()) {
    throw TaggerFailure("tagger returned " + std::to_string(tags.size()) + " tags for " +
                        std::to_string(s.tokens.size()) + " tokens");
  }
  Sentence out = s;
  for (std::size_t i = 0; i < tags.size(); ++i) out.tokens[i].tag = tags[i];
  return out;
}

}  // namespace arsenti
