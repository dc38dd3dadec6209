#pragma once

// Sentiment word lexicon, idiom phrase lexicon and the prevent list.
//
// lexicon.tsv     word<TAB>gloss<TAB>translit<TAB>polarity<TAB>tf, one header line
// lexicon.prevent one confirmed non-sentiment word per line (sidecar)
// idioms.tsv      phrase<TAB>polarity[<TAB>gloss]

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "arsenti/corpus.hpp"
#include "arsenti/errors.hpp"
#include "arsenti/polarity.hpp"
#include "arsenti/preprocess.hpp"
#include "arsenti/text_io.hpp"

namespace arsenti {

struct LexiconEntry {
  std::string word;
  std::string gloss;
  std::string translit;
  Polarity polarity = Polarity::NU;
  std::uint64_t tf = 0;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

struct PolarityCounts {
  std::size_t po = 0;
  std::size_t ng = 0;
  std::size_t nu = 0;

  std::size_t total() const noexcept { return po + ng + nu; }
  friend bool operator==(const PolarityCounts&, const PolarityCounts&) = default;
};

/// Word lexicon keyed by normalized word. Entries and the prevent list are
/// kept disjoint: inserting a word lifts it off the prevent list, and a word
/// with an entry cannot be prevented.
class SentimentLexicon {
 public:
  void insert(LexiconEntry entry) {
    entry.word = normalize_key(entry.word);
    if (entries_.contains(entry.word)) throw DuplicateWord(entry.word);
    prevented_.erase(entry.word);
    std::string key = entry.word;
    entries_.emplace(std::move(key), std::move(entry));
  }

  void prevent(std::string_view word) {
    std::string key = normalize_key(word);
    if (entries_.contains(key)) {
      throw Error("cannot prevent-list '" + key + "': word has a lexicon entry");
    }
    prevented_.insert(std::move(key));
  }

  /// Exact lookup on an already-normalized word.
  const LexiconEntry* find(std::string_view normalized) const {
    const auto it = entries_.find(normalized);
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool contains(std::string_view normalized) const { return entries_.contains(normalized); }
  bool is_prevented(std::string_view normalized) const { return prevented_.contains(normalized); }

  void set_tf(std::string_view normalized, std::uint64_t tf) {
    const auto it = entries_.find(normalized);
    if (it != entries_.end()) it->second.tf = tf;
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  PolarityCounts counts() const {
    PolarityCounts c;
    for (const auto& [word, e] : entries_) {
      switch (e.polarity) {
        case Polarity::PO: ++c.po; break;
        case Polarity::NG: ++c.ng; break;
        case Polarity::NU: ++c.nu; break;
      }
    }
    return c;
  }

  const std::map<std::string, LexiconEntry, std::less<>>& entries() const noexcept {
    return entries_;
  }
  const std::set<std::string, std::less<>>& prevent_list() const noexcept { return prevented_; }

  friend bool operator==(const SentimentLexicon&, const SentimentLexicon&) = default;

 private:
  static std::string normalize_key(std::string_view word) {
    std::string key = normalize_text(word);
    if (key.empty() || key.find_first_of(" \n") != std::string::npos) {
      throw Error("lexicon word must normalize to a single token: '" + std::string(word) + "'");
    }
    for (char32_t cp : utf8::decode(key)) {
      if (detail::is_sentence_delimiter(cp)) {
        throw Error("lexicon word must normalize to a single token: '" + std::string(word) + "'");
      }
    }
    return key;
  }

  std::map<std::string, LexiconEntry, std::less<>> entries_;
  std::set<std::string, std::less<>> prevented_;
};

/// Normalizes `word` and looks it up.
inline const LexiconEntry* lookup(const SentimentLexicon& lex, std::string_view word) {
  return lex.find(normalize_text(word));
}

inline constexpr std::string_view kLexiconHeader = "word\tgloss\ttranslit\tpolarity\ttf";

inline std::filesystem::path prevent_list_path(const std::filesystem::path& lexicon_path) {
  auto p = lexicon_path;
  p.replace_extension(".prevent");
  return p;
}

/// Loads a lexicon TSV and, if present, its prevent-list sidecar.
inline SentimentLexicon load_sentiment_lexicon(const std::filesystem::path& path) {
  SentimentLexicon lex;
  const std::string source = path.string();
  const auto lines = io::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) continue;
    if (i == 0 && line == kLexiconHeader) continue;
    const auto cols = io::split(line, '\t');
    if (cols.size() != 5) {
      throw ParseError(source, i + 1, "expected 5 columns, got " + std::to_string(cols.size()));
    }
    const auto polarity = parse_polarity(io::trim(cols[3]));
    if (!polarity) throw ParseError(source, i + 1, "invalid polarity '" + cols[3] + "'");
    std::uint64_t tf = 0;
    if (const auto tf_text = io::trim(cols[4]); !tf_text.empty()) {
      const auto [end, ec] = std::from_chars(tf_text.data(), tf_text.data() + tf_text.size(), tf);
      if (ec != std::errc() || end != tf_text.data() + tf_text.size()) {
        throw ParseError(source, i + 1, "invalid term frequency '" + cols[4] + "'");
      }
    }
    try {
      lex.insert(LexiconEntry{cols[0], cols[1], cols[2], *polarity, tf});
    } catch (const DuplicateWord&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(source, i + 1, e.what());
    }
  }

  const auto sidecar = prevent_list_path(path);
  if (std::filesystem::exists(sidecar)) {
    const auto words = io::read_lines(sidecar);
    for (std::size_t i = 0; i < words.size(); ++i) {
      const std::string_view w = io::trim(words[i]);
      if (w.empty()) continue;
      try {
        lex.prevent(w);
      } catch (const Error& e) {
        throw ParseError(sidecar.string(), i + 1, e.what());
      }
    }
  }
  return lex;
}

/// Writes the lexicon TSV and its prevent-list sidecar. Tabs and line breaks
/// inside text fields are written as spaces.
inline void save_sentiment_lexicon(const SentimentLexicon& lex, const std::filesystem::path& path) {
  std::string out(kLexiconHeader);
  out += '\n';
  for (const auto& [word, e] : lex.entries()) {
    out += word;
    out += '\t';
    out += io::escape_field(e.gloss);
    out += '\t';
    out += io::escape_field(e.translit);
    out += '\t';
    out += to_string(e.polarity);
    out += '\t';
    out += std::to_string(e.tf);
    out += '\n';
  }
  io::write_file(path, out);

  std::string prevent;
  for (const auto& w : lex.prevent_list()) {
    prevent += w;
    prevent += '\n';
  }
  io::write_file(prevent_list_path(path), prevent);
}

/// Occurrence count of every token across the segmented corpus.
inline std::unordered_map<std::string, std::uint64_t> count_tokens(std::span<const Topic> corpus) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& topic : corpus) {
    for (const auto& sentence : segment(topic.text)) {
      for (const auto& tok : sentence.tokens) ++counts[tok.surface];
    }
  }
  return counts;
}

inline SentimentLexicon update_term_frequencies(const SentimentLexicon& lex,
                                                std::span<const Topic> corpus) {
  const auto counts = count_tokens(corpus);
  SentimentLexicon out = lex;
  for (const auto& [word, entry] : lex.entries()) {
    const auto it = counts.find(word);
    out.set_tf(word, it == counts.end() ? 0 : it->second);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Idioms
// ---------------------------------------------------------------------------

struct IdiomEntry {
  std::vector<std::string> phrase;  // normalized tokens, at least two
  Polarity polarity = Polarity::NG;  // PO or NG
  std::string gloss;

  friend bool operator==(const IdiomEntry&, const IdiomEntry&) = default;
};

inline std::string join_phrase(std::span<const std::string> tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

class IdiomLexicon {
 public:
  void add(IdiomEntry entry) {
    if (entry.phrase.size() < 2) throw Error("idiom phrase needs at least two tokens");
    if (entry.polarity == Polarity::NU) throw Error("idiom polarity must be PO or NG");
    const std::string key = join_phrase(entry.phrase);
    if (!keys_.insert(key).second) throw DuplicatePhrase(key);
    const std::size_t idx = entries_.size();
    auto& bucket = by_first_[entry.phrase.front()];
    entries_.push_back(std::move(entry));
    bucket.push_back(idx);
    // Longest phrases first so the first hit in a bucket is the maximal match.
    std::stable_sort(bucket.begin(), bucket.end(), [this](std::size_t a, std::size_t b) {
      return entries_[a].phrase.size() > entries_[b].phrase.size();
    });
  }

  /// Longest idiom starting at `tokens[start]`, or nullptr.
  const IdiomEntry* longest_match(std::span<const Token> tokens, std::size_t start) const {
    if (start >= tokens.size()) return nullptr;
    const auto it = by_first_.find(tokens[start].surface);
    if (it == by_first_.end()) return nullptr;
    for (std::size_t idx : it->second) {
      const auto& phrase = entries_[idx].phrase;
      if (start + phrase.size() > tokens.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < phrase.size() && ok; ++k) {
        ok = tokens[start + k].surface == phrase[k];
      }
      if (ok) return &entries_[idx];
    }
    return nullptr;
  }

  const std::vector<IdiomEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  std::vector<IdiomEntry> entries_;
  std::set<std::string> keys_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_first_;
};

/// Normalizes and tokenizes a phrase into lexicon form.
inline std::vector<std::string> phrase_tokens(std::string_view phrase) {
  std::vector<std::string> out;
  for (const auto& s : segment(phrase)) {
    for (const auto& t : s.tokens) out.push_back(t.surface);
  }
  return out;
}

inline IdiomLexicon load_idiom_lexicon(const std::filesystem::path& path) {
  IdiomLexicon lex;
  const std::string source = path.string();
  const auto lines = io::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (io::trim(line).empty() || line.front() == '#') continue;
    const auto cols = io::split(line, '\t');
    if (cols.size() < 2 || cols.size() > 3) {
      throw ParseError(source, i + 1, "expected phrase<TAB>polarity[<TAB>gloss]");
    }
    const auto polarity = parse_polarity(io::trim(cols[1]));
    if (!polarity || *polarity == Polarity::NU) {
      throw ParseError(source, i + 1, "idiom polarity must be PO or NG");
    }
    IdiomEntry entry{phrase_tokens(cols[0]), *polarity, cols.size() == 3 ? cols[2] : ""};
    if (entry.phrase.size() < 2) throw ParseError(source, i + 1, "idiom needs at least two tokens");
    lex.add(std::move(entry));
  }
  return lex;
}

}  // namespace arsenti
