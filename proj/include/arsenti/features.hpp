#pragma once

// Topic -> 17-slot sparse feature vector, and the net-score rule baseline.

#include <algorithm>
#include <array>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arsenti/corpus.hpp"
#include "arsenti/errors.hpp"
#include "arsenti/lexicon.hpp"
#include "arsenti/polarity.hpp"
#include "arsenti/preprocess.hpp"

namespace arsenti {

namespace schema {

inline constexpr int kVersion = 1;
inline constexpr std::size_t kSlotCount = 17;

enum Slot : int {
  HasPoSenti = 1,
  HasNgSenti = 2,
  HasPoPhrase = 3,
  HasNgPhrase = 4,
  WordsPo = 5,
  WordsNg = 6,
  WordsNu = 7,
  PoPosition = 8,
  NgPosition = 9,
  WordCount = 10,
  IsNegation = 11,
  NegationCount = 12,
  IsQuestion = 13,
  QuestionCount = 14,
  IsWishful = 15,
  WishfulCount = 16,
  ConflictCount = 17,
};

inline constexpr std::array<std::string_view, kSlotCount> kSlotNames = {
    "has_PO_senti",  "has_NG_senti",  "has_PO_ph",   "has_NG_ph",    "W_PO",         "W_NG",
    "W_NU",          "PO_W_Position", "NG_W_Position", "No_of_words", "Is_Negation",
    "N_O_Negation",  "Is_Question",   "N_O_Question", "Is_wishful",  "N_O_wishful",
    "N_O_Conflict"};

inline std::string_view slot_name(int slot) {
  return slot >= 1 && slot <= static_cast<int>(kSlotCount) ? kSlotNames[slot - 1] : "?";
}

}  // namespace schema

/// Sparse slot -> value map; zero values are never stored.
struct FeatureVector {
  std::map<int, double> values;
  int schema_version = schema::kVersion;

  double get(int slot) const {
    const auto it = values.find(slot);
    return it == values.end() ? 0.0 : it->second;
  }

  void set(int slot, double v) {
    if (v == 0.0) {
      values.erase(slot);
    } else {
      values[slot] = v;
    }
  }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// A set of cue terms, each one or more normalized tokens.
class CueSet {
 public:
  CueSet() = default;
  CueSet(std::initializer_list<std::string_view> terms) {
    for (auto t : terms) add(t);
  }

  void add(std::string_view term) {
    auto tokens = phrase_tokens(term);
    if (tokens.empty()) throw Error("empty cue term");
    if (std::find(terms_.begin(), terms_.end(), tokens) != terms_.end()) {
      throw Error("duplicate cue term '" + join_phrase(tokens) + "'");
    }
    terms_.push_back(std::move(tokens));
    std::stable_sort(terms_.begin(), terms_.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
  }

  /// Length of the longest term matching at `tokens[i]`, 0 if none.
  std::size_t match_length(std::span<const Token> tokens, std::size_t i) const {
    for (const auto& term : terms_) {
      if (i + term.size() > tokens.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < term.size() && ok; ++k) ok = tokens[i + k].surface == term[k];
      if (ok) return term.size();
    }
    return 0;
  }

  /// Leftmost-longest non-overlapping occurrences as [begin, end) index pairs.
  std::vector<std::pair<std::size_t, std::size_t>> occurrences(std::span<const Token> tokens) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < tokens.size();) {
      const std::size_t len = match_length(tokens, i);
      if (len == 0) {
        ++i;
      } else {
        out.emplace_back(i, i + len);
        i += len;
      }
    }
    return out;
  }

  bool contains(std::string_view word) const {
    for (const auto& term : terms_) {
      if (term.size() == 1 && term[0] == word) return true;
    }
    return false;
  }

  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<std::vector<std::string>>& terms() const noexcept { return terms_; }

 private:
  std::vector<std::vector<std::string>> terms_;
};

inline CueSet load_cue_set(const std::filesystem::path& path) {
  CueSet set;
  const auto lines = io::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view t = io::trim(lines[i]);
    if (t.empty() || t.front() == '#') continue;
    try {
      set.add(t);
    } catch (const Error& e) {
      throw ParseError(path.string(), i + 1, e.what());
    }
  }
  return set;
}

struct CueLists {
  CueSet negators;
  CueSet intensifiers;
  CueSet questions;
  CueSet wishful;

  /// Loads negators.txt, intensifiers.txt, questions.txt and wishful.txt from
  /// `dir`; a missing file leaves that list empty.
  static CueLists load(const std::filesystem::path& dir) {
    CueLists cues;
    const auto load_if = [&](CueSet& set, const char* name) {
      if (std::filesystem::exists(dir / name)) set = load_cue_set(dir / name);
    };
    load_if(cues.negators, "negators.txt");
    load_if(cues.intensifiers, "intensifiers.txt");
    load_if(cues.questions, "questions.txt");
    load_if(cues.wishful, "wishful.txt");
    return cues;
  }
};

struct ScoringConfig {
  std::size_t negation_window = 3;     // tokens before a sentiment word
  std::size_t intensifier_window = 2;  // tokens after a sentiment word
};

struct ScoredToken {
  Token token;
  int base = 0;      // -1, 0, +1 from the lexicon
  int adjusted = 0;  // after negation and intensifiers
  bool neutral = false;  // lexicon hit with NU polarity

  friend bool operator==(const ScoredToken&, const ScoredToken&) = default;
};

struct MaskResult {
  std::vector<Sentence> sentences;
  std::size_t po_phrases = 0;
  std::size_t ng_phrases = 0;
};

/// Replaces each leftmost, longest, non-overlapping idiom with its mask token.
inline MaskResult mask_idioms(std::span<const Sentence> sentences, const IdiomLexicon& idioms) {
  MaskResult out;
  out.sentences.reserve(sentences.size());
  for (const auto& s : sentences) {
    Sentence masked;
    for (std::size_t i = 0; i < s.tokens.size();) {
      if (const IdiomEntry* hit = idioms.longest_match(s.tokens, i)) {
        const bool positive = hit->polarity == Polarity::PO;
        (positive ? out.po_phrases : out.ng_phrases) += 1;
        masked.tokens.push_back(
            Token{std::string(positive ? kPositivePhraseMask : kNegativePhraseMask), 0,
                  PosTag::OTHER});
        i += hit->phrase.size();
      } else {
        masked.tokens.push_back(s.tokens[i]);
        ++i;
      }
    }
    masked.renumber();
    out.sentences.push_back(std::move(masked));
  }
  return out;
}

/// Lexicon polarity with valence shifters applied.
///
/// Each negator ending within `negation_window` tokens before a sentiment word
/// flips its sign, so two negators cancel. An intensifier starting within
/// `intensifier_window` tokens after it doubles the magnitude (once).
inline std::vector<ScoredToken> score_tokens(const Sentence& s, const SentimentLexicon& lex,
                                             const CueLists& cues, const ScoringConfig& cfg = {}) {
  const auto negations = cues.negators.occurrences(s.tokens);
  const auto intensifiers = cues.intensifiers.occurrences(s.tokens);

  std::vector<ScoredToken> out;
  out.reserve(s.tokens.size());
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    ScoredToken st{s.tokens[i], 0, 0, false};
    const LexiconEntry* entry = is_mask_token(st.token.surface) ? nullptr : lex.find(st.token.surface);
    if (entry) {
      st.base = sign_of(entry->polarity);
      st.neutral = entry->polarity == Polarity::NU;
    }
    if (st.base != 0) {
      int value = st.base;
      std::size_t flips = 0;
      for (const auto& [b, e] : negations) {
        // Occurrence ends (inclusive) at e - 1.
        if (e <= i && e - 1 + cfg.negation_window >= i) ++flips;
      }
      if (flips % 2 == 1) value = -value;
      for (const auto& [b, e] : intensifiers) {
        if (b > i && b <= i + cfg.intensifier_window) {
          value *= 2;
          break;
        }
      }
      st.adjusted = value;
    }
    out.push_back(std::move(st));
  }
  return out;
}

struct ConflictResult {
  std::size_t count = 0;
  std::vector<ScoredToken> scored;
};

/// Adjacent noun/adjective pairs (either order) with opposite nonzero signs
/// are one conflict: both values are zeroed and a single -1 is placed on the
/// first token. Scans left to right without overlap.
inline ConflictResult detect_conflict_phrases(const Sentence& s, std::vector<ScoredToken> scored) {
  ConflictResult out;
  const auto tag_at = [&](std::size_t i) {
    return i < s.tokens.size() ? s.tokens[i].tag : scored[i].token.tag;
  };
  for (std::size_t i = 0; i + 1 < scored.size();) {
    const PosTag a = tag_at(i);
    const PosTag b = tag_at(i + 1);
    const bool noun_adj = (a == PosTag::NN && b == PosTag::JJ) || (a == PosTag::JJ && b == PosTag::NN);
    if (noun_adj && scored[i].adjusted * scored[i + 1].adjusted < 0) {
      ++out.count;
      scored[i].adjusted = -1;
      scored[i + 1].adjusted = 0;
      i += 2;
    } else {
      ++i;
    }
  }
  out.scored = std::move(scored);
  return out;
}

/// Everything extracted from one topic before it is flattened into slots.
struct TopicAnalysis {
  std::vector<Sentence> sentences;                // masked, stopworded, tagged
  std::vector<std::vector<ScoredToken>> scored;   // per sentence, after conflicts
  std::size_t po_phrases = 0;
  std::size_t ng_phrases = 0;
  std::size_t conflicts = 0;
  std::size_t negations = 0;
  std::size_t questions = 0;
  std::size_t wishes = 0;
};

struct RuleScore {
  double net = 0.0;
  Polarity label = Polarity::NU;
};

inline constexpr double kIdiomRuleWeight = 3.0;

/// Runs the full per-topic pipeline over shared read-only resources.
class FeatureExtractor {
 public:
  FeatureExtractor(const SentimentLexicon& lexicon, const IdiomLexicon& idioms,
                   const CueLists& cues, const PosTagger& tagger, const StopList& stopwords,
                   ScoringConfig scoring = {})
      : lexicon_(lexicon),
        idioms_(idioms),
        cues_(cues),
        tagger_(tagger),
        stopwords_(stopwords),
        scoring_(scoring) {}

  TopicAnalysis analyze(std::string_view text) const {
    TopicAnalysis a;
    // Idioms are masked before stopword removal so phrases containing
    // function words still match.
    MaskResult masked = mask_idioms(segment(text), idioms_);
    a.po_phrases = masked.po_phrases;
    a.ng_phrases = masked.ng_phrases;
    for (auto& raw : masked.sentences) {
      Sentence s = pos_tag(remove_stopwords(raw, stopwords_), tagger_);
      if (s.empty()) continue;
      a.negations += cues_.negators.occurrences(s.tokens).size();
      a.questions += cues_.questions.occurrences(s.tokens).size();
      a.wishes += cues_.wishful.occurrences(s.tokens).size();
      auto conflict = detect_conflict_phrases(s, score_tokens(s, lexicon_, cues_, scoring_));
      a.conflicts += conflict.count;
      a.scored.push_back(std::move(conflict.scored));
      a.sentences.push_back(std::move(s));
    }
    return a;
  }

  FeatureVector extract(const Topic& topic) const { return to_features(analyze(topic.text)); }

  RuleScore rule_score(const Topic& topic) const { return to_rule_score(analyze(topic.text)); }

  static FeatureVector to_features(const TopicAnalysis& a) {
    using namespace schema;
    double w_po = 0, w_ng = 0, w_nu = 0, po_pos = 0, ng_pos = 0, words = 0;
    for (std::size_t si = 0; si < a.sentences.size(); ++si) {
      const double n = static_cast<double>(a.sentences[si].word_count());
      words += n;
      for (const auto& st : a.scored[si]) {
        const double pos = static_cast<double>(st.token.position);
        if (st.adjusted > 0) {
          w_po += st.adjusted;
          po_pos += n / pos;
        } else if (st.adjusted < 0) {
          w_ng += -st.adjusted;
          ng_pos += n / pos;
        }
        if (st.neutral) w_nu += 1;
      }
    }
    FeatureVector v;
    v.set(HasPoSenti, w_po > 0 ? 1 : 0);
    v.set(HasNgSenti, w_ng > 0 ? 1 : 0);
    v.set(HasPoPhrase, a.po_phrases > 0 ? 1 : 0);
    v.set(HasNgPhrase, a.ng_phrases > 0 ? 1 : 0);
    v.set(WordsPo, w_po);
    v.set(WordsNg, w_ng);
    v.set(WordsNu, w_nu);
    v.set(PoPosition, po_pos);
    v.set(NgPosition, ng_pos);
    v.set(WordCount, words);
    v.set(IsNegation, a.negations > 0 ? 1 : 0);
    v.set(NegationCount, static_cast<double>(a.negations));
    v.set(IsQuestion, a.questions > 0 ? 1 : 0);
    v.set(QuestionCount, static_cast<double>(a.questions));
    v.set(IsWishful, a.wishes > 0 ? 1 : 0);
    v.set(WishfulCount, static_cast<double>(a.wishes));
    v.set(ConflictCount, static_cast<double>(a.conflicts));
    return v;
  }

  /// Sum of word values clamped to [-2, 2] plus +/-3 per idiom mask.
  static RuleScore to_rule_score(const TopicAnalysis& a) {
    RuleScore r;
    for (const auto& sentence : a.scored) {
      for (const auto& st : sentence) r.net += std::clamp(st.adjusted, -2, 2);
    }
    r.net += kIdiomRuleWeight * static_cast<double>(a.po_phrases);
    r.net -= kIdiomRuleWeight * static_cast<double>(a.ng_phrases);
    r.label = r.net > 0 ? Polarity::PO : r.net < 0 ? Polarity::NG : Polarity::NU;
    return r;
  }

 private:
  const SentimentLexicon& lexicon_;
  const IdiomLexicon& idioms_;
  const CueLists& cues_;
  const PosTagger& tagger_;
  const StopList& stopwords_;
  ScoringConfig scoring_;
};

namespace detail {
inline const TableTagger& null_tagger() {
  static const TableTagger tagger;
  return tagger;
}
inline const StopList& empty_stoplist() {
  static const StopList stop;
  return stop;
}
}  // namespace detail

/// Feature extraction with no stopwords and an all-OTHER tagger.
inline FeatureVector extract_features(const Topic& topic, const SentimentLexicon& lex,
                                      const IdiomLexicon& idioms, const CueLists& cues) {
  return FeatureExtractor(lex, idioms, cues, detail::null_tagger(), detail::empty_stoplist())
      .extract(topic);
}

inline RuleScore lexicon_rule_score(const Topic& topic, const SentimentLexicon& lex,
                                    const IdiomLexicon& idioms, const CueLists& cues) {
  return FeatureExtractor(lex, idioms, cues, detail::null_tagger(), detail::empty_stoplist())
      .rule_score(topic);
}

}  // namespace arsenti
