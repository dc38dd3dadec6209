#pragma once

// Lexicon expansion: POS-filtered candidates, deduplication against the
// lexicon, synonym/antonym retrieval through a provider, and orientation
// detection (adopt / conflict of synonyms / out of vocabulary) with operator
// review for out-of-vocabulary words.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "arsenti/corpus.hpp"
#include "arsenti/errors.hpp"
#include "arsenti/lexicon.hpp"
#include "arsenti/polarity.hpp"
#include "arsenti/preprocess.hpp"
#include "arsenti/text_io.hpp"

namespace arsenti {

struct Candidate {
  std::string word;
  PosTag tag = PosTag::OTHER;
  std::string source_topic_id;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct SourcedSentence {
  std::string topic_id;
  Sentence sentence;  // POS-tagged
};

inline bool is_candidate_tag(PosTag tag) {
  return tag == PosTag::JJ || tag == PosTag::NN || tag == PosTag::VB;
}

/// Distinct JJ/NN/VB tokens unknown to the lexicon and its prevent list, in
/// first-occurrence order.
inline std::vector<Candidate> filter_candidates(std::span<const SourcedSentence> tagged,
                                                const SentimentLexicon& lex) {
  std::vector<Candidate> out;
  std::unordered_set<std::string> seen;
  for (const auto& src : tagged) {
    for (const auto& tok : src.sentence.tokens) {
      if (!is_candidate_tag(tok.tag) || is_mask_token(tok.surface)) continue;
      if (lex.contains(tok.surface) || lex.is_prevented(tok.surface)) continue;
      if (!seen.insert(tok.surface).second) continue;
      out.push_back(Candidate{tok.surface, tok.tag, src.topic_id});
    }
  }
  return out;
}

struct SynonymRef {
  std::string word;
  std::optional<std::string> gloss;

  friend bool operator==(const SynonymRef&, const SynonymRef&) = default;
};

struct SynsetResult {
  std::optional<std::string> translation;
  std::vector<SynonymRef> synonyms;
  std::vector<SynonymRef> antonyms;

  friend bool operator==(const SynsetResult&, const SynsetResult&) = default;
};

enum class Orientation { Adopt, Cos, Oov };

inline std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::Adopt: return "ADOPT";
    case Orientation::Cos: return "COS";
    case Orientation::Oov: return "OOV";
  }
  return "OOV";
}

struct Evidence {
  std::string word;
  Polarity polarity = Polarity::NU;  // as contributed, i.e. flipped for antonyms
  bool from_antonym = false;

  friend bool operator==(const Evidence&, const Evidence&) = default;
};

struct OrientationDecision {
  Orientation outcome = Orientation::Oov;
  std::optional<Polarity> adopted;  // set iff outcome == Adopt; PO or NG
  std::vector<Evidence> evidence;

  /// Polarity shared by all evidence, if the evidence is non-empty and unanimous.
  std::optional<Polarity> unanimous() const {
    if (evidence.empty()) return std::nullopt;
    const Polarity first = evidence.front().polarity;
    for (const auto& e : evidence) {
      if (e.polarity != first) return std::nullopt;
    }
    return first;
  }
};

/// Synonyms vote with their lexicon polarity, antonyms with the opposite one;
/// unknown and NU words cast no vote. Unanimous votes adopt, split votes are a
/// conflict of synonyms, and no votes (or no translation and no synonyms)
/// route the word to review.
inline OrientationDecision detect_orientation(std::string_view word, const SynsetResult& syn,
                                              const SentimentLexicon& lex) {
  (void)word;
  OrientationDecision d;
  const auto vote = [&](const SynonymRef& ref, bool antonym) {
    const LexiconEntry* e = lookup(lex, ref.word);
    if (!e || e->polarity == Polarity::NU) return;
    d.evidence.push_back(Evidence{e->word, antonym ? flip(e->polarity) : e->polarity, antonym});
  };
  for (const auto& s : syn.synonyms) vote(s, false);
  for (const auto& a : syn.antonyms) vote(a, true);

  if (!syn.translation && syn.synonyms.empty()) {
    d.outcome = Orientation::Oov;
  } else if (d.evidence.empty()) {
    d.outcome = Orientation::Oov;
  } else if (const auto p = d.unanimous()) {
    d.outcome = Orientation::Adopt;
    d.adopted = *p;
  } else {
    d.outcome = Orientation::Cos;
  }
  return d;
}

enum class ReviewStatus { Pending, Accepted, Rejected };

struct ReviewItem {
  std::string word;
  std::optional<Polarity> suggested;
  ReviewStatus status = ReviewStatus::Pending;
  std::optional<Polarity> accepted;  // PO or NG when status == Accepted

  friend bool operator==(const ReviewItem&, const ReviewItem&) = default;
};

enum class OperatorAnswer { Positive, Negative, Reject, Skip };

/// Accepts p/n/r/s as well as PO/NG/reject/skip.
inline OperatorAnswer parse_operator_answer(std::string_view s) {
  s = io::trim(s);
  if (s == "p" || s == "P" || s == "PO") return OperatorAnswer::Positive;
  if (s == "n" || s == "N" || s == "NG") return OperatorAnswer::Negative;
  if (s == "r" || s == "R" || s == "reject") return OperatorAnswer::Reject;
  if (s == "s" || s == "S" || s == "skip") return OperatorAnswer::Skip;
  throw InvalidPolarity("expected p (PO), n (NG), r (reject) or s (skip), got '" + std::string(s) +
                        "'");
}

struct LexiconDelta {
  std::optional<LexiconEntry> insert;
  std::optional<std::string> prevent;
  ReviewItem item;  // with its new status
};

inline LexiconDelta resolve_oov(const ReviewItem& item, OperatorAnswer answer, std::uint64_t tf = 0) {
  if (item.status != ReviewStatus::Pending) throw Error("review item '" + item.word + "' is not pending");
  LexiconDelta delta{std::nullopt, std::nullopt, item};
  switch (answer) {
    case OperatorAnswer::Positive:
    case OperatorAnswer::Negative: {
      const Polarity p = answer == OperatorAnswer::Positive ? Polarity::PO : Polarity::NG;
      delta.insert = LexiconEntry{item.word, "", "", p, tf};
      delta.item.status = ReviewStatus::Accepted;
      delta.item.accepted = p;
      break;
    }
    case OperatorAnswer::Reject:
      delta.prevent = item.word;
      delta.item.status = ReviewStatus::Rejected;
      break;
    case OperatorAnswer::Skip:
      break;
  }
  return delta;
}

inline void apply_delta(SentimentLexicon& lex, const LexiconDelta& delta) {
  if (delta.insert) lex.insert(*delta.insert);
  if (delta.prevent) lex.prevent(*delta.prevent);
}

// ---------------------------------------------------------------------------
// Pending-review file: word<TAB>suggested_polarity<TAB>status
// ---------------------------------------------------------------------------

inline std::string_view to_string(ReviewStatus s) {
  switch (s) {
    case ReviewStatus::Pending: return "PENDING";
    case ReviewStatus::Accepted: return "ACCEPTED";
    case ReviewStatus::Rejected: return "REJECTED";
  }
  return "PENDING";
}

/// Appends all items with a single write.
inline void append_pending_reviews(const std::filesystem::path& path,
                                   std::span<const ReviewItem> items) {
  if (items.empty()) return;
  std::string buf;
  for (const auto& item : items) {
    buf += item.word;
    buf += '\t';
    if (item.suggested) buf += to_string(*item.suggested);
    buf += '\t';
    if (item.status == ReviewStatus::Accepted && item.accepted) {
      buf += "ACCEPTED(";
      buf += to_string(*item.accepted);
      buf += ')';
    } else {
      buf += to_string(item.status);
    }
    buf += '\n';
  }
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot open " + path.string());
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

inline std::vector<ReviewItem> load_pending_reviews(const std::filesystem::path& path) {
  std::vector<ReviewItem> items;
  const auto lines = io::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cols = io::split(lines[i], '\t');
    if (cols.size() != 3) throw ParseError(path.string(), i + 1, "expected 3 columns");
    ReviewItem item;
    item.word = cols[0];
    if (!cols[1].empty()) {
      item.suggested = parse_polarity(cols[1]);
      if (!item.suggested) throw ParseError(path.string(), i + 1, "invalid polarity");
    }
    if (cols[2] == "PENDING") {
      item.status = ReviewStatus::Pending;
    } else if (cols[2] == "REJECTED") {
      item.status = ReviewStatus::Rejected;
    } else if (cols[2] == "ACCEPTED(PO)" || cols[2] == "ACCEPTED(NG)") {
      item.status = ReviewStatus::Accepted;
      item.accepted = cols[2] == "ACCEPTED(PO)" ? Polarity::PO : Polarity::NG;
    } else {
      throw ParseError(path.string(), i + 1, "invalid status '" + cols[2] + "'");
    }
    items.push_back(std::move(item));
  }
  return items;
}

// ---------------------------------------------------------------------------
// Providers
// ---------------------------------------------------------------------------

/// Thesaurus/translation source. Throws ProviderError when unavailable; an
/// unknown word is an empty SynsetResult, not an error.
class SynsetProvider {
 public:
  virtual ~SynsetProvider() = default;
  virtual SynsetResult fetch(const std::string& word) = 0;
};

namespace detail {

inline std::vector<SynonymRef> parse_word_list(std::string_view field) {
  std::vector<SynonymRef> out;
  if (io::trim(field).empty()) return out;
  for (const auto& part : io::split(field, ',')) {
    std::string w = normalize_text(part);
    if (!w.empty()) out.push_back(SynonymRef{std::move(w), std::nullopt});
  }
  return out;
}

inline std::string format_word_list(std::span<const SynonymRef> refs) {
  std::string out;
  for (const auto& r : refs) {
    if (!out.empty()) out += ',';
    out += r.word;
  }
  return out;
}

/// Parses `word<TAB>translation<TAB>syn1,syn2<TAB>ant1,ant2` records.
inline std::map<std::string, SynsetResult> parse_synset_file(const std::filesystem::path& path) {
  std::map<std::string, SynsetResult> table;
  const auto lines = io::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (io::trim(line).empty() || line.front() == '#') continue;
    auto cols = io::split(line, '\t');
    if (cols.size() < 1 || cols.size() > 4) {
      throw ParseError(path.string(), i + 1, "expected word, translation, synonyms, antonyms");
    }
    cols.resize(4);
    std::string word = normalize_text(cols[0]);
    if (word.empty()) throw ParseError(path.string(), i + 1, "empty word");
    SynsetResult r;
    if (const auto t = io::trim(cols[1]); !t.empty()) r.translation = std::string(t);
    r.synonyms = parse_word_list(cols[2]);
    r.antonyms = parse_word_list(cols[3]);
    table.insert_or_assign(std::move(word), std::move(r));
  }
  return table;
}

inline std::string format_synset_line(const std::string& word, const SynsetResult& r) {
  std::string out = word;
  out += '\t';
  if (r.translation) out += io::escape_field(*r.translation);
  out += '\t';
  out += format_word_list(r.synonyms);
  out += '\t';
  out += format_word_list(r.antonyms);
  out += '\n';
  return out;
}

}  // namespace detail

/// Offline provider backed by a TSV fixture file.
class FixtureSynsetProvider : public SynsetProvider {
 public:
  FixtureSynsetProvider() = default;
  explicit FixtureSynsetProvider(std::map<std::string, SynsetResult> table)
      : table_(std::move(table)) {}

  static FixtureSynsetProvider from_file(const std::filesystem::path& path) {
    return FixtureSynsetProvider(detail::parse_synset_file(path));
  }

  void set(const std::string& word, SynsetResult r) { table_[normalize_text(word)] = std::move(r); }

  /// Makes fetch(word) throw ProviderError, simulating a transient outage.
  void mark_unavailable(const std::string& word) { unavailable_.insert(normalize_text(word)); }

  SynsetResult fetch(const std::string& word) override {
    ++calls_;
    if (unavailable_.contains(word)) throw ProviderError(word, "service unavailable");
    const auto it = table_.find(word);
    return it == table_.end() ? SynsetResult{} : it->second;
  }

  std::size_t calls() const noexcept { return calls_; }

 private:
  std::map<std::string, SynsetResult> table_;
  std::unordered_set<std::string> unavailable_;
  std::size_t calls_ = 0;
};

/// Wraps another provider with a file-backed cache in the fixture format.
/// Successful fetches are appended to the cache file; failures are not cached.
class CachingSynsetProvider : public SynsetProvider {
 public:
  CachingSynsetProvider(SynsetProvider& inner, std::filesystem::path cache_path)
      : inner_(inner), path_(std::move(cache_path)) {
    if (std::filesystem::exists(path_)) cache_ = detail::parse_synset_file(path_);
  }

  SynsetResult fetch(const std::string& word) override {
    if (const auto it = cache_.find(word); it != cache_.end()) return it->second;
    SynsetResult r = inner_.fetch(word);
    const std::string line = detail::format_synset_line(word, r);
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out) throw IoError("cannot open " + path_.string());
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    cache_.emplace(word, r);
    return r;
  }

 private:
  SynsetProvider& inner_;
  std::filesystem::path path_;
  std::map<std::string, SynsetResult> cache_;
};

// ---------------------------------------------------------------------------
// Operator review
// ---------------------------------------------------------------------------

class Reviewer {
 public:
  virtual ~Reviewer() = default;
  virtual OperatorAnswer review(const ReviewItem& item, const SynsetResult& synset,
                                const OrientationDecision& decision) = 0;
};

/// Prompts on `out`, reads one answer per line from `in`. Invalid answers are
/// re-prompted; end of input counts as skip.
class StreamReviewer : public Reviewer {
 public:
  StreamReviewer(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  OperatorAnswer review(const ReviewItem& item, const SynsetResult& synset,
                        const OrientationDecision& decision) override {
    out_ << "word: " << item.word << '\n';
    out_ << "  translation: " << synset.translation.value_or("-") << '\n';
    out_ << "  synonyms: " << (synset.synonyms.empty() ? "-" : detail::format_word_list(synset.synonyms))
         << '\n';
    out_ << "  antonyms: " << (synset.antonyms.empty() ? "-" : detail::format_word_list(synset.antonyms))
         << '\n';
    for (const auto& e : decision.evidence) {
      out_ << "  evidence: " << e.word << ' ' << to_string(e.polarity)
           << (e.from_antonym ? " (antonym)" : "") << '\n';
    }
    if (item.suggested) out_ << "  suggested: " << to_string(*item.suggested) << '\n';
    std::string line;
    for (;;) {
      out_ << "[p]ositive [n]egative [r]eject [s]kip > " << std::flush;
      if (!std::getline(in_, line)) return OperatorAnswer::Skip;
      try {
        return parse_operator_answer(line);
      } catch (const InvalidPolarity& e) {
        out_ << e.what() << '\n';
      }
    }
  }

 private:
  std::istream& in_;
  std::ostream& out_;
};

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

enum class ExpansionMode { Interactive, Batch };

struct ExpansionOptions {
  ExpansionMode mode = ExpansionMode::Batch;
  Reviewer* reviewer = nullptr;                       // required in interactive mode
  std::optional<std::filesystem::path> pending_file;  // batch/skip items appended here
  const StopList* stopwords = nullptr;
};

struct ProviderFailure {
  std::string word;
  std::string message;
};

struct ExpansionReport {
  std::size_t candidates = 0;
  std::size_t adopted = 0;
  std::size_t cos = 0;
  std::size_t oov_pending = 0;
  std::size_t oov_accepted = 0;
  std::size_t oov_rejected = 0;
  std::vector<std::string> adopted_words;
  std::vector<std::string> cos_words;
  std::vector<ReviewItem> reviewed;  // every OOV item with its final status
  std::vector<ProviderFailure> failures;
};

struct ExpansionResult {
  SentimentLexicon lexicon;
  ExpansionReport report;
};

/// Tags the corpus and returns it sentence by sentence with topic ids.
inline std::vector<SourcedSentence> tag_corpus(std::span<const Topic> corpus, const PosTagger& tagger,
                                               const StopList* stopwords = nullptr) {
  std::vector<SourcedSentence> out;
  for (const auto& topic : corpus) {
    for (auto& s : segment(topic.text)) {
      Sentence kept = stopwords ? remove_stopwords(s, *stopwords) : std::move(s);
      out.push_back(SourcedSentence{topic.id, pos_tag(kept, tagger)});
    }
  }
  return out;
}

/// One expansion pass. Candidates are processed in first-occurrence corpus
/// order and adopted words are inserted immediately, so later candidates can
/// use them as evidence.
inline ExpansionResult expand_lexicon(std::span<const Topic> corpus, const SentimentLexicon& lex,
                                      SynsetProvider& provider, const PosTagger& tagger,
                                      const ExpansionOptions& options = {}) {
  if (options.mode == ExpansionMode::Interactive && options.reviewer == nullptr) {
    throw Error("interactive expansion needs a reviewer");
  }
  ExpansionResult result{lex, {}};
  auto& out = result.lexicon;
  auto& report = result.report;

  const auto tf = count_tokens(corpus);
  const auto tf_of = [&](const std::string& w) -> std::uint64_t {
    const auto it = tf.find(w);
    return it == tf.end() ? 0 : it->second;
  };

  const auto candidates = filter_candidates(tag_corpus(corpus, tagger, options.stopwords), lex);
  report.candidates = candidates.size();
  std::vector<ReviewItem> pending;

  for (const auto& cand : candidates) {
    // Adoptions earlier in this pass may have covered the word already.
    if (out.contains(cand.word) || out.is_prevented(cand.word)) continue;
    SynsetResult synset;
    try {
      synset = provider.fetch(cand.word);
    } catch (const ProviderError& e) {
      report.failures.push_back(ProviderFailure{cand.word, e.what()});
      continue;
    }
    const OrientationDecision decision = detect_orientation(cand.word, synset, out);
    switch (decision.outcome) {
      case Orientation::Adopt:
        out.insert(LexiconEntry{cand.word, synset.translation.value_or(""), "", *decision.adopted,
                                tf_of(cand.word)});
        ++report.adopted;
        report.adopted_words.push_back(cand.word);
        break;
      case Orientation::Cos:
        ++report.cos;
        report.cos_words.push_back(cand.word);
        break;
      case Orientation::Oov: {
        ReviewItem item{cand.word, decision.unanimous(), ReviewStatus::Pending, std::nullopt};
        OperatorAnswer answer = OperatorAnswer::Skip;
        if (options.mode == ExpansionMode::Interactive) {
          answer = options.reviewer->review(item, synset, decision);
        }
        const LexiconDelta delta = resolve_oov(item, answer, tf_of(cand.word));
        apply_delta(out, delta);
        switch (delta.item.status) {
          case ReviewStatus::Accepted: ++report.oov_accepted; break;
          case ReviewStatus::Rejected: ++report.oov_rejected; break;
          case ReviewStatus::Pending:
            ++report.oov_pending;
            pending.push_back(delta.item);
            break;
        }
        report.reviewed.push_back(delta.item);
        break;
      }
    }
  }
  if (options.pending_file) append_pending_reviews(*options.pending_file, pending);
  return result;
}

inline std::string format_report(const ExpansionReport& r) {
  std::ostringstream os;
  os << "candidates\t" << r.candidates << '\n'
     << "adopted\t" << r.adopted << '\n'
     << "cos\t" << r.cos << '\n'
     << "oov_pending\t" << r.oov_pending << '\n'
     << "oov_accepted\t" << r.oov_accepted << '\n'
     << "oov_rejected\t" << r.oov_rejected << '\n'
     << "provider_errors\t" << r.failures.size() << '\n';
  for (const auto& f : r.failures) os << "error\t" << f.word << '\t' << f.message << '\n';
  return os.str();
}

}  // namespace arsenti
