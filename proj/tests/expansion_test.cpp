#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"

namespace arsenti {
namespace {

using testing::entry;
using testing::TempDir;

TableTagger walkthrough_tagger() {
  return TableTagger({{"مسرور", PosTag::JJ}, {"شديد", PosTag::JJ}, {"هايف", PosTag::JJ}});
}

std::vector<Topic> walkthrough_corpus() {
  return {Topic{"t1", "انا مسرور النهارده", Polarity::PO, Genre::Tweet},
          Topic{"t2", "الحر شديد", std::nullopt, Genre::Tweet},
          Topic{"t3", "الكلام ده هايف. هايف جدا", Polarity::NG, Genre::Tweet}};
}

std::vector<SourcedSentence> tagged(const std::string& text, const PosTagger& tagger) {
  return tag_corpus(std::vector<Topic>{Topic{"t", text, {}, {}}}, tagger);
}

/// Answers from a fixed script, recording what it was shown.
class ScriptedReviewer : public Reviewer {
 public:
  explicit ScriptedReviewer(std::vector<OperatorAnswer> answers) : answers_(std::move(answers)) {}
  OperatorAnswer review(const ReviewItem& item, const SynsetResult&, const OrientationDecision&) override {
    seen.push_back(item.word);
    return answers_.at(seen.size() - 1);
  }
  std::vector<std::string> seen;

 private:
  std::vector<OperatorAnswer> answers_;
};

TEST(FilterCandidates, ExcludesKnownWords) {
  SentimentLexicon lex;
  lex.insert(entry("مسرور", Polarity::PO));
  EXPECT_TRUE(filter_candidates(tagged("مسرور", walkthrough_tagger()), lex).empty());
}

TEST(FilterCandidates, ExcludesOtherTag) {
  EXPECT_TRUE(filter_candidates(tagged("كلمة", walkthrough_tagger()), SentimentLexicon{}).empty());
}

TEST(FilterCandidates, DeduplicatesInFirstOccurrenceOrder) {
  const auto c = filter_candidates(tagged("هايف هايف شديد. هايف هايف مسرور هايف", walkthrough_tagger()),
                                   SentimentLexicon{});
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0].word, "هايف");
  EXPECT_EQ(c[0].tag, PosTag::JJ);
  EXPECT_EQ(c[1].word, "شديد");
  EXPECT_EQ(c[2].word, "مسرور");
}

TEST(FilterCandidates, PreventListedNeverProposed) {
  SentimentLexicon lex;
  lex.prevent("هايف");
  const auto c = filter_candidates(tagged("هايف شديد", walkthrough_tagger()), lex);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].word, "شديد");
}

TEST(DetectOrientation, UnanimousAdopts) {
  auto provider = testing::walkthrough_provider();
  const auto d = detect_orientation("مسرور", provider.fetch("مسرور"), testing::walkthrough_lexicon());
  EXPECT_EQ(d.outcome, Orientation::Adopt);
  EXPECT_EQ(d.adopted, Polarity::PO);
  EXPECT_EQ(d.evidence.size(), 3u);
}

TEST(DetectOrientation, MixedIsConflictOfSynonyms) {
  auto provider = testing::walkthrough_provider();
  const auto d = detect_orientation("شديد", provider.fetch("شديد"), testing::walkthrough_lexicon());
  EXPECT_EQ(d.outcome, Orientation::Cos);
  EXPECT_FALSE(d.adopted);
}

TEST(DetectOrientation, NoTranslationNoSynonymsIsOov) {
  EXPECT_EQ(detect_orientation("هايف", SynsetResult{}, testing::walkthrough_lexicon()).outcome, Orientation::Oov);
}

TEST(DetectOrientation, UnknownAndNeutralSynonymsCastNoVote) {
  SentimentLexicon lex = testing::walkthrough_lexicon();
  lex.insert(entry("عادي", Polarity::NU));
  const SynsetResult only_unknown{"word", {{"مجهول", {}}, {"عادي", {}}}, {}};
  EXPECT_EQ(detect_orientation("x", only_unknown, lex).outcome, Orientation::Oov);
  const SynsetResult one_known{"word", {{"مجهول", {}}, {"عادي", {}}, {"سعيد", {}}}, {}};
  EXPECT_EQ(detect_orientation("x", one_known, lex).adopted, Polarity::PO);
}

TEST(DetectOrientation, AntonymsVoteFlipped) {
  const SynsetResult r{std::nullopt, {{"سعيد", {}}}, {{"عنيف", {}}}};
  const auto d = detect_orientation("x", r, testing::walkthrough_lexicon());
  EXPECT_EQ(d.outcome, Orientation::Adopt);
  EXPECT_EQ(d.adopted, Polarity::PO);
  ASSERT_EQ(d.evidence.size(), 2u);
  EXPECT_TRUE(d.evidence[1].from_antonym);
}

TEST(DetectOrientation, Properties) {
  // Random evidence multisets: never ADOPT(NU), COS implies two polarities,
  // and an antonym (w, p) behaves like a synonym with polarity flip(p).
  SentimentLexicon lex;
  const std::vector<std::pair<std::string, Polarity>> words = {
      {"ا", Polarity::PO}, {"ب", Polarity::PO}, {"ت", Polarity::NG}, {"ث", Polarity::NG}, {"ج", Polarity::NU}};
  for (const auto& [w, p] : words) lex.insert(entry(w, p));
  SentimentLexicon mirrored;  // every word with flipped polarity
  for (const auto& [w, p] : words) mirrored.insert(entry(w, flip(p)));

  std::mt19937 rng(31);
  for (int i = 0; i < 2000; ++i) {
    SynsetResult r;
    if (rng() % 2) r.translation = "t";
    for (int k = 0, n = static_cast<int>(rng() % 4); k < n; ++k) r.synonyms.push_back({words[rng() % 5].first, {}});
    for (int k = 0, n = static_cast<int>(rng() % 3); k < n; ++k) r.antonyms.push_back({words[rng() % 5].first, {}});
    const auto d = detect_orientation("x", r, lex);
    if (d.outcome == Orientation::Adopt) {
      ASSERT_NE(d.adopted, Polarity::NU);
    }
    if (d.outcome == Orientation::Cos) {
      bool po = false, ng = false;
      for (const auto& e : d.evidence) (e.polarity == Polarity::PO ? po : ng) = true;
      ASSERT_TRUE(po && ng);
    }
    if (r.antonyms.empty()) continue;
    // Move the first antonym into the synonyms, evaluated against a lexicon
    // where only that word's polarity is flipped.
    SynsetResult moved = r;
    const std::string w = moved.antonyms.front().word;
    moved.antonyms.erase(moved.antonyms.begin());
    SentimentLexicon swapped;
    std::string alias = w + "ي";  // fresh key for the flipped copy
    for (const auto& [word, e] : lex.entries()) swapped.insert(e);
    const auto* orig = lex.find(w);
    swapped.insert(entry(alias, flip(orig->polarity)));
    moved.synonyms.push_back({alias, {}});
    if (!r.translation && r.synonyms.empty()) continue;  // OOV by the no-data rule either way
    const auto d2 = detect_orientation("x", moved, swapped);
    ASSERT_EQ(d2.outcome, d.outcome);
    ASSERT_EQ(d2.adopted, d.adopted);
  }
}

TEST(ResolveOov, AcceptAddsEntry) {
  SentimentLexicon lex;
  const auto delta = resolve_oov(ReviewItem{"هايف", {}, ReviewStatus::Pending, {}}, OperatorAnswer::Negative, 4);
  apply_delta(lex, delta);
  ASSERT_NE(lex.find("هايف"), nullptr);
  EXPECT_EQ(lex.find("هايف")->polarity, Polarity::NG);
  EXPECT_EQ(lex.find("هايف")->gloss, "");
  EXPECT_EQ(lex.find("هايف")->tf, 4u);
  EXPECT_EQ(delta.item.status, ReviewStatus::Accepted);
}

TEST(ResolveOov, RejectPreventLists) {
  SentimentLexicon lex;
  apply_delta(lex, resolve_oov(ReviewItem{"هايف", {}, ReviewStatus::Pending, {}}, OperatorAnswer::Reject));
  EXPECT_TRUE(lex.is_prevented("هايف"));
  EXPECT_FALSE(lex.contains("هايف"));
}

TEST(ResolveOov, SkipLeavesLexiconUnchanged) {
  SentimentLexicon lex;
  const auto delta = resolve_oov(ReviewItem{"هايف", {}, ReviewStatus::Pending, {}}, OperatorAnswer::Skip);
  apply_delta(lex, delta);
  EXPECT_EQ(lex, SentimentLexicon{});
  EXPECT_EQ(delta.item.status, ReviewStatus::Pending);
}

TEST(ResolveOov, InvalidAnswer) {
  EXPECT_THROW(parse_operator_answer("NU"), InvalidPolarity);
  EXPECT_THROW(parse_operator_answer("x"), InvalidPolarity);
  EXPECT_EQ(parse_operator_answer(" n "), OperatorAnswer::Negative);
  EXPECT_EQ(parse_operator_answer("PO"), OperatorAnswer::Positive);
  EXPECT_THROW(resolve_oov(ReviewItem{"x", {}, ReviewStatus::Rejected, {}}, OperatorAnswer::Positive), Error);
}

TEST(ExpandLexicon, NothingToDo) {
  SentimentLexicon lex = testing::walkthrough_lexicon();
  lex.insert(entry("مسرور", Polarity::PO));
  auto provider = testing::walkthrough_provider();
  const auto r = expand_lexicon(std::vector<Topic>{Topic{"t", "مسرور", {}, {}}}, lex, provider, walkthrough_tagger());
  EXPECT_EQ(r.lexicon, lex);
  EXPECT_EQ(r.report.adopted + r.report.cos + r.report.oov_pending, 0u);
  EXPECT_EQ(provider.calls(), 0u);
}

TEST(ExpandLexicon, ThreeCaseWalkthroughBatch) {
  TempDir dir;
  const auto base = testing::walkthrough_lexicon();
  auto provider = testing::walkthrough_provider();
  ExpansionOptions opts;
  opts.pending_file = dir / "pending.tsv";
  const auto r = expand_lexicon(walkthrough_corpus(), base, provider, walkthrough_tagger(), opts);
  EXPECT_EQ(r.report.adopted, 1u);
  EXPECT_EQ(r.report.cos, 1u);
  EXPECT_EQ(r.report.oov_pending, 1u);
  EXPECT_EQ(r.lexicon.size(), base.size() + 1);
  EXPECT_EQ(lookup(r.lexicon, "مسرور")->polarity, Polarity::PO);
  EXPECT_EQ(lookup(r.lexicon, "مسرور")->gloss, "Delighted");
  EXPECT_EQ(lookup(r.lexicon, "شديد"), nullptr);
  EXPECT_EQ(lookup(r.lexicon, "هايف"), nullptr);
  const auto pending = load_pending_reviews(dir / "pending.tsv");
  ASSERT_EQ(pending.size(), 1u);
  EXPECT_EQ(pending[0].word, "هايف");
  EXPECT_EQ(pending[0].status, ReviewStatus::Pending);
}

TEST(ExpandLexicon, InteractiveAcceptance) {
  auto provider = testing::walkthrough_provider();
  ScriptedReviewer reviewer({OperatorAnswer::Negative});
  ExpansionOptions opts;
  opts.mode = ExpansionMode::Interactive;
  opts.reviewer = &reviewer;
  const auto r = expand_lexicon(walkthrough_corpus(), testing::walkthrough_lexicon(), provider, walkthrough_tagger(), opts);
  EXPECT_EQ(reviewer.seen, std::vector<std::string>{"هايف"});
  EXPECT_EQ(r.report.oov_accepted, 1u);
  ASSERT_NE(lookup(r.lexicon, "هايف"), nullptr);
  EXPECT_EQ(lookup(r.lexicon, "هايف")->polarity, Polarity::NG);
  EXPECT_EQ(lookup(r.lexicon, "هايف")->tf, 2u);
}

TEST(ExpandLexicon, InteractiveRejection) {
  auto provider = testing::walkthrough_provider();
  ScriptedReviewer reviewer({OperatorAnswer::Reject});
  ExpansionOptions opts{ExpansionMode::Interactive, &reviewer, std::nullopt, nullptr};
  const auto r = expand_lexicon(walkthrough_corpus(), testing::walkthrough_lexicon(), provider, walkthrough_tagger(), opts);
  EXPECT_EQ(r.report.oov_rejected, 1u);
  EXPECT_TRUE(r.lexicon.is_prevented("هايف"));
  // Prevent-listed: a later pass does not ask again.
  ScriptedReviewer again({});
  ExpansionOptions opts2{ExpansionMode::Interactive, &again, std::nullopt, nullptr};
  expand_lexicon(walkthrough_corpus(), r.lexicon, provider, walkthrough_tagger(), opts2);
  EXPECT_TRUE(again.seen.empty());
}

TEST(ExpandLexicon, StreamReviewerProtocol) {
  auto provider = testing::walkthrough_provider();
  std::istringstream in("maybe\nn\n");
  std::ostringstream out;
  StreamReviewer reviewer(in, out);
  ExpansionOptions opts{ExpansionMode::Interactive, &reviewer, std::nullopt, nullptr};
  const auto r = expand_lexicon(walkthrough_corpus(), testing::walkthrough_lexicon(), provider, walkthrough_tagger(), opts);
  EXPECT_EQ(lookup(r.lexicon, "هايف")->polarity, Polarity::NG);
  EXPECT_NE(out.str().find("word: هايف"), std::string::npos);
  EXPECT_NE(out.str().find("[p]ositive [n]egative [r]eject [s]kip"), std::string::npos);
}

TEST(ExpandLexicon, EndOfInputIsSkip) {
  auto provider = testing::walkthrough_provider();
  std::istringstream in("");
  std::ostringstream out;
  StreamReviewer reviewer(in, out);
  ExpansionOptions opts{ExpansionMode::Interactive, &reviewer, std::nullopt, nullptr};
  const auto r = expand_lexicon(walkthrough_corpus(), testing::walkthrough_lexicon(), provider, walkthrough_tagger(), opts);
  EXPECT_EQ(r.report.oov_pending, 1u);
}

TEST(ExpandLexicon, Idempotent) {
  auto provider = testing::walkthrough_provider();
  const auto first = expand_lexicon(walkthrough_corpus(), testing::walkthrough_lexicon(), provider, walkthrough_tagger());
  const auto second = expand_lexicon(walkthrough_corpus(), first.lexicon, provider, walkthrough_tagger());
  EXPECT_EQ(second.report.adopted, 0u);
  EXPECT_EQ(second.lexicon, first.lexicon);
}

TEST(ExpandLexicon, AdoptionsServeAsLaterEvidence) {
  // "بهيج" only has "مسرور" as a synonym; "مسرور" is adopted first.
  auto provider = testing::walkthrough_provider();
  provider.set("بهيج", SynsetResult{"joyful", {{"مسرور", {}}}, {}});
  TableTagger tagger({{"مسرور", PosTag::JJ}, {"بهيج", PosTag::JJ}});
  const auto r = expand_lexicon(std::vector<Topic>{Topic{"t", "مسرور بهيج", {}, {}}}, testing::walkthrough_lexicon(),
                                provider, tagger);
  EXPECT_EQ(r.report.adopted, 2u);
  EXPECT_EQ(lookup(r.lexicon, "بهيج")->polarity, Polarity::PO);
  // Reverse order: no evidence yet for the first word.
  const auto r2 = expand_lexicon(std::vector<Topic>{Topic{"t", "بهيج مسرور", {}, {}}},
                                 testing::walkthrough_lexicon(), provider, tagger);
  EXPECT_EQ(r2.report.adopted, 1u);
  EXPECT_EQ(r2.report.oov_pending, 1u);
}

TEST(ExpandLexicon, ProviderFailureIsSkippedAndReported) {
  auto provider = testing::walkthrough_provider();
  provider.mark_unavailable("مسرور");
  const auto r = expand_lexicon(walkthrough_corpus(), testing::walkthrough_lexicon(), provider, walkthrough_tagger());
  ASSERT_EQ(r.report.failures.size(), 1u);
  EXPECT_EQ(r.report.failures[0].word, "مسرور");
  EXPECT_FALSE(r.lexicon.contains("مسرور"));
  EXPECT_FALSE(r.lexicon.is_prevented("مسرور"));
  EXPECT_EQ(r.report.adopted, 0u);
}

TEST(ExpandLexicon, InteractiveNeedsReviewer) {
  auto provider = testing::walkthrough_provider();
  ExpansionOptions opts;
  opts.mode = ExpansionMode::Interactive;
  EXPECT_THROW(expand_lexicon(walkthrough_corpus(), SentimentLexicon{}, provider, walkthrough_tagger(), opts), Error);
}

TEST(ExpandLexicon, ShippedSyntheticFixtureRecoversWithheldWords) {
  const auto full = load_sentiment_lexicon(testing::data_dir() / "lexicon.tsv");
  const auto base = load_sentiment_lexicon(testing::data_dir() / "synthetic" / "base_lexicon.tsv");
  const auto corpus = load_corpus(testing::data_dir() / "synthetic" / "corpus.tsv");
  auto provider = FixtureSynsetProvider::from_file(testing::data_dir() / "synthetic" / "provider.tsv");
  auto res = testing::shipped_resources(testing::data_dir() / "synthetic" / "base_lexicon.tsv");
  ExpansionOptions opts;
  opts.stopwords = &res.stopwords;
  const auto r = expand_lexicon(corpus, base, provider, res.tagger(), opts);
  EXPECT_GT(r.report.adopted, 0u);
  EXPECT_GT(r.report.cos, 0u);
  // Every adopted word carries the polarity of the full lexicon.
  for (const auto& w : r.report.adopted_words) {
    ASSERT_NE(full.find(w), nullptr) << w;
    EXPECT_EQ(r.lexicon.find(w)->polarity, full.find(w)->polarity) << w;
  }
}

TEST(PendingReviews, RoundTripAndAppend) {
  TempDir dir;
  const std::vector<ReviewItem> a = {ReviewItem{"هايف", Polarity::NG, ReviewStatus::Pending, {}}};
  const std::vector<ReviewItem> b = {ReviewItem{"كلمة", {}, ReviewStatus::Rejected, {}},
                                     ReviewItem{"تانية", {}, ReviewStatus::Accepted, Polarity::PO}};
  append_pending_reviews(dir / "p.tsv", a);
  append_pending_reviews(dir / "p.tsv", b);
  const auto all = load_pending_reviews(dir / "p.tsv");
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0], a[0]);
  EXPECT_EQ(all[1], b[0]);
  EXPECT_EQ(all[2], b[1]);
}

TEST(SynsetFixture, ParsesFileAndCaches) {
  TempDir dir;
  auto inner = FixtureSynsetProvider::from_file(testing::data_dir() / "synonyms.tsv");
  const auto r = inner.fetch("مسرور");
  EXPECT_EQ(r.translation, "Delighted");
  EXPECT_EQ(r.synonyms.size(), 3u);
  EXPECT_EQ(inner.fetch("هايف"), SynsetResult{});

  CachingSynsetProvider cache(inner, dir / "cache.tsv");
  const std::size_t before = inner.calls();
  EXPECT_EQ(cache.fetch("شديد"), inner.fetch("شديد"));
  EXPECT_EQ(cache.fetch("شديد").synonyms.size(), 3u);
  EXPECT_EQ(inner.calls(), before + 2);  // one through the cache, one direct

  // A fresh cache reads the file without touching the inner provider.
  FixtureSynsetProvider empty;
  CachingSynsetProvider reopened(empty, dir / "cache.tsv");
  EXPECT_EQ(reopened.fetch("شديد").translation, "Intense");
  EXPECT_EQ(empty.calls(), 0u);
}

}  // namespace
}  // namespace arsenti
