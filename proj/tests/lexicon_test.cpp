#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>
#include <unordered_map>

#include "test_support.hpp"

namespace arsenti {
namespace {

using testing::entry;
using testing::TempDir;

std::string row(const std::string& w, const std::string& p, const std::string& tf = "0") {
  return w + "\tgloss\ttranslit\t" + p + "\t" + tf + "\n";
}

TEST(LoadSentimentLexicon, ClassCountsAtFullScale) {
  TempDir dir;
  std::string content(kLexiconHeader);
  content += '\n';
  // Distinct synthetic Arabic keys: two letters per digit of the index.
  const auto key = [](int i) {
    static const char* letters[] = {"ب", "ت", "ث", "ج", "ح", "خ", "د", "ذ", "ر", "ز"};
    std::string w = "س";
    for (char c : std::to_string(i)) w += letters[c - '0'];
    return w;
  };
  int i = 0;
  for (int k = 0; k < 2003; ++k) content += row(key(i++), "PO");
  for (int k = 0; k < 2829; ++k) content += row(key(i++), "NG");
  for (int k = 0; k < 412; ++k) content += row(key(i++), "NU");
  io::write_file(dir / "lex.tsv", content);

  const auto lex = load_sentiment_lexicon(dir / "lex.tsv");
  EXPECT_EQ(lex.size(), 5244u);
  const auto c = lex.counts();
  EXPECT_EQ(c.po, 2003u);
  EXPECT_EQ(c.ng, 2829u);
  EXPECT_EQ(c.nu, 412u);
  EXPECT_EQ(c.total(), lex.size());
}

TEST(LoadSentimentLexicon, SmallFileAndNormalization) {
  TempDir dir;
  io::write_file(dir / "lex.tsv", std::string(kLexiconHeader) + "\n" + row("رائِع", "PO", "3") +
                                      row("سيئة", "NG") + row("عادي", "NU"));
  const auto lex = load_sentiment_lexicon(dir / "lex.tsv");
  EXPECT_EQ(lex.size(), 3u);
  ASSERT_NE(lex.find("رائع"), nullptr);
  EXPECT_EQ(lex.find("رائع")->tf, 3u);
}

TEST(LoadSentimentLexicon, Errors) {
  TempDir dir;
  const std::string header = std::string(kLexiconHeader) + "\n";
  io::write_file(dir / "bad.tsv", header + row("رائع", "XX"));
  try {
    load_sentiment_lexicon(dir / "bad.tsv");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  io::write_file(dir / "cols.tsv", header + "رائع\tPO\n");
  EXPECT_THROW(load_sentiment_lexicon(dir / "cols.tsv"), ParseError);
  io::write_file(dir / "dup.tsv", header + row("رائع", "PO") + row("رائِع", "NG"));
  EXPECT_THROW(load_sentiment_lexicon(dir / "dup.tsv"), DuplicateWord);
  io::write_file(dir / "tf.tsv", header + row("رائع", "PO", "-1"));
  EXPECT_THROW(load_sentiment_lexicon(dir / "tf.tsv"), ParseError);
  EXPECT_THROW(load_sentiment_lexicon(dir / "missing.tsv"), IoError);
}

TEST(LoadSentimentLexicon, ShippedSeedLoads) {
  const auto lex = load_sentiment_lexicon(testing::data_dir() / "lexicon.tsv");
  EXPECT_GT(lex.size(), 100u);
  EXPECT_EQ(lex.counts().total(), lex.size());
  for (const auto& [word, e] : lex.entries()) EXPECT_EQ(normalize_text(word), word);
}

TEST(Lookup, WalkthroughFixture) {
  SentimentLexicon lex = testing::walkthrough_lexicon();
  lex.insert(entry("مسرور", Polarity::PO, "Delighted"));
  ASSERT_NE(lookup(lex, "مسرور"), nullptr);
  EXPECT_EQ(lookup(lex, "مسرور")->polarity, Polarity::PO);
}

TEST(Lookup, NormalizesBeforeLookup) {
  SentimentLexicon lex;
  lex.insert(entry("رائع", Polarity::PO));
  EXPECT_NE(lookup(lex, "رائِع"), nullptr);
  EXPECT_EQ(lookup(lex, "مجهول"), nullptr);
}

TEST(Lookup, InvariantUnderNormalization) {
  const auto lex = load_sentiment_lexicon(testing::data_dir() / "lexicon.tsv");
  std::mt19937 rng(3);
  const std::vector<std::string> marks = {"َ", "ُ", "ّ", "ـ", ""};
  for (const auto& [word, e] : lex.entries()) {
    std::string noisy = word;
    noisy.insert(noisy.size() - 2, marks[rng() % marks.size()]);
    EXPECT_EQ(lookup(lex, noisy), lookup(lex, normalize_text(noisy)));
    EXPECT_EQ(lookup(lex, noisy), &e);
  }
}

TEST(PreventList, DisjointFromEntries) {
  SentimentLexicon lex;
  lex.prevent("هايف");
  EXPECT_TRUE(lex.is_prevented("هايف"));
  lex.insert(entry("هايف", Polarity::NG));
  EXPECT_FALSE(lex.is_prevented("هايف"));
  EXPECT_THROW(lex.prevent("هايف"), Error);
  EXPECT_THROW(lex.insert(entry("هايف", Polarity::PO)), DuplicateWord);
}

TEST(PreventList, RandomMutationsKeepDisjointness) {
  std::mt19937 rng(5);
  const std::vector<std::string> words = {"ا", "ب", "ت", "ث", "ج", "ح", "خ", "د"};
  SentimentLexicon lex;
  for (int i = 0; i < 2000; ++i) {
    const auto& w = words[rng() % words.size()];
    try {
      if (rng() % 2) {
        lex.insert(entry(w, Polarity::PO));
      } else {
        lex.prevent(w);
      }
    } catch (const Error&) {
    }
    for (const auto& p : lex.prevent_list()) ASSERT_FALSE(lex.contains(p));
  }
}

TEST(SaveSentimentLexicon, RoundTrip) {
  TempDir dir;
  SentimentLexicon lex;
  lex.insert(LexiconEntry{"رائع", "wonderful", "rAyE", Polarity::PO, 5});
  lex.insert(LexiconEntry{"سيئة", "", "", Polarity::NG, 0});
  lex.insert(LexiconEntry{"عادي", "ordinary", "EAdy", Polarity::NU, 2});
  lex.prevent("هايف");
  save_sentiment_lexicon(lex, dir / "lex.tsv");
  EXPECT_TRUE(std::filesystem::exists(dir / "lex.prevent"));
  EXPECT_EQ(load_sentiment_lexicon(dir / "lex.tsv"), lex);
}

TEST(SaveSentimentLexicon, EmptyLexiconIsHeaderOnly) {
  TempDir dir;
  save_sentiment_lexicon(SentimentLexicon{}, dir / "lex.tsv");
  EXPECT_EQ(io::read_file(dir / "lex.tsv"), std::string(kLexiconHeader) + "\n");
  EXPECT_TRUE(load_sentiment_lexicon(dir / "lex.tsv").empty());
}

TEST(SaveSentimentLexicon, TabInGlossBecomesSpace) {
  TempDir dir;
  SentimentLexicon lex;
  lex.insert(LexiconEntry{"رائع", "very\tgood", "", Polarity::PO, 0});
  save_sentiment_lexicon(lex, dir / "lex.tsv");
  EXPECT_EQ(load_sentiment_lexicon(dir / "lex.tsv").find("رائع")->gloss, "very good");
}

TEST(SaveSentimentLexicon, UnwritablePath) {
  EXPECT_THROW(save_sentiment_lexicon(SentimentLexicon{}, "/nonexistent-dir/x/lex.tsv"), IoError);
}

std::vector<Topic> corpus_of(std::initializer_list<const char*> texts) {
  std::vector<Topic> out;
  int i = 0;
  for (const char* t : texts) out.push_back(Topic{"t" + std::to_string(i++), t, {}, {}});
  return out;
}

TEST(UpdateTermFrequencies, CountsOccurrences) {
  SentimentLexicon lex;
  lex.insert(entry("رائع", Polarity::PO));
  lex.insert(entry("سيئ", Polarity::NG));
  const auto corpus = corpus_of({"رائع رائع", "الفيلم رائع. التمثيل رائع", "رائع!"});
  const auto out = update_term_frequencies(lex, corpus);
  EXPECT_EQ(out.find("رائع")->tf, 5u);
  EXPECT_EQ(out.find("سيئ")->tf, 0u);
}

TEST(UpdateTermFrequencies, EmptyCorpusZeroes) {
  SentimentLexicon lex;
  lex.insert(LexiconEntry{"رائع", "", "", Polarity::PO, 9});
  EXPECT_EQ(update_term_frequencies(lex, {}).find("رائع")->tf, 0u);
}

TEST(UpdateTermFrequencies, CountsDiacritizedOccurrences) {
  SentimentLexicon lex;
  lex.insert(entry("رائع", Polarity::PO));
  EXPECT_EQ(update_term_frequencies(lex, corpus_of({"رائِعٌ", "رَائع"})).find("رائع")->tf, 2u);
}

TEST(UpdateTermFrequencies, MatchesFlatCountAndIsOrderIndependent) {
  auto lex = load_sentiment_lexicon(testing::data_dir() / "lexicon.tsv");
  auto corpus = load_corpus(testing::data_dir() / "synthetic" / "corpus.tsv");
  const auto a = update_term_frequencies(lex, corpus);

  // Oracle: flat count over the independently tokenized corpus.
  std::unordered_map<std::string, std::uint64_t> flat;
  for (const auto& t : corpus) {
    for (const auto& s : segment(t.text)) {
      for (const auto& tok : s.tokens) ++flat[tok.surface];
    }
  }
  for (const auto& [word, e] : a.entries()) EXPECT_EQ(e.tf, flat[word]) << word;

  std::mt19937 rng(1);
  std::shuffle(corpus.begin(), corpus.end(), rng);
  EXPECT_EQ(update_term_frequencies(lex, corpus), a);
}

TEST(IdiomLexicon, LoadsProverbEntry) {
  TempDir dir;
  io::write_file(dir / "idioms.tsv", "تسليم القط مفتاح الكرار\tNG\n");
  const auto idioms = load_idiom_lexicon(dir / "idioms.tsv");
  ASSERT_EQ(idioms.size(), 1u);
  EXPECT_EQ(idioms.entries()[0].phrase.size(), 4u);
  EXPECT_EQ(idioms.entries()[0].polarity, Polarity::NG);
}

TEST(IdiomLexicon, Errors) {
  TempDir dir;
  io::write_file(dir / "one.tsv", "كلمة\tNG\n");
  EXPECT_THROW(load_idiom_lexicon(dir / "one.tsv"), ParseError);
  io::write_file(dir / "nu.tsv", "كلمة اخري\tNU\n");
  EXPECT_THROW(load_idiom_lexicon(dir / "nu.tsv"), ParseError);
  io::write_file(dir / "dup.tsv", "زي الفل\tPO\nزيّ الفلّ\tPO\n");
  EXPECT_THROW(load_idiom_lexicon(dir / "dup.tsv"), DuplicatePhrase);
  io::write_file(dir / "empty.tsv", "");
  EXPECT_TRUE(load_idiom_lexicon(dir / "empty.tsv").empty());
}

TEST(IdiomLexicon, LongestMatchWins) {
  IdiomLexicon idioms;
  idioms.add(IdiomEntry{{"زي", "الفل"}, Polarity::PO, ""});
  idioms.add(IdiomEntry{{"زي", "الفل", "خالص"}, Polarity::NG, ""});
  const Sentence s = tokenize("زي الفل خالص");
  ASSERT_NE(idioms.longest_match(s.tokens, 0), nullptr);
  EXPECT_EQ(idioms.longest_match(s.tokens, 0)->phrase.size(), 3u);
  EXPECT_EQ(idioms.longest_match(s.tokens, 1), nullptr);
}

TEST(IdiomLexicon, ShippedFileLoads) {
  EXPECT_GE(load_idiom_lexicon(testing::data_dir() / "idioms.tsv").size(), 20u);
}

}  // namespace
}  // namespace arsenti
