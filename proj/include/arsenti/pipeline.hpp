#pragma once

// Resource bundle and the extract -> train -> predict -> report pipeline.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arsenti/classifier.hpp"
#include "arsenti/corpus.hpp"
#include "arsenti/eval.hpp"
#include "arsenti/features.hpp"
#include "arsenti/lexicon.hpp"
#include "arsenti/preprocess.hpp"
#include "arsenti/svmlight.hpp"

namespace arsenti {

struct ResourcePaths {
  std::optional<std::filesystem::path> lexicon;
  std::optional<std::filesystem::path> idioms;
  std::optional<std::filesystem::path> negators;
  std::optional<std::filesystem::path> intensifiers;
  std::optional<std::filesystem::path> questions;
  std::optional<std::filesystem::path> wishful;
  std::optional<std::filesystem::path> stopwords;
  std::optional<std::filesystem::path> tags;
};

/// Everything feature extraction reads. The tagger is the tag table plus a JJ
/// default for lexicon words the table does not cover.
class Resources {
 public:
  SentimentLexicon lexicon;
  IdiomLexicon idioms;
  CueLists cues;
  StopList stopwords;
  ScoringConfig scoring;

  Resources() = default;

  static Resources load(const ResourcePaths& paths) {
    Resources r;
    if (paths.lexicon) r.lexicon = load_sentiment_lexicon(*paths.lexicon);
    if (paths.idioms) r.idioms = load_idiom_lexicon(*paths.idioms);
    if (paths.negators) r.cues.negators = load_cue_set(*paths.negators);
    if (paths.intensifiers) r.cues.intensifiers = load_cue_set(*paths.intensifiers);
    if (paths.questions) r.cues.questions = load_cue_set(*paths.questions);
    if (paths.wishful) r.cues.wishful = load_cue_set(*paths.wishful);
    if (paths.stopwords) r.stopwords = load_stoplist(*paths.stopwords);
    if (paths.tags) r.base_tags_ = TableTagger::from_file(*paths.tags);
    r.rebuild_tagger();
    return r;
  }

  void set_tag_table(TableTagger table) {
    base_tags_ = std::move(table);
    rebuild_tagger();
  }

  /// Swaps in a new lexicon (e.g. after expansion) and refreshes tag defaults.
  void set_lexicon(SentimentLexicon lex) {
    lexicon = std::move(lex);
    rebuild_tagger();
  }

  const TableTagger& tagger() const noexcept { return tagger_; }
  const TableTagger& tag_table() const noexcept { return base_tags_; }

  FeatureExtractor extractor() const {
    return FeatureExtractor(lexicon, idioms, cues, tagger_, stopwords, scoring);
  }

 private:
  void rebuild_tagger() {
    tagger_ = base_tags_;
    for (const auto& [word, entry] : lexicon.entries()) tagger_.add_default(word, PosTag::JJ);
  }

  TableTagger base_tags_;
  TableTagger tagger_;
};

/// Labeled topics as SVM training rows; unlabeled topics are skipped.
inline std::vector<LabeledVector> vectorize(std::span<const Topic> topics, const FeatureExtractor& fx) {
  std::vector<LabeledVector> out;
  out.reserve(topics.size());
  for (const auto& t : topics) {
    if (!t.label) continue;
    out.push_back(LabeledVector{fx.extract(t), *t.label == Polarity::PO ? 1 : -1, t.id});
  }
  return out;
}

/// Rounds every value to what an SVM-light file would hold, so that training
/// from an extracted file and training in memory see identical inputs.
inline std::vector<LabeledVector> at_file_precision(std::vector<LabeledVector> rows) {
  for (auto& row : rows) {
    for (auto& [slot, v] : row.vector.values) v = std::stod(format_value(v));
  }
  return rows;
}

struct TopicPrediction {
  std::string id;
  Prediction prediction;
};

inline std::vector<TopicPrediction> predict_topics(const Model& model, std::span<const Topic> topics,
                                                   const FeatureExtractor& fx) {
  std::vector<TopicPrediction> out;
  out.reserve(topics.size());
  for (const auto& t : topics) out.push_back(TopicPrediction{t.id, predict(model, fx.extract(t))});
  return out;
}

struct EvaluationRun {
  CorpusSplit split;
  Model model;
  std::vector<TopicPrediction> predictions;  // over split.test
  EvaluationReport report;
};

/// Split, train on the train part, predict and report on the test part.
inline EvaluationRun run_evaluation(std::span<const Topic> corpus, const Resources& res,
                                    const SplitSpec& split_spec, const TrainConfig& train_config) {
  EvaluationRun run;
  run.split = split_corpus(corpus, split_spec);
  const FeatureExtractor fx = res.extractor();
  run.model = train(at_file_precision(vectorize(run.split.train, fx)), train_config);
  run.predictions = predict_topics(run.model, run.split.test, fx);
  std::vector<int> labels;
  labels.reserve(run.predictions.size());
  for (const auto& p : run.predictions) labels.push_back(p.prediction.label);
  run.report = build_report(run.split.test, labels);
  return run;
}

}  // namespace arsenti
