#pragma once

// Command-line front end. `run` is kept separate from main() so tests can
// drive it with in-memory streams.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arsenti/arsenti.hpp"

namespace arsenti::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

namespace fs = std::filesystem;

struct RunConfig {
  std::string resources_dir;
  std::string lexicon, idioms, negators, intensifiers, questions, wishful, stopwords, tags;
  std::uint64_t seed = 42;
  double regularization = 1e-2;
  int epochs = 200;
  bool scaling = false;
  bool no_stratify = false;
};

/// Raised for configuration problems that should exit with the usage code.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::optional<fs::path> resolve(const std::string& explicit_path, const std::string& dir,
                                       const char* default_name) {
  if (!explicit_path.empty()) {
    if (!fs::exists(explicit_path)) throw IoError("missing file: " + explicit_path);
    return fs::path(explicit_path);
  }
  if (!dir.empty() && fs::exists(fs::path(dir) / default_name)) return fs::path(dir) / default_name;
  return std::nullopt;
}

inline ResourcePaths resource_paths(const RunConfig& c) {
  ResourcePaths p;
  p.lexicon = resolve(c.lexicon, c.resources_dir, "lexicon.tsv");
  p.idioms = resolve(c.idioms, c.resources_dir, "idioms.tsv");
  p.negators = resolve(c.negators, c.resources_dir, "negators.txt");
  p.intensifiers = resolve(c.intensifiers, c.resources_dir, "intensifiers.txt");
  p.questions = resolve(c.questions, c.resources_dir, "questions.txt");
  p.wishful = resolve(c.wishful, c.resources_dir, "wishful.txt");
  p.stopwords = resolve(c.stopwords, c.resources_dir, "stopwords.txt");
  p.tags = resolve(c.tags, c.resources_dir, "tags.tsv");
  return p;
}

inline Resources load_resources(const RunConfig& c) {
  const ResourcePaths paths = resource_paths(c);
  if (!paths.lexicon) throw UsageError("a sentiment lexicon is required (--lexicon or --resources)");
  return Resources::load(paths);
}

inline void require_exists(const std::string& path) {
  if (!fs::exists(path)) throw IoError("missing file: " + path);
}

inline std::string format_prediction(const std::string& id, const Prediction& p) {
  char margin[48];
  std::snprintf(margin, sizeof margin, "%.6f", p.margin);
  return id + '\t' + (p.label > 0 ? "PO" : "NG") + '\t' + margin + '\n';
}

inline TrainConfig train_config(const RunConfig& c) {
  return TrainConfig{c.regularization, c.epochs, c.seed, c.scaling};
}

inline void write_or_print(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    io::write_file(path, content);
  }
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Lexicon-based sentiment analysis for Modern Standard Arabic and Egyptian dialect",
               "arsenti"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML-style key = value file; flags override it");

  RunConfig cfg;
  app.add_option("--resources", cfg.resources_dir,
                 "Directory holding lexicon.tsv, idioms.tsv, cue lists, stopwords.txt, tags.tsv");
  app.add_option("--lexicon", cfg.lexicon, "Sentiment lexicon TSV");
  app.add_option("--idioms", cfg.idioms, "Idiom lexicon TSV");
  app.add_option("--negators", cfg.negators, "Negation terms, one per line");
  app.add_option("--intensifiers", cfg.intensifiers, "Intensifier terms, one per line");
  app.add_option("--questions", cfg.questions, "Question terms, one per line");
  app.add_option("--wishful", cfg.wishful, "Supplication/wishful terms, one per line");
  app.add_option("--stopwords", cfg.stopwords, "Stopword list, one per line");
  app.add_option("--tags", cfg.tags, "POS tag table, word<TAB>tag");
  app.add_option("--seed", cfg.seed, "Seed for splitting and training")->capture_default_str();
  app.add_option("--regularization", cfg.regularization, "L2 regularization strength")
      ->capture_default_str();
  app.add_option("--epochs", cfg.epochs, "Training epochs")->capture_default_str();
  app.add_flag("--scaling", cfg.scaling, "Scale each feature by its training maximum");
  app.add_flag("--no-stratify", cfg.no_stratify, "Do not keep genre proportions when splitting");

  // normalize
  std::string normalize_input;
  auto* normalize = app.add_subcommand("normalize", "Print normalized text");
  normalize->add_option("input", normalize_input, "Input file, or - for stdin")->required();

  // expand
  std::string expand_corpus, expand_provider, expand_out, expand_pending, expand_cache;
  bool expand_interactive = false;
  auto* expand = app.add_subcommand("expand", "Grow the lexicon from a corpus via a synonym provider");
  expand->add_option("--corpus", expand_corpus, "Corpus TSV")->required();
  expand->add_option("--provider", expand_provider, "Synonym fixture TSV")->required();
  expand->add_option("--out", expand_out, "Write the grown lexicon here instead of in place");
  expand->add_option("--pending", expand_pending, "Append unresolved review items to this file");
  expand->add_option("--cache", expand_cache, "File-backed cache in front of the provider");
  expand->add_flag("--interactive", expand_interactive, "Ask about out-of-vocabulary words on stdin");

  // extract
  std::string extract_corpus, extract_out;
  auto* extract = app.add_subcommand("extract", "Write SVM-light feature vectors for labeled topics");
  extract->add_option("--corpus", extract_corpus, "Corpus TSV")->required();
  extract->add_option("--out", extract_out, "Output SVM-light file")->required();

  // train
  std::string train_features, train_model;
  auto* train_cmd = app.add_subcommand("train", "Train a linear model on SVM-light vectors");
  train_cmd->add_option("--features", train_features, "SVM-light training file")->required();
  train_cmd->add_option("--model", train_model, "Output model file")->required();

  // predict
  std::string predict_model, predict_corpus, predict_out;
  auto* predict_cmd = app.add_subcommand("predict", "Label topics with a trained model");
  predict_cmd->add_option("--model", predict_model, "Model file")->required();
  predict_cmd->add_option("--corpus", predict_corpus, "Corpus TSV")->required();
  predict_cmd->add_option("--out", predict_out, "Write id, label, margin here instead of stdout");

  // evaluate
  std::string eval_corpus, eval_model, eval_split_dir, eval_predictions;
  bool eval_json = false, eval_tune = false;
  auto* evaluate = app.add_subcommand("evaluate", "Split 80/10/10, train, and report test metrics");
  evaluate->add_option("--corpus", eval_corpus, "Labeled corpus TSV")->required();
  evaluate->add_option("--model", eval_model, "Also write the trained model here");
  evaluate->add_option("--split-dir", eval_split_dir, "Write train.tsv, dev.tsv, test.tsv here");
  evaluate->add_option("--predictions", eval_predictions, "Write test-set predictions here");
  evaluate->add_flag("--json", eval_json, "Print the report as JSON");
  evaluate->add_flag("--tune", eval_tune, "Pick regularization and epochs on the dev split");

  // kappa
  std::string kappa_ratings;
  auto* kappa = app.add_subcommand("kappa", "Inter-annotator agreement (mean pairwise Cohen kappa)");
  kappa->add_option("--ratings", kappa_ratings, "One item per line, tab-separated labels per rater")
      ->required();

  // score
  std::string score_corpus;
  auto* score = app.add_subcommand("score", "Rule-based net score baseline");
  score->add_option("--corpus", score_corpus, "Corpus TSV")->required();

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    if (args.empty()) {
      err << app.help();
      return kExitUsage;
    }
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto sub = app.get_subcommands();
    err << (sub.empty() ? app.help() : sub.front()->help());
    return kExitUsage;
  }

  try {
    if (normalize->parsed()) {
      std::string text;
      if (normalize_input == "-") {
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
      } else {
        text = io::read_file(normalize_input);
      }
      out << normalize_text(text) << '\n';
      return kExitOk;
    }

    if (kappa->parsed()) {
      detail::require_exists(kappa_ratings);
      const auto raters = load_ratings(kappa_ratings);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6f", cohen_kappa(raters));
      out << "raters\t" << raters.size() << "\nitems\t" << (raters.empty() ? 0 : raters[0].size())
          << "\nkappa\t" << buf << '\n';
      return kExitOk;
    }

    if (train_cmd->parsed()) {
      detail::require_exists(train_features);
      const auto data = read_svmlight(train_features);
      save_model(train(data, detail::train_config(cfg)), train_model);
      return kExitOk;
    }

    if (expand->parsed()) {
      detail::require_exists(expand_corpus);
      detail::require_exists(expand_provider);
      const ResourcePaths paths = detail::resource_paths(cfg);
      if (!paths.lexicon) throw UsageError("expand needs --lexicon");
      Resources res = Resources::load(paths);
      const auto corpus = load_corpus(expand_corpus);
      FixtureSynsetProvider fixture = FixtureSynsetProvider::from_file(expand_provider);
      std::optional<CachingSynsetProvider> cached;
      SynsetProvider* provider = &fixture;
      if (!expand_cache.empty()) provider = &cached.emplace(fixture, expand_cache);
      StreamReviewer reviewer(in, out);
      ExpansionOptions opts;
      opts.mode = expand_interactive ? ExpansionMode::Interactive : ExpansionMode::Batch;
      opts.reviewer = &reviewer;
      opts.stopwords = &res.stopwords;
      if (!expand_pending.empty()) opts.pending_file = expand_pending;
      const auto result = expand_lexicon(corpus, res.lexicon, *provider, res.tagger(), opts);
      save_sentiment_lexicon(result.lexicon, expand_out.empty() ? *paths.lexicon : fs::path(expand_out));
      out << format_report(result.report);
      return kExitOk;
    }

    if (extract->parsed()) {
      detail::require_exists(extract_corpus);
      const Resources res = detail::load_resources(cfg);
      const auto corpus = load_corpus(extract_corpus);
      const auto rows = vectorize(corpus, res.extractor());
      if (rows.size() < corpus.size()) {
        err << "note: skipped " << corpus.size() - rows.size() << " unlabeled topic(s)\n";
      }
      write_svmlight(rows, extract_out);
      return kExitOk;
    }

    if (predict_cmd->parsed()) {
      detail::require_exists(predict_model);
      detail::require_exists(predict_corpus);
      const Resources res = detail::load_resources(cfg);
      const Model model = load_model(predict_model);
      const auto corpus = load_corpus(predict_corpus);
      std::string buf;
      for (const auto& p : predict_topics(model, corpus, res.extractor())) {
        buf += detail::format_prediction(p.id, p.prediction);
      }
      detail::write_or_print(predict_out, buf, out);
      return kExitOk;
    }

    if (evaluate->parsed()) {
      detail::require_exists(eval_corpus);
      const Resources res = detail::load_resources(cfg);
      const auto corpus = load_corpus(eval_corpus);
      SplitSpec spec;
      spec.seed = cfg.seed;
      spec.stratify = !cfg.no_stratify;
      TrainConfig tc = detail::train_config(cfg);
      if (eval_tune) {
        const auto split = split_corpus(corpus, spec);
        const auto fx = res.extractor();
        const double regs[] = {1e-3, 1e-2, 1e-1};
        const int epochs[] = {50, 200};
        tc = grid_search(at_file_precision(vectorize(split.train, fx)), vectorize(split.dev, fx), regs, epochs,
                         tc);
        err << "tuned: regularization " << tc.regularization << ", epochs " << tc.epochs << '\n';
      }
      const EvaluationRun run = run_evaluation(corpus, res, spec, tc);
      if (!eval_model.empty()) save_model(run.model, eval_model);
      if (!eval_split_dir.empty()) {
        fs::create_directories(eval_split_dir);
        save_corpus(run.split.train, fs::path(eval_split_dir) / "train.tsv");
        save_corpus(run.split.dev, fs::path(eval_split_dir) / "dev.tsv");
        save_corpus(run.split.test, fs::path(eval_split_dir) / "test.tsv");
      }
      if (!eval_predictions.empty()) {
        std::string buf;
        for (const auto& p : run.predictions) buf += detail::format_prediction(p.id, p.prediction);
        io::write_file(eval_predictions, buf);
      }
      if (eval_json) {
        out << report_json(run.report).dump(2) << '\n';
      } else {
        out << format_report_text(run.report);
      }
      return kExitOk;
    }

    if (score->parsed()) {
      detail::require_exists(score_corpus);
      const Resources res = detail::load_resources(cfg);
      const auto corpus = load_corpus(score_corpus);
      const auto fx = res.extractor();
      std::size_t labeled = 0, agree = 0;
      for (const auto& t : corpus) {
        const RuleScore r = fx.rule_score(t);
        char net[32];
        std::snprintf(net, sizeof net, "%g", r.net);
        out << t.id << '\t' << net << '\t' << to_string(r.label) << '\n';
        if (t.label) {
          ++labeled;
          agree += r.label == *t.label;
        }
      }
      if (labeled > 0) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "# agreement %.6f (%zu/%zu)\n",
                      static_cast<double>(agree) / static_cast<double>(labeled), agree, labeled);
        out << buf;
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace arsenti::cli
