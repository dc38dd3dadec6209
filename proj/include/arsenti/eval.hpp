#pragma once

// Corpus splitting, classification metrics and inter-annotator agreement.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "arsenti/classifier.hpp"
#include "arsenti/corpus.hpp"
#include "arsenti/errors.hpp"
#include "arsenti/polarity.hpp"
#include "arsenti/text_io.hpp"

namespace arsenti {

// ---------------------------------------------------------------------------
// Splitting
// ---------------------------------------------------------------------------

struct SplitSpec {
  double train_frac = 0.8;
  double dev_frac = 0.1;
  double test_frac = 0.1;
  std::uint64_t seed = 42;
  bool stratify = true;  // keep genre proportions in dev and test
};

struct CorpusSplit {
  std::vector<Topic> train;
  std::vector<Topic> dev;
  std::vector<Topic> test;
};

inline void validate(const SplitSpec& spec) {
  if (!(spec.train_frac > 0 && spec.dev_frac > 0 && spec.test_frac > 0)) {
    throw InvalidSplitSpec("split fractions must all be positive");
  }
  if (std::fabs(spec.train_frac + spec.dev_frac + spec.test_frac - 1.0) > 1e-9) {
    throw InvalidSplitSpec("split fractions must sum to 1");
  }
}

/// Floor each fraction of `n`, then hand leftover units to the splits in
/// declaration order (train, dev, test).
inline std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitSpec& spec) {
  validate(spec);
  const double fr[3] = {spec.train_frac, spec.dev_frac, spec.test_frac};
  std::array<std::size_t, 3> sizes{};
  std::size_t used = 0;
  for (int i = 0; i < 3; ++i) {
    sizes[i] = static_cast<std::size_t>(std::floor(fr[i] * static_cast<double>(n) + 1e-9));
    used += sizes[i];
  }
  for (std::size_t i = 0; used < n; i = (i + 1) % 3, ++used) ++sizes[i];
  return sizes;
}

namespace detail {

/// Largest-remainder apportionment of `total` units proportionally to
/// `weights`, never giving a group more than its cap. Ties go to the earlier group.
inline std::vector<std::size_t> apportion(std::size_t total, std::span<const std::size_t> weights,
                                          std::span<const std::size_t> caps) {
  std::size_t weight_sum = 0;
  for (auto w : weights) weight_sum += w;
  std::vector<std::size_t> out(weights.size(), 0);
  if (weight_sum == 0) return out;
  std::vector<double> frac(weights.size());
  std::size_t given = 0;
  for (std::size_t g = 0; g < weights.size(); ++g) {
    const double quota = static_cast<double>(total) * static_cast<double>(weights[g]) /
                         static_cast<double>(weight_sum);
    const auto fl = static_cast<std::size_t>(std::floor(quota + 1e-9));
    out[g] = std::min(fl, caps[g]);
    frac[g] = quota - static_cast<double>(fl);
    given += out[g];
  }
  std::vector<std::size_t> order(weights.size());
  for (std::size_t g = 0; g < order.size(); ++g) order[g] = g;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return frac[a] > frac[b]; });
  while (given < total) {
    bool progressed = false;
    for (std::size_t g : order) {
      if (given == total) break;
      if (out[g] < caps[g]) {
        ++out[g];
        ++given;
        progressed = true;
      }
    }
    if (!progressed) break;
  }
  return out;
}

}  // namespace detail

/// Seeded shuffle within each genre, then contiguous train/dev/test slices.
/// Overall sizes follow split_sizes exactly; dev and test are apportioned
/// across genres in proportion to the corpus.
inline CorpusSplit split_corpus(std::span<const Topic> corpus, const SplitSpec& spec) {
  validate(spec);
  const auto sizes = split_sizes(corpus.size(), spec);

  // Group key: genre index, with untagged topics last.
  std::map<int, std::vector<Topic>> groups;
  for (const auto& t : corpus) {
    const int key = spec.stratify && t.genre ? static_cast<int>(*t.genre) : spec.stratify ? 99 : 0;
    groups[key].push_back(t);
  }
  detail::SplitMix64 rng(spec.seed);
  std::vector<std::size_t> weights;
  for (auto& [key, topics] : groups) {
    detail::shuffle(topics, rng);
    weights.push_back(topics.size());
  }
  const auto test_k = detail::apportion(sizes[2], weights, weights);
  std::vector<std::size_t> dev_caps(weights.size());
  for (std::size_t g = 0; g < weights.size(); ++g) dev_caps[g] = weights[g] - test_k[g];
  const auto dev_k = detail::apportion(sizes[1], weights, dev_caps);

  CorpusSplit out;
  std::size_t g = 0;
  for (auto& [key, topics] : groups) {
    const std::size_t n_train = topics.size() - dev_k[g] - test_k[g];
    for (std::size_t i = 0; i < topics.size(); ++i) {
      auto& dst = i < n_train ? out.train : i < n_train + dev_k[g] ? out.dev : out.test;
      dst.push_back(std::move(topics[i]));
    }
    ++g;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

/// PO is the positive class.
struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const noexcept { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Undefined metrics (zero denominator) are absent rather than zero.
struct Metrics {
  std::optional<double> accuracy;
  std::optional<double> precision;
  std::optional<double> recall;
};

inline Metrics confusion_metrics(const ConfusionCounts& c) {
  Metrics m;
  if (c.total() > 0) m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  if (c.tp + c.fp > 0) m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  if (c.tp + c.fn > 0) m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  return m;
}

/// Harmonic mean 2pr / (p + r).
inline double f_measure(double precision, double recall) {
  if (precision + recall == 0.0) throw UndefinedMetric("F-measure undefined when precision + recall = 0");
  return 2.0 * precision * recall / (precision + recall);
}

inline ConfusionCounts tally(std::span<const int> gold, std::span<const int> predicted) {
  if (gold.size() != predicted.size()) throw Error("gold and predicted label counts differ");
  ConfusionCounts c;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool g = gold[i] > 0, p = predicted[i] > 0;
    if (g && p) ++c.tp;
    else if (!g && p) ++c.fp;
    else if (g && !p) ++c.fn;
    else ++c.tn;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Agreement
// ---------------------------------------------------------------------------

/// Two-rater Cohen kappa; 1.0 when chance agreement is already 1.
inline double cohen_kappa_pair(std::span<const Polarity> a, std::span<const Polarity> b) {
  if (a.size() != b.size()) throw Error("raters labeled different numbers of items");
  if (a.empty()) throw EmptyItems();
  const double n = static_cast<double>(a.size());
  std::map<Polarity, double> ca, cb;
  double agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    agree += a[i] == b[i];
    ca[a[i]] += 1;
    cb[b[i]] += 1;
  }
  const double p_o = agree / n;
  double p_e = 0;
  for (const auto& [label, count] : ca) {
    const auto it = cb.find(label);
    if (it != cb.end()) p_e += (count / n) * (it->second / n);
  }
  if (p_e >= 1.0) return 1.0;
  return (p_o - p_e) / (1.0 - p_e);
}

/// `raters[r][i]` is rater r's label for item i. More than two raters give the
/// mean of all pairwise kappas.
inline double cohen_kappa(std::span<const std::vector<Polarity>> raters) {
  if (raters.size() < 2) throw InsufficientRaters();
  if (raters.front().empty()) throw EmptyItems();
  double sum = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < raters.size(); ++i) {
    for (std::size_t j = i + 1; j < raters.size(); ++j) {
      sum += cohen_kappa_pair(raters[i], raters[j]);
      ++pairs;
    }
  }
  return sum / static_cast<double>(pairs);
}

/// Ratings file: one item per line, one tab-separated PO/NG/NU label per rater.
inline std::vector<std::vector<Polarity>> load_ratings(const std::filesystem::path& path) {
  std::vector<std::vector<Polarity>> raters;
  const auto lines = io::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = io::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto cols = io::split(line, '\t');
    if (raters.empty()) raters.resize(cols.size());
    if (cols.size() != raters.size()) {
      throw ParseError(path.string(), i + 1, "expected " + std::to_string(raters.size()) + " ratings");
    }
    for (std::size_t r = 0; r < cols.size(); ++r) {
      const auto p = parse_polarity(io::trim(cols[r]));
      if (!p) throw ParseError(path.string(), i + 1, "invalid rating '" + cols[r] + "'");
      raters[r].push_back(*p);
    }
  }
  return raters;
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

struct ReportRow {
  std::string name;
  ConfusionCounts counts;
  Metrics metrics;
  std::optional<double> f;
};

struct EvaluationReport {
  std::vector<ReportRow> rows;  // per genre, then "Total data"
};

inline std::string_view display_name(Genre g) {
  switch (g) {
    case Genre::Tweet: return "Tweets";
    case Genre::Hotel: return "Hotel res.";
    case Genre::Product: return "Product rev.";
    case Genre::Tv: return "TV prog. Comm.";
  }
  return "?";
}

inline ReportRow make_row(std::string name, const ConfusionCounts& c) {
  ReportRow row{std::move(name), c, confusion_metrics(c), std::nullopt};
  if (row.metrics.precision && row.metrics.recall && *row.metrics.precision + *row.metrics.recall > 0) {
    row.f = f_measure(*row.metrics.precision, *row.metrics.recall);
  }
  return row;
}

/// One row per genre present in `topics`, then the total. `predicted[i]` is
/// +1/-1 for `topics[i]`; topics without a gold label are skipped.
inline EvaluationReport build_report(std::span<const Topic> topics, std::span<const int> predicted) {
  if (topics.size() != predicted.size()) throw Error("prediction count does not match topics");
  std::map<int, std::pair<std::vector<int>, std::vector<int>>> by_genre;
  std::vector<int> all_gold, all_pred;
  for (std::size_t i = 0; i < topics.size(); ++i) {
    if (!topics[i].label) continue;
    const int g = *topics[i].label == Polarity::PO ? 1 : -1;
    all_gold.push_back(g);
    all_pred.push_back(predicted[i]);
    if (topics[i].genre) {
      auto& [gold, pred] = by_genre[static_cast<int>(*topics[i].genre)];
      gold.push_back(g);
      pred.push_back(predicted[i]);
    }
  }
  EvaluationReport report;
  for (const auto& [genre, gp] : by_genre) {
    report.rows.push_back(make_row(std::string(display_name(static_cast<Genre>(genre))),
                                   tally(gp.first, gp.second)));
  }
  report.rows.push_back(make_row("Total data", tally(all_gold, all_pred)));
  return report;
}

inline std::string format_report_text(const EvaluationReport& r) {
  const auto pct = [](const std::optional<double>& v) {
    if (!v) return std::string("n/a");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f%%", *v * 100.0);
    return std::string(buf);
  };
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %6s %12s %12s %12s %12s\n", "Data", "N", "Accuracy",
                "Precision", "Recall", "F-Measure");
  out += line;
  for (const auto& row : r.rows) {
    std::snprintf(line, sizeof line, "%-16s %6zu %12s %12s %12s %12s\n", row.name.c_str(),
                  row.counts.total(), pct(row.metrics.accuracy).c_str(),
                  pct(row.metrics.precision).c_str(), pct(row.metrics.recall).c_str(),
                  pct(row.f).c_str());
    out += line;
  }
  return out;
}

inline nlohmann::json report_json(const EvaluationReport& r) {
  const auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"data", row.name},
                    {"n", row.counts.total()},
                    {"tp", row.counts.tp},
                    {"fp", row.counts.fp},
                    {"fn", row.counts.fn},
                    {"tn", row.counts.tn},
                    {"accuracy", opt(row.metrics.accuracy)},
                    {"precision", opt(row.metrics.precision)},
                    {"recall", opt(row.metrics.recall)},
                    {"f_measure", opt(row.f)}});
  }
  return nlohmann::json{{"rows", rows}};
}

}  // namespace arsenti
