#pragma once

// Binary linear max-margin classifier: L2-regularized hinge loss minimized by
// seeded stochastic subgradient descent over the feature schema.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "arsenti/errors.hpp"
#include "arsenti/features.hpp"
#include "arsenti/svmlight.hpp"
#include "arsenti/text_io.hpp"

namespace arsenti {

struct TrainConfig {
  double regularization = 1e-2;
  int epochs = 200;
  std::uint64_t seed = 42;
  bool scaling = false;  // divide each slot by its training max |value|

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

struct Model {
  std::vector<double> weights = std::vector<double>(schema::kSlotCount, 0.0);  // slot i at [i-1]
  double bias = 0.0;
  int schema_version = schema::kVersion;
  TrainConfig config;
  std::vector<double> scale;  // per-slot divisor; empty when scaling is off

  friend bool operator==(const Model&, const Model&) = default;
};

struct Prediction {
  int label = 1;
  double margin = 0.0;
};

namespace detail {

/// splitmix64: small, fully specified generator so shuffles are identical on
/// every standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  /// Uniform integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return r % bound;
  }

 private:
  std::uint64_t state_;
};

template <class T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[static_cast<std::size_t>(rng.below(i))]);
  }
}

inline std::vector<double> densify(const FeatureVector& v, std::span<const double> scale) {
  std::vector<double> x(schema::kSlotCount, 0.0);
  for (const auto& [slot, value] : v.values) {
    if (slot < 1 || slot > static_cast<int>(schema::kSlotCount)) {
      throw SchemaMismatch("feature index " + std::to_string(slot) + " outside the " +
                           std::to_string(schema::kSlotCount) + "-slot schema");
    }
    const double s = scale.empty() ? 1.0 : scale[slot - 1];
    x[slot - 1] = value / s;
  }
  return x;
}

inline double dot(std::span<const double> w, std::span<const double> x) {
  double s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * x[i];
  return s;
}

}  // namespace detail

/// lambda/2 |w|^2 + mean hinge loss over the (already scaled) dense rows.
inline double svm_objective(std::span<const double> w, double b,
                            std::span<const std::vector<double>> xs, std::span<const int> ys,
                            double lambda) {
  double loss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    loss += std::max(0.0, 1.0 - ys[i] * (detail::dot(w, xs[i]) + b));
  }
  return 0.5 * lambda * detail::dot(w, w) + loss / static_cast<double>(xs.size());
}

struct TrainResult {
  Model model;
  std::vector<double> objective;  // [0] at w = 0, then after each epoch
};

/// Step size eta_t = 1 / (lambda (t + t0)) with t0 = 1 / lambda: the first
/// step is 1 and later ones decay like 1/t. The bias is unregularized.
inline TrainResult train_traced(std::span<const LabeledVector> data, const TrainConfig& config = {}) {
  if (data.empty()) throw EmptyTrainingSet();
  if (config.regularization <= 0) throw Error("regularization must be positive");
  if (config.epochs < 0) throw Error("epochs must be non-negative");
  const int version = data.front().vector.schema_version;
  bool pos = false, neg = false;
  for (const auto& lv : data) {
    if (lv.vector.schema_version != version) throw SchemaMismatch("mixed schema versions in training set");
    if (lv.label != 1 && lv.label != -1) throw Error("labels must be +1 or -1");
    (lv.label > 0 ? pos : neg) = true;
  }
  if (!pos || !neg) throw SingleClassTrainingSet();

  TrainResult result;
  Model& m = result.model;
  m.schema_version = version;
  m.config = config;
  if (config.scaling) {
    m.scale.assign(schema::kSlotCount, 0.0);
    for (const auto& lv : data) {
      for (const auto& [slot, value] : lv.vector.values) {
        if (slot >= 1 && slot <= static_cast<int>(schema::kSlotCount)) {
          m.scale[slot - 1] = std::max(m.scale[slot - 1], std::fabs(value));
        }
      }
    }
    for (double& s : m.scale) {
      if (s == 0.0) s = 1.0;
    }
  }

  std::vector<std::vector<double>> xs;
  std::vector<int> ys;
  xs.reserve(data.size());
  for (const auto& lv : data) {
    xs.push_back(detail::densify(lv.vector, m.scale));
    ys.push_back(lv.label);
  }

  const double lambda = config.regularization;
  const double t0 = 1.0 / lambda;
  std::vector<double>& w = m.weights;
  double& b = m.bias;
  result.objective.push_back(svm_objective(w, b, xs, ys, lambda));

  detail::SplitMix64 rng(config.seed);
  std::vector<std::size_t> order(xs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  double t = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    detail::shuffle(order, rng);
    for (std::size_t i : order) {
      const double eta = 1.0 / (lambda * (t + t0));
      t += 1;
      const double margin = ys[i] * (detail::dot(w, xs[i]) + b);
      const double shrink = 1.0 - eta * lambda;
      for (double& wj : w) wj *= shrink;
      if (margin < 1.0) {
        for (std::size_t j = 0; j < w.size(); ++j) w[j] += eta * ys[i] * xs[i][j];
        b += eta * ys[i];
      }
    }
    result.objective.push_back(svm_objective(w, b, xs, ys, lambda));
  }
  return result;
}

inline Model train(std::span<const LabeledVector> data, const TrainConfig& config = {}) {
  return train_traced(data, config).model;
}

/// margin = w.x + b; a zero margin is labeled +1.
inline Prediction predict(const Model& model, const FeatureVector& v) {
  if (v.schema_version != model.schema_version) {
    throw SchemaMismatch("vector schema " + std::to_string(v.schema_version) + " vs model schema " +
                         std::to_string(model.schema_version));
  }
  const auto x = detail::densify(v, model.scale);
  const double margin = detail::dot(model.weights, x) + model.bias;
  return Prediction{margin >= 0 ? 1 : -1, margin};
}

inline double training_accuracy(const Model& model, std::span<const LabeledVector> data) {
  if (data.empty()) return 0.0;
  std::size_t ok = 0;
  for (const auto& lv : data) ok += predict(model, lv.vector).label == lv.label;
  return static_cast<double>(ok) / static_cast<double>(data.size());
}

/// Best (regularization, epochs) pair by accuracy on `dev`; ties keep the
/// earliest grid point.
inline TrainConfig grid_search(std::span<const LabeledVector> train_set,
                               std::span<const LabeledVector> dev_set,
                               std::span<const double> regularizations, std::span<const int> epochs,
                               TrainConfig base = {}) {
  TrainConfig best = base;
  double best_acc = -1;
  for (double reg : regularizations) {
    for (int ep : epochs) {
      TrainConfig cfg = base;
      cfg.regularization = reg;
      cfg.epochs = ep;
      const double acc = training_accuracy(train(train_set, cfg), dev_set);
      if (acc > best_acc) {
        best_acc = acc;
        best = cfg;
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Model file
// ---------------------------------------------------------------------------

namespace detail {
inline std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace detail

inline std::string format_model(const Model& m) {
  std::string out = "# arsenti linear model\n";
  out += "schema_version " + std::to_string(m.schema_version) + '\n';
  out += "regularization " + detail::exact(m.config.regularization) + '\n';
  out += "epochs " + std::to_string(m.config.epochs) + '\n';
  out += "seed " + std::to_string(m.config.seed) + '\n';
  out += std::string("scaling ") + (m.config.scaling ? "1" : "0") + '\n';
  for (std::size_t i = 0; i < m.scale.size(); ++i) {
    out += "scale " + std::to_string(i + 1) + ':' + detail::exact(m.scale[i]) + '\n';
  }
  for (std::size_t i = 0; i < m.weights.size(); ++i) {
    out += std::to_string(i + 1) + ':' + detail::exact(m.weights[i]) + '\n';
  }
  out += "bias:" + detail::exact(m.bias) + '\n';
  return out;
}

inline void save_model(const Model& m, const std::filesystem::path& path) {
  io::write_file(path, format_model(m));
}

inline Model parse_model(std::string_view content, const std::string& source) {
  Model m;
  m.weights.assign(schema::kSlotCount, 0.0);
  bool have_bias = false;
  const auto lines = io::split_lines(content);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string_view line = io::trim(lines[ln]);
    if (line.empty() || line.front() == '#') continue;
    const auto fail = [&](const std::string& r) { return ParseError(source, ln + 1, r); };
    const auto num = [&](std::string_view s, auto& out) {
      s = io::trim(s);
      const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      if (ec != std::errc() || p != s.data() + s.size()) throw fail("invalid number '" + std::string(s) + "'");
    };
    const auto space = line.find(' ');
    const std::string_view key = line.substr(0, space);
    const std::string_view rest = space == std::string_view::npos ? "" : line.substr(space + 1);
    if (key == "schema_version") {
      num(rest, m.schema_version);
    } else if (key == "regularization") {
      num(rest, m.config.regularization);
    } else if (key == "epochs") {
      num(rest, m.config.epochs);
    } else if (key == "seed") {
      num(rest, m.config.seed);
    } else if (key == "scaling") {
      int s = 0;
      num(rest, s);
      m.config.scaling = s != 0;
    } else if (key == "scale") {
      const auto colon = rest.find(':');
      if (colon == std::string_view::npos) throw fail("expected scale slot:value");
      int slot = 0;
      double v = 0;
      num(rest.substr(0, colon), slot);
      num(rest.substr(colon + 1), v);
      if (slot < 1 || slot > static_cast<int>(schema::kSlotCount)) throw fail("scale slot out of range");
      if (m.scale.empty()) m.scale.assign(schema::kSlotCount, 1.0);
      m.scale[slot - 1] = v;
    } else if (line.substr(0, 5) == "bias:") {
      num(line.substr(5), m.bias);
      have_bias = true;
    } else {
      const auto colon = line.find(':');
      if (colon == std::string_view::npos) throw fail("unrecognized line");
      int slot = 0;
      double v = 0;
      num(line.substr(0, colon), slot);
      num(line.substr(colon + 1), v);
      if (slot < 1 || slot > static_cast<int>(schema::kSlotCount)) throw fail("weight slot out of range");
      m.weights[slot - 1] = v;
    }
  }
  if (!have_bias) throw ParseError(source, lines.size(), "missing bias line");
  return m;
}

inline Model load_model(const std::filesystem::path& path) {
  return parse_model(io::read_file(path), path.string());
}

}  // namespace arsenti
