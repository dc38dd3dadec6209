#pragma once

// SVM-light sparse vector files: `<label> <index>:<value> ... # <comment>`.
// A `# schema_version N` line before the first record tags the vectors.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arsenti/errors.hpp"
#include "arsenti/features.hpp"
#include "arsenti/text_io.hpp"

namespace arsenti {

struct LabeledVector {
  FeatureVector vector;
  int label = 1;  // +1 (PO) or -1 (NG)
  std::optional<std::string> comment;

  friend bool operator==(const LabeledVector&, const LabeledVector&) = default;
};

/// Integers print without a decimal point; everything else with up to six
/// significant digits.
inline std::string format_value(double v) {
  char buf[32];
  if (std::nearbyint(v) == v && std::fabs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.6g", v);
  }
  return buf;
}

inline std::string format_svmlight_line(const LabeledVector& lv) {
  std::string line = lv.label > 0 ? "+1" : "-1";
  int prev = 0;
  for (const auto& [index, value] : lv.vector.values) {
    if (index <= prev) throw Error("feature indices must be strictly increasing");
    prev = index;
    if (value == 0.0) continue;
    line += ' ';
    line += std::to_string(index);
    line += ':';
    line += format_value(value);
  }
  if (lv.comment) {
    line += " # ";
    line += io::escape_field(*lv.comment);
  }
  return line;
}

inline std::string format_svmlight(std::span<const LabeledVector> data) {
  std::string out;
  if (!data.empty()) {
    out += "# schema_version " + std::to_string(data.front().vector.schema_version) + '\n';
  }
  for (const auto& lv : data) {
    out += format_svmlight_line(lv);
    out += '\n';
  }
  return out;
}

inline void write_svmlight(std::span<const LabeledVector> data, const std::filesystem::path& path) {
  io::write_file(path, format_svmlight(data));
}

inline std::vector<LabeledVector> parse_svmlight(std::string_view content, const std::string& source) {
  std::vector<LabeledVector> out;
  int schema_version = schema::kVersion;
  const auto lines = io::split_lines(content);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view line = lines[ln];
    const auto fail = [&](const std::string& reason) { return ParseError(source, ln + 1, reason); };

    std::optional<std::string> comment;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      const std::string_view c = io::trim(line.substr(hash + 1));
      line = line.substr(0, hash);
      if (io::trim(line).empty()) {
        // Whole-line comment; may carry the schema version.
        constexpr std::string_view key = "schema_version";
        if (c.substr(0, key.size()) == key) {
          const std::string_view num = io::trim(c.substr(key.size()));
          const auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), schema_version);
          if (ec != std::errc() || p != num.data() + num.size()) throw fail("bad schema_version");
        }
        continue;
      }
      comment = std::string(c);
    }

    std::vector<std::string_view> fields;
    for (std::size_t i = 0; i < line.size();) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      if (j > i) fields.push_back(line.substr(i, j - i));
      i = j;
    }
    if (fields.empty()) continue;

    LabeledVector lv;
    lv.comment = std::move(comment);
    lv.vector.schema_version = schema_version;
    const std::string_view label = fields[0];
    if (label == "+1" || label == "1") {
      lv.label = 1;
    } else if (label == "-1") {
      lv.label = -1;
    } else {
      throw fail("missing or invalid label '" + std::string(label) + "'");
    }
    int prev = 0;
    for (std::size_t f = 1; f < fields.size(); ++f) {
      const std::string_view pair = fields[f];
      const auto colon = pair.find(':');
      if (colon == std::string_view::npos) throw fail("expected index:value, got '" + std::string(pair) + "'");
      int index = 0;
      const auto ir = std::from_chars(pair.data(), pair.data() + colon, index);
      if (ir.ec != std::errc() || ir.ptr != pair.data() + colon || index < 1) {
        throw fail("invalid index in '" + std::string(pair) + "'");
      }
      double value = 0;
      const char* vb = pair.data() + colon + 1;
      const char* ve = pair.data() + pair.size();
      if (*vb == '+') ++vb;
      const auto vr = std::from_chars(vb, ve, value);
      if (vr.ec != std::errc() || vr.ptr != ve || !std::isfinite(value)) {
        throw fail("invalid value in '" + std::string(pair) + "'");
      }
      if (index <= prev) throw fail("indices not strictly increasing at " + std::to_string(index));
      prev = index;
      lv.vector.set(index, value);
    }
    out.push_back(std::move(lv));
  }
  return out;
}

inline std::vector<LabeledVector> read_svmlight(const std::filesystem::path& path) {
  return parse_svmlight(io::read_file(path), path.string());
}

}  // namespace arsenti
