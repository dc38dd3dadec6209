#pragma once

#include <optional>
#include <string_view>

namespace arsenti {

enum class Polarity { PO, NG, NU };

inline std::string_view to_string(Polarity p) {
  switch (p) {
    case Polarity::PO: return "PO";
    case Polarity::NG: return "NG";
    case Polarity::NU: return "NU";
  }
  return "NU";
}

inline std::optional<Polarity> parse_polarity(std::string_view s) {
  if (s == "PO") return Polarity::PO;
  if (s == "NG") return Polarity::NG;
  if (s == "NU") return Polarity::NU;
  return std::nullopt;
}

/// PO <-> NG; NU is its own opposite.
inline Polarity flip(Polarity p) {
  switch (p) {
    case Polarity::PO: return Polarity::NG;
    case Polarity::NG: return Polarity::PO;
    case Polarity::NU: return Polarity::NU;
  }
  return Polarity::NU;
}

inline int sign_of(Polarity p) { return p == Polarity::PO ? 1 : p == Polarity::NG ? -1 : 0; }

}  // namespace arsenti
