#pragma once

#include <string>
#include <vector>

#include "superweil/apoint.hpp"
#include "superweil/distribution.hpp"
#include "superweil/element.hpp"
#include "superweil/naturality.hpp"
#include "superweil/supermorphism.hpp"
#include "superweil/transit.hpp"

namespace superweil {

/// Element literal in canonical basis order, e.g. "9 + 6*x1^1" or "1*t1 t2".
template <class S>
std::string format_element(const Element<S>& e) {
  using T = ScalarTraits<S>;
  std::string out;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (T::is_zero(e[k])) continue;
    std::string coeff = T::to_string(e[k]);
    bool negative = !coeff.empty() && coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    if (out.empty())
      out = negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += coeff;
    if (k != 0) out += "*" + e.algebra()->label(k);
  }
  return out.empty() ? "0" : out;
}

inline std::string format_tuple(const EvenMultiIndex& nu) {
  std::string out = "(";
  for (std::size_t i = 0; i < nu.size(); ++i) out += (i ? "," : "") + std::to_string(nu[i]);
  return out + ")";
}

template <class S>
std::string format_scalars(const std::vector<S>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + ScalarTraits<S>::to_string(xs[i]);
  return out;
}

/// Point file form: `algebra:` header and one line per coordinate.
template <class S>
std::string format_point(const APoint<S>& x) {
  std::string out = "algebra: " + x.algebra()->descriptor().to_string() + "\n";
  for (std::size_t i = 0; i < x.even_values().size(); ++i)
    out += "x" + std::to_string(i + 1) + " = " + format_element(x.even_values()[i]) + "\n";
  for (std::size_t j = 0; j < x.odd_values().size(); ++j)
    out += "t" + std::to_string(j + 1) + " = " + format_element(x.odd_values()[j]) + "\n";
  return out;
}

/// Distribution file form.
template <class S>
std::string format_distribution(const Distribution<S>& v) {
  std::string out = "support: " + format_scalars(v.support) + "\n";
  out += "odd: " + std::to_string(v.domain.odd_dim) + "\n";
  for (const auto& [m, a] : v.coefficients)
    out += "nu=" + format_tuple(m.even) + " J=" + to_string(m.odd) + " a=" + ScalarTraits<S>::to_string(a) + "\n";
  return out;
}

/// Series file form.
inline std::string format_series(const FormalSeriesFamily& F) {
  std::string out = "source: " + F.source().to_string() + "\ntarget: " + F.target().to_string() +
                    "\norder: " + std::to_string(F.order()) + "\n";
  for (std::size_t k = 0; k < F.coefficients().size(); ++k)
    for (const auto& [m, f] : F.coefficients()[k])
      out += "k=" + std::to_string(k + 1) + " nu=" + format_tuple(m.even) + " J=" + to_string(m.odd) + ": " +
             to_string(f) + "\n";
  return out;
}

/// Pullbacks of the target coordinates, each as indented section lines.
inline std::string format_pullbacks(const SuperdomainMorphism& phi) {
  std::string out;
  const auto& tgt = phi.target();
  for (std::size_t k = 0; k < phi.pullbacks().size(); ++k) {
    std::string name = k < tgt.even_dim ? "x" + std::to_string(k + 1) : "t" + std::to_string(k - tgt.even_dim + 1);
    out += "pullback of " + name + ":\n";
    const auto& s = phi.pullback(k);
    if (s.is_zero()) out += "  {}: 0\n";
    for (const auto& [J, e] : s.components()) out += "  " + to_string(J) + ": " + to_string(e) + "\n";
  }
  return out;
}

/// Transit file form for a classical Weil point.
template <class S>
std::string format_transit(const ClassicalWeilPoint<S>& X) {
  const FlatChart& c = X.chart;
  std::string out = "weil: " + c.algebra->descriptor().to_string() + "\nalgebra: " +
                    X.point.algebra()->descriptor().to_string() + "\ndomain: " + c.source.to_string() + "\n";
  const unsigned p = c.source.even_dim;
  for (std::size_t k = 0; k < c.slots.size(); ++k) {
    const auto [coord, b] = c.slots[k];
    std::string name = coord < p ? "x" + std::to_string(coord + 1) : "t" + std::to_string(coord - p + 1);
    out += name + "[" + c.algebra->label(b) + "] = " + format_element(X.point.even_values()[k]) + "\n";
  }
  return out;
}

}  // namespace superweil
