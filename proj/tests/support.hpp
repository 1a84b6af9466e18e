#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "superweil/superweil.hpp"

namespace testing {

using superweil::Expr;
using superweil::Rational;

using E = superweil::Element<Rational>;
using Ed = superweil::Element<double>;

inline superweil::AlgebraPtr alg(const superweil::AlgebraDescriptor& d) { return superweil::make_algebra(d); }

inline E scalar(const superweil::AlgebraPtr& a, long v) { return E::scalar(a, Rational(v)); }
inline E theta(const superweil::AlgebraPtr& a, unsigned j) { return E::odd_generator(a, j); }
inline E xgen(const superweil::AlgebraPtr& a, unsigned i) { return E::even_generator(a, i); }

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Two expressions agree at a fixed spread of sample points.
inline bool same_function(const Expr& a, const Expr& b, unsigned p, double tol = 1e-12) {
  const double samples[] = {-1.3, -0.4, 0.0, 0.7, 1.9};
  std::vector<double> x(p);
  for (double s : samples) {
    for (unsigned i = 0; i < p; ++i) x[i] = s + 0.31 * i;
    if (!rel_close(superweil::evaluate(a, x), superweil::evaluate(b, x), tol)) return false;
  }
  return true;
}

inline bool same_section(const superweil::Section& a, const superweil::Section& b, double tol = 1e-12) {
  const auto& d = a.domain();
  for (std::uint64_t J = 0; J < (std::uint64_t{1} << d.odd_dim); ++J)
    if (!same_function(a.component(superweil::OddIndexSet{J}), b.component(superweil::OddIndexSet{J}), d.even_dim, tol))
      return false;
  return true;
}

}  // namespace testing
