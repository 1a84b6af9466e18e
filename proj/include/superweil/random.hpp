#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "superweil/apoint.hpp"
#include "superweil/element.hpp"
#include "superweil/section.hpp"

namespace superweil {

/// Seeded generator with platform-independent draws (std distributions are
/// implementation-defined, so only the raw engine output is used).
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 1) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// n/d with |n| <= 5, 1 <= d <= 4.
inline Rational random_rational(Rng& rng, long max_num = 5, long max_den = 4) {
  const long num = rng.between(-max_num, max_num);
  const long den = rng.between(1, max_den);
  return make_rational(num, den);
}

/// A rational point strictly inside an open interval.
inline Rational random_rational_in(Rng& rng, const Interval& iv) {
  if (iv.bounded()) {
    Rational lo = rational_from_double(iv.lo), hi = rational_from_double(iv.hi);
    Rational t = make_rational(rng.between(1, 15), 16);
    return lo + (hi - lo) * t;
  }
  Rational offset = make_rational(rng.between(1, 16), 8);
  if (std::isfinite(iv.lo)) return rational_from_double(iv.lo) + offset;
  if (std::isfinite(iv.hi)) return rational_from_double(iv.hi) - offset;
  return make_rational(rng.between(-16, 16), 8);
}

inline double random_double_in(Rng& rng, const Interval& iv) {
  if (iv.bounded()) return iv.lo + (iv.hi - iv.lo) * (0.02 + 0.96 * rng.uniform());
  double offset = 0.05 + 2.0 * rng.uniform();
  if (std::isfinite(iv.lo)) return iv.lo + offset;
  if (std::isfinite(iv.hi)) return iv.hi - offset;
  return rng.uniform(-2.0, 2.0);
}

inline std::vector<double> random_point(Rng& rng, const Superdomain& dom) {
  std::vector<double> x;
  for (const auto& iv : dom.box) x.push_back(random_double_in(rng, iv));
  return x;
}

template <class S>
S random_scalar(Rng& rng) {
  return ScalarTraits<S>::from_rational(random_rational(rng));
}

/// Random element supported on basis elements of parity p, optionally with zero body.
template <class S>
Element<S> random_element(Rng& rng, const AlgebraPtr& a, Parity p, bool nilpotent = false) {
  Element<S> e(a);
  for (std::size_t k = 0; k < a->dim(); ++k) {
    if (a->parity(k) != p || (nilpotent && k == 0)) continue;
    if (rng.below(4) == 0) continue;
    e[k] = random_scalar<S>(rng);
  }
  return e;
}

template <class S>
Element<S> random_invertible(Rng& rng, const AlgebraPtr& a) {
  Element<S> e = random_element<S>(rng, a, Parity::even);
  Rational body = random_rational(rng);
  if (sgn(body) == 0) body = 1;
  e[0] = ScalarTraits<S>::from_rational(body);
  return e;
}

/// Random A-point: rational base point in the box plus random souls and odd values.
template <class S>
APoint<S> random_apoint(Rng& rng, const Superdomain& dom, const AlgebraPtr& a) {
  std::vector<Element<S>> even, odd;
  for (unsigned i = 0; i < dom.even_dim; ++i) {
    Element<S> v = random_element<S>(rng, a, Parity::even, true);
    v[0] = ScalarTraits<S>::from_rational(random_rational_in(rng, dom.box[i]));
    even.push_back(std::move(v));
  }
  for (unsigned j = 0; j < dom.odd_dim; ++j) odd.push_back(random_element<S>(rng, a, Parity::odd));
  return APoint<S>(dom, a, std::move(even), std::move(odd));
}

/// Random polynomial in x_1..x_p with total degree <= degree.
inline Expr random_polynomial(Rng& rng, unsigned p, unsigned degree, unsigned terms = 3) {
  Expr out(0);
  auto monomials = multi_indices_up_to(p, degree);
  for (unsigned t = 0; t < terms; ++t) {
    const auto& nu = monomials[rng.below(monomials.size())];
    Expr term(random_rational(rng));
    for (unsigned i = 0; i < p; ++i) term = term * pow(var(i), nu[i]);
    out = out + term;
  }
  return out;
}

/// Random smooth function defined on all of R^p.
inline Expr random_analytic(Rng& rng, unsigned p) {
  if (p == 0) return Expr(random_rational(rng));
  // Draws are sequenced explicitly so results do not depend on evaluation order.
  const Expr x = var(static_cast<unsigned>(rng.below(p)));
  const long num = rng.between(1, 6);
  const long den = rng.between(2, 4);
  const Expr c(make_rational(num, den));
  switch (rng.below(6)) {
    case 0:
      return exp(c * x) + random_polynomial(rng, p, 1, 2);
    case 1:
      return sin(x + c) * x;
    case 2:
      return cos(c * x) + exp(x * x * Expr(Rational(-1, 4)));
    case 3:
      return inv(Expr(2) + sin(x)) * c;
    case 4:
      return log(Expr(3) + cos(x)) + random_polynomial(rng, p, 2, 2);
    default:
      return exp(sin(x)) * cos(x);
  }
}

/// Homogeneous section with random coefficients on a random selection of theta^J.
inline Section random_section(Rng& rng, const Superdomain& dom, Parity parity, bool analytic, unsigned degree = 3) {
  Section s(dom);
  for (const auto& J : odd_subsets(dom.odd_dim, dom.odd_dim)) {
    if (J.parity() != parity || rng.below(3) == 0) continue;
    s.add_component(J, analytic ? random_analytic(rng, dom.even_dim) : random_polynomial(rng, dom.even_dim, degree));
  }
  if (s.is_zero()) {
    OddIndexSet J = parity == Parity::even ? OddIndexSet{} : OddIndexSet::single(0);
    if (parity == Parity::odd && dom.odd_dim == 0) return s;
    s.add_component(J, analytic ? random_analytic(rng, dom.even_dim) : random_polynomial(rng, dom.even_dim, degree));
  }
  return s;
}

inline Parity random_parity(Rng& rng) { return rng.coin() ? Parity::odd : Parity::even; }

}  // namespace superweil
