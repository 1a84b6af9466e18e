#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "superweil/apoint.hpp"
#include "superweil/errors.hpp"

namespace superweil {

/// v = sum a_{nu,J} ev_x d^nu/dx^nu d^J/dtheta^J with |nu| + |J| <= order.
///
/// d^J is normalised so that d^J theta^J = 1, which makes the monomial
/// sections (x - x0)^nu theta^J / nu! a dual family: v((x-x0)^nu theta^J) = nu! a_{nu,J}.
template <class S>
struct Distribution {
  Superdomain domain;
  std::vector<S> support;
  unsigned order = 0;
  std::map<SuperMonomial, S> coefficients;

  S coefficient(const SuperMonomial& m) const {
    auto it = coefficients.find(m);
    return it == coefficients.end() ? ScalarTraits<S>::zero() : it->second;
  }

  /// v(s) = sum a_{nu,J} d^nu s_J (support).
  S apply(const Section& s) const {
    require_same_domain(s.domain(), domain, "distribution pairing");
    S out = ScalarTraits<S>::zero();
    for (const auto& [m, a] : coefficients) {
      if (ScalarTraits<S>::is_zero(a)) continue;
      Expr d = differentiate(odd_derivative(s, m.odd).component(OddIndexSet{}), m.even);
      S value = evaluate(d, std::span<const S>(support));
      out += a * value;
    }
    return out;
  }

  /// Same support and coefficients (zero entries ignored).
  friend bool operator==(const Distribution& a, const Distribution& b) {
    if (!(a.domain == b.domain) || a.support != b.support) return false;
    auto covers = [](const Distribution& x, const Distribution& y) {
      for (const auto& [m, v] : x.coefficients)
        if (!ScalarTraits<S>::is_zero(S(v - y.coefficient(m)))) return false;
      return true;
    };
    return covers(a, b) && covers(b, a);
  }
};

/// (x - x0)^nu theta^J as a section.
inline Section monomial_section(const Superdomain& dom, std::span<const Rational> x0, const SuperMonomial& m) {
  Expr e(1);
  for (unsigned i = 0; i < dom.even_dim; ++i) e = e * pow(var(i) - Expr(x0[i]), m.even[i]);
  return Section(dom, {{m.odd, e}});
}

inline Section monomial_section(const Superdomain& dom, std::span<const double> x0, const SuperMonomial& m) {
  std::vector<Rational> r;
  for (double v : x0) r.push_back(rational_from_double(v));
  return monomial_section(dom, std::span<const Rational>(r), m);
}

/// Monomials x^nu theta^J of a superdomain with |nu| + |J| <= order, canonical order.
inline std::vector<SuperMonomial> monomials_up_to(const Superdomain& dom, unsigned order) {
  std::vector<SuperMonomial> out;
  for (const auto& J : odd_subsets(dom.odd_dim, order))
    for (const auto& nu : multi_indices_up_to(dom.even_dim, order - J.size())) out.push_back({nu, J});
  std::sort(out.begin(), out.end(), graded_lex_less);
  return out;
}

/// omega o x_A, read off by pairing with the monomial sections around the base point.
template <class S>
Distribution<S> distribution_from(std::span<const S> omega, const APoint<S>& x) {
  const AlgebraPtr& a = x.algebra();
  if (omega.size() != a->dim()) throw InvalidArgument("functional must have one coefficient per basis element");
  Distribution<S> v;
  v.domain = x.domain();
  v.support = x.base();
  v.order = a->height();
  for (const auto& m : monomials_up_to(x.domain(), v.order)) {
    Element<S> img = eval(monomial_section(x.domain(), std::span<const S>(v.support), m), x);
    S pairing = ScalarTraits<S>::zero();
    for (std::size_t k = 0; k < img.size(); ++k) pairing += omega[k] * img[k];
    Rational fact = factorial(m.even);
    S coeff = pairing * ScalarTraits<S>::from_rational(Rational(1 / fact));
    if (!ScalarTraits<S>::is_zero(coeff)) v.coefficients.emplace(m, coeff);
  }
  return v;
}

/// The jet realisation of a distribution of order k: A = poly(p, q, k + 1),
/// the tautological point x~_i = x0_i + x_i, theta~_j = theta_j, and omega(x^nu theta^J) = nu! a_{nu,J}.
template <class S>
struct JetRealization {
  AlgebraPtr algebra;
  APoint<S> point;
  std::vector<S> omega;
};

template <class S>
JetRealization<S> distribution_to_apoint(const Distribution<S>& v, std::size_t max_dim = default_max_dim) {
  const Superdomain& dom = v.domain;
  for (const auto& [m, a] : v.coefficients)
    if (m.degree() > v.order && !ScalarTraits<S>::is_zero(a))
      throw InvalidArgument("distribution has a coefficient above its order");
  AlgebraPtr alg = make_algebra(AlgebraDescriptor::truncated_poly(dom.even_dim, dom.odd_dim, v.order + 1), max_dim);
  std::vector<Element<S>> even, odd;
  for (unsigned i = 0; i < dom.even_dim; ++i)
    even.push_back(Element<S>::scalar(alg, v.support[i]) + Element<S>::even_generator(alg, i));
  for (unsigned j = 0; j < dom.odd_dim; ++j) odd.push_back(Element<S>::odd_generator(alg, j));
  APoint<S> point(dom, alg, std::move(even), std::move(odd));
  std::vector<S> omega(alg->dim(), ScalarTraits<S>::zero());
  for (std::size_t k = 0; k < alg->dim(); ++k) {
    const auto& m = alg->monomial(k);
    omega[k] = v.coefficient(m) * ScalarTraits<S>::from_rational(factorial(m.even));
  }
  return JetRealization<S>{alg, std::move(point), std::move(omega)};
}

}  // namespace superweil
