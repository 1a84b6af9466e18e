#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "superweil/algebra.hpp"
#include "superweil/element.hpp"
#include "superweil/errors.hpp"
#include "superweil/expr.hpp"
#include "superweil/morphism.hpp"
#include "superweil/section.hpp"

namespace superweil {

/// An algebra morphism O(U) -> A, stored as the images of the coordinates:
/// even values in A_0 whose bodies form a point of the box, odd values in A_1.
template <class S>
class APoint {
 public:
  APoint(Superdomain dom, AlgebraPtr alg, std::vector<Element<S>> even, std::vector<Element<S>> odd)
      : dom_(std::move(dom)), alg_(std::move(alg)), even_(std::move(even)), odd_(std::move(odd)) {
    if (even_.size() != dom_.even_dim || odd_.size() != dom_.odd_dim)
      throw DomainMismatch("A-point needs " + std::to_string(dom_.even_dim) + " even and " +
                           std::to_string(dom_.odd_dim) + " odd coordinate values");
    for (auto& v : even_) v = checked(v, Parity::even);
    for (auto& v : odd_) v = checked(v, Parity::odd);
    if constexpr (!std::is_same_v<S, Expr>) {
      std::vector<double> b = base_double();
      if (!dom_.contains(b)) throw DomainMismatch("A-point base point lies outside the domain box");
    }
  }

  const Superdomain& domain() const { return dom_; }
  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<Element<S>>& even_values() const { return even_; }
  const std::vector<Element<S>>& odd_values() const { return odd_; }

  /// (body(x_1), ..., body(x_p)).
  std::vector<S> base() const {
    std::vector<S> b;
    for (const auto& v : even_) b.push_back(v.body());
    return b;
  }
  std::vector<double> base_double() const {
    std::vector<double> b;
    for (const auto& v : even_) b.push_back(ScalarTraits<S>::to_double(v.body()));
    return b;
  }

  friend bool operator==(const APoint& a, const APoint& b) {
    if (!(a.dom_ == b.dom_) || !a.alg_->same_structure(*b.alg_)) return false;
    for (std::size_t i = 0; i < a.even_.size(); ++i)
      if (!(a.even_[i] == b.even_[i])) return false;
    for (std::size_t j = 0; j < a.odd_.size(); ++j)
      if (!(a.odd_[j] == b.odd_[j])) return false;
    return true;
  }

 private:
  Element<S> checked(const Element<S>& v, Parity p) const {
    require_same_algebra(v.algebra(), alg_, "A-point coordinate");
    if (!v.is_homogeneous(p))
      throw ParityError(std::string("A-point: ") + (p == Parity::even ? "even" : "odd") +
                        " coordinate value is not " + to_string(p));
    return v.algebra() == alg_ ? v : v.rebase(alg_);
  }

  Superdomain dom_;
  AlgebraPtr alg_;
  std::vector<Element<S>> even_;
  std::vector<Element<S>> odd_;
};

/// The R-point ev_x.
template <class S>
APoint<S> real_point(const Superdomain& dom, std::span<const S> x) {
  static const AlgebraPtr reals = make_algebra(AlgebraDescriptor::reals());
  std::vector<Element<S>> even;
  for (const auto& v : x) even.push_back(Element<S>::scalar(reals, v));
  std::vector<Element<S>> odd(dom.odd_dim, Element<S>(reals));
  return APoint<S>(dom, reals, std::move(even), std::move(odd));
}

/// sum_{nu,J} (1/nu!) d^nu s_J(base) soul^nu theta~^J, truncated at |nu| + |J| <= height(A).
///
/// Generic over the coefficient field: `base` is evaluated into S with the
/// matching `evaluate` overload (numeric, exact, or symbolic substitution).
template <class S>
Element<S> formal_taylor(const Section& s, const AlgebraPtr& alg, std::span<const S> base,
                         std::span<const Element<S>> souls, std::span<const Element<S>> odd_values) {
  const unsigned h = alg->height();
  const auto p = static_cast<unsigned>(souls.size());
  Element<S> out(alg);

  // soul^nu for every |nu| <= h, built one factor at a time.
  std::map<EvenMultiIndex, Element<S>> soul_powers;
  for (const auto& nu : multi_indices_up_to(p, h)) {
    if (total_degree(nu) == 0) {
      soul_powers.emplace(nu, Element<S>::one(alg));
      continue;
    }
    unsigned i = 0;
    while (nu[i] == 0) ++i;
    EvenMultiIndex parent = nu;
    --parent[i];
    const auto& prev = soul_powers.at(parent);
    soul_powers.emplace(nu, prev.is_zero() ? prev : prev * souls[i]);
  }

  for (const auto& [J, coeff] : s.components()) {
    if (J.size() > h) continue;
    Element<S> theta = Element<S>::one(alg);
    for (unsigned j : J.members()) theta = theta * odd_values[j];
    if (theta.is_zero()) continue;
    DerivativeCache cache(coeff);
    for (const auto& nu : multi_indices_up_to(p, h - J.size())) {
      const auto& sp = soul_powers.at(nu);
      if (sp.is_zero()) continue;
      Element<S> mono = sp * theta;
      if (mono.is_zero()) continue;
      const Expr& d = cache.get(nu);
      if (d.is_zero()) continue;
      S value = evaluate(d, base);
      Rational fact = factorial(nu);
      if (fact != 1) value = value * ScalarTraits<S>::from_rational(Rational(1 / fact));
      out += mono * value;
    }
  }
  return out;
}

/// x_A(s): the formal Taylor expansion of s around base(x_A).
template <class S>
Element<S> eval(const Section& s, const APoint<S>& x) {
  require_same_domain(s.domain(), x.domain(), "eval");
  std::vector<S> base = x.base();
  std::vector<Element<S>> souls;
  for (const auto& v : x.even_values()) souls.push_back(v.soul());
  return formal_taylor<S>(s, x.algebra(), base, souls, x.odd_values());
}

/// rho_hat(x_A) = rho o x_A, computed coordinate-wise.
template <class S>
APoint<S> pushforward_algebra(const AlgebraMorphism& rho, const APoint<S>& x) {
  require_same_algebra(x.algebra(), rho.source(), "pushforward_algebra");
  std::vector<Element<S>> even, odd;
  for (const auto& v : x.even_values()) even.push_back(rho(v.rebase(rho.source())));
  for (const auto& v : x.odd_values()) odd.push_back(rho(v.rebase(rho.source())));
  return APoint<S>(x.domain(), rho.target(), std::move(even), std::move(odd));
}

/// pr_A o x_A = ev at the base point.
template <class S>
APoint<S> base_point(const APoint<S>& x) {
  return pushforward_algebra(body_projection(x.algebra()), x);
}

inline APoint<double> to_double(const APoint<Rational>& x) {
  std::vector<Element<double>> even, odd;
  for (const auto& v : x.even_values()) even.push_back(to_double(v));
  for (const auto& v : x.odd_values()) odd.push_back(to_double(v));
  return APoint<double>(x.domain(), x.algebra(), std::move(even), std::move(odd));
}

inline bool approx_equal(const APoint<double>& a, const APoint<double>& b, double tol = 1e-9) {
  if (!(a.domain() == b.domain())) return false;
  for (std::size_t i = 0; i < a.even_values().size(); ++i)
    if (!approx_equal(a.even_values()[i], b.even_values()[i], tol)) return false;
  for (std::size_t j = 0; j < a.odd_values().size(); ++j)
    if (!approx_equal(a.odd_values()[j], b.odd_values()[j], tol)) return false;
  return true;
}

}  // namespace superweil
