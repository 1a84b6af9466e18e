#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "superweil/apoint.hpp"
#include "superweil/errors.hpp"

namespace superweil {

/// v = sum even_part_i d/dx_i + sum odd_part_j d/dtheta_j at `base`.
template <class S>
struct TangentVector {
  std::vector<S> base;
  std::vector<S> even_part;
  std::vector<S> odd_part;

  bool operator==(const TangentVector&) const = default;
};

namespace detail {

struct SuperDualIndices {
  std::size_t e;
  std::size_t eps;
};

inline const AlgebraPtr& super_dual_algebra() {
  static const AlgebraPtr a = make_algebra(AlgebraDescriptor::super_dual());
  return a;
}

inline SuperDualIndices super_dual_indices(const AlgebraPtr& a) {
  if (!a->same_structure(*super_dual_algebra()))
    throw AlgebraMismatch("tangent vectors live over the super dual numbers, got " + a->descriptor().to_string());
  return {*a->even_generator(0), *a->odd_generator(0)};
}

}  // namespace detail

/// Reads v off an R(e, epsilon)-point: x~_i = base_i + v0_i e, theta~_j = v1_j epsilon.
template <class S>
TangentVector<S> tangent_from_superdual(const APoint<S>& x) {
  auto idx = detail::super_dual_indices(x.algebra());
  TangentVector<S> v;
  v.base = x.base();
  for (const auto& c : x.even_values()) v.even_part.push_back(c[idx.e]);
  for (const auto& c : x.odd_values()) v.odd_part.push_back(c[idx.eps]);
  return v;
}

template <class S>
APoint<S> apoint_from_tangent(const TangentVector<S>& v, const Superdomain& dom) {
  const AlgebraPtr& a = detail::super_dual_algebra();
  auto idx = detail::super_dual_indices(a);
  if (v.base.size() != dom.even_dim || v.even_part.size() != dom.even_dim || v.odd_part.size() != dom.odd_dim)
    throw DomainMismatch("tangent vector components do not match the superdomain " + dom.to_string());
  std::vector<Element<S>> even, odd;
  for (unsigned i = 0; i < dom.even_dim; ++i) {
    Element<S> c = Element<S>::scalar(a, v.base[i]);
    c[idx.e] = v.even_part[i];
    even.push_back(std::move(c));
  }
  for (unsigned j = 0; j < dom.odd_dim; ++j) {
    Element<S> c(a);
    c[idx.eps] = v.odd_part[j];
    odd.push_back(std::move(c));
  }
  return APoint<S>(dom, a, std::move(even), std::move(odd));
}

/// v(s) = (e-coefficient) + (epsilon-coefficient) of x_A(s) for the associated point.
template <class S>
S tangent_apply(const TangentVector<S>& v, const Section& s) {
  APoint<S> x = apoint_from_tangent(v, s.domain());
  auto idx = detail::super_dual_indices(x.algebra());
  Element<S> r = eval(s, x);
  return S(r[idx.e] + r[idx.eps]);
}

/// X_f(s) = sum f_i x_A(ds/dx_i) + sum F_j x_A(ds/dtheta_j).
template <class S>
struct Derivation {
  APoint<S> at;
  std::vector<Element<S>> even_coeffs;
  std::vector<Element<S>> odd_coeffs;

  /// pi iff every f_i has parity pi and every F_j has parity pi + 1.
  std::optional<Parity> parity() const {
    for (Parity pi : {Parity::even, Parity::odd}) {
      bool ok = true;
      for (const auto& f : even_coeffs) ok = ok && f.is_homogeneous(pi);
      for (const auto& f : odd_coeffs) ok = ok && f.is_homogeneous(pi + Parity::odd);
      if (ok) return pi;
    }
    return std::nullopt;
  }
};

template <class S>
Derivation<S> derivation_from_values(const APoint<S>& x, std::vector<Element<S>> values) {
  const auto& dom = x.domain();
  if (values.size() != dom.even_dim + dom.odd_dim)
    throw DomainMismatch("derivation needs one value per coordinate (" + std::to_string(dom.even_dim + dom.odd_dim) +
                         ")");
  for (const auto& v : values) require_same_algebra(v.algebra(), x.algebra(), "derivation value");
  Derivation<S> d{x, {}, {}};
  d.even_coeffs.assign(values.begin(), values.begin() + dom.even_dim);
  d.odd_coeffs.assign(values.begin() + dom.even_dim, values.end());
  return d;
}

template <class S>
Element<S> derivation_apply(const Derivation<S>& X, const Section& s) {
  require_same_domain(s.domain(), X.at.domain(), "derivation_apply");
  const auto& dom = s.domain();
  Element<S> out(X.at.algebra());
  for (unsigned i = 0; i < dom.even_dim; ++i) {
    if (X.even_coeffs[i].is_zero()) continue;
    out += X.even_coeffs[i] * eval(differentiate(s, i), X.at);
  }
  for (unsigned j = 0; j < dom.odd_dim; ++j) {
    if (X.odd_coeffs[j].is_zero()) continue;
    out += X.odd_coeffs[j] * eval(odd_derivative(s, j), X.at);
  }
  return out;
}

}  // namespace superweil
