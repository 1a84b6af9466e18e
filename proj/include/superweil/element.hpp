#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superweil/algebra.hpp"
#include "superweil/errors.hpp"
#include "superweil/scalar.hpp"

namespace superweil {

/// a = sum c_k e_k over the canonical basis of a Weil algebra.
///
/// Coefficients are dense (dim <= 64). `S` is the coefficient field; see
/// ScalarTraits.
template <class S>
class Element {
 public:
  using Traits = ScalarTraits<S>;

  Element() = default;
  explicit Element(AlgebraPtr algebra) : alg_(std::move(algebra)), c_(alg_->dim(), Traits::zero()) {}
  Element(AlgebraPtr algebra, std::vector<S> coeffs) : alg_(std::move(algebra)), c_(std::move(coeffs)) {
    if (c_.size() != alg_->dim()) throw InvalidArgument("element: coefficient count does not match dimension");
  }

  static Element zero(const AlgebraPtr& a) { return Element(a); }
  static Element one(const AlgebraPtr& a) { return scalar(a, Traits::one()); }
  static Element scalar(const AlgebraPtr& a, S value) {
    Element e(a);
    e.c_[0] = std::move(value);
    return e;
  }
  static Element basis(const AlgebraPtr& a, std::size_t i) {
    Element e(a);
    e.c_.at(i) = Traits::one();
    return e;
  }
  /// x_{i+1} of a monomial algebra (zero if truncated away).
  static Element even_generator(const AlgebraPtr& a, unsigned i) {
    if (i >= a->even_generators()) throw InvalidArgument("even generator index out of range");
    auto k = a->even_generator(i);
    return k ? basis(a, *k) : Element(a);
  }
  static Element odd_generator(const AlgebraPtr& a, unsigned j) {
    if (j >= a->odd_generators()) throw InvalidArgument("odd generator index out of range");
    auto k = a->odd_generator(j);
    return k ? basis(a, *k) : Element(a);
  }

  const AlgebraPtr& algebra() const { return alg_; }
  std::size_t size() const { return c_.size(); }
  const S& operator[](std::size_t i) const { return c_[i]; }
  S& operator[](std::size_t i) { return c_[i]; }
  const std::vector<S>& coefficients() const { return c_; }

  const S& body() const { return c_[0]; }
  Element soul() const {
    Element s = *this;
    s.c_[0] = Traits::zero();
    return s;
  }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const S& v) { return Traits::is_zero(v); });
  }
  /// Supported only on basis elements of parity p.
  bool is_homogeneous(Parity p) const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!Traits::is_zero(c_[i]) && alg_->parity(i) != p) return false;
    return true;
  }
  std::optional<Parity> parity() const {
    if (is_homogeneous(Parity::even)) return Parity::even;
    if (is_homogeneous(Parity::odd)) return Parity::odd;
    return std::nullopt;
  }
  Element even_part() const { return part(Parity::even); }
  Element odd_part() const { return part(Parity::odd); }

  Element& operator+=(const Element& o) {
    require_same_algebra(alg_, o.alg_, "add");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Element& operator-=(const Element& o) {
    require_same_algebra(alg_, o.alg_, "subtract");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Element& operator*=(const S& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend Element operator*(const S& s, Element a) { return a *= s; }
  friend Element operator*(Element a, const S& s) { return a *= s; }

  friend Element operator*(const Element& a, const Element& b) {
    require_same_algebra(a.alg_, b.alg_, "mul");
    const std::size_t n = a.c_.size();
    Element out(a.alg_);
    for (std::size_t i = 0; i < n; ++i) {
      if (Traits::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (Traits::is_zero(b.c_[j])) continue;
        S ab = a.c_[i] * b.c_[j];
        for (const auto& t : a.alg_->product(i, j)) out.c_[t.index] += ab * structure_coeff(t);
      }
    }
    return out;
  }

  friend bool operator==(const Element& a, const Element& b) {
    if (a.alg_ != b.alg_ && !(a.alg_ && b.alg_ && a.alg_->same_structure(*b.alg_))) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      S d = a.c_[i] - b.c_[i];
      if (!Traits::is_zero(d)) return false;
    }
    return true;
  }

  /// Same algebra, coefficients converted with `f`.
  template <class T, class F>
  Element<T> map(F&& f) const {
    std::vector<T> out;
    out.reserve(c_.size());
    for (const auto& v : c_) out.push_back(f(v));
    return Element<T>(alg_, std::move(out));
  }

  /// Reinterpret the same coefficients in an algebra with identical structure.
  Element rebase(AlgebraPtr other) const {
    require_same_algebra(alg_, other, "rebase");
    return Element(std::move(other), c_);
  }

 private:
  static S structure_coeff(const StructureTerm& t) {
    if constexpr (std::is_same_v<S, double>) {
      return t.approx;
    } else {
      return Traits::from_rational(t.coeff);
    }
  }

  Element part(Parity p) const {
    Element e = *this;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (alg_->parity(i) != p) e.c_[i] = Traits::zero();
    return e;
  }

  AlgebraPtr alg_;
  std::vector<S> c_;
};

template <class S>
Element<S> pow(const Element<S>& a, unsigned n) {
  Element<S> out = Element<S>::one(a.algebra());
  Element<S> base = a;
  while (n) {
    if (n & 1U) out = out * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return out;
}

/// a^{-1} = body^{-1} sum_{t=0}^{height} (-soul/body)^t.
template <class S>
Element<S> invert(const Element<S>& a) {
  using T = ScalarTraits<S>;
  if (T::is_zero(a.body())) throw NotInvertible("element with zero body has no inverse");
  S inv_body = T::one() / a.body();
  Element<S> ratio = a.soul() * S(-inv_body);
  Element<S> term = Element<S>::one(a.algebra());
  Element<S> sum = term;
  for (unsigned t = 1; t <= a.algebra()->height(); ++t) {
    term = term * ratio;
    if (term.is_zero()) break;
    sum += term;
  }
  return sum * inv_body;
}

/// max |c_k|.
template <class S>
double max_norm(const Element<S>& a) {
  double m = 0.0;
  for (const auto& v : a.coefficients()) m = std::max(m, ScalarTraits<S>::magnitude(v));
  return m;
}

/// ||a - b||_inf <= tol * max(1, ||a||_inf, ||b||_inf).
inline bool approx_equal(const Element<double>& a, const Element<double>& b, double tol = 1e-9) {
  require_same_algebra(a.algebra(), b.algebra(), "approx_equal");
  double scale = std::max({1.0, max_norm(a), max_norm(b)});
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol * scale) return false;
  return true;
}

inline Element<double> to_double(const Element<Rational>& a) {
  return a.map<double>([](const Rational& r) { return r.get_d(); });
}

inline Element<Rational> to_rational(const Element<double>& a) {
  return a.map<Rational>([](double v) { return rational_from_double(v); });
}

}  // namespace superweil
