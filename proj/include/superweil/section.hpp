#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "superweil/errors.hpp"
#include "superweil/expr.hpp"
#include "superweil/monomial.hpp"

namespace superweil {

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double v) const { return v > lo && v < hi; }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
  bool operator==(const Interval&) const = default;
};

/// R^{p|q} restricted to an open box in R^p.
struct Superdomain {
  unsigned even_dim = 0;
  unsigned odd_dim = 0;
  std::vector<Interval> box;

  static Superdomain whole(unsigned p, unsigned q) { return Superdomain{p, q, std::vector<Interval>(p)}; }
  static Superdomain with_box(unsigned q, std::vector<Interval> box) {
    for (const auto& iv : box)
      if (!(iv.lo < iv.hi)) throw InvalidArgument("superdomain: empty interval in box");
    auto p = static_cast<unsigned>(box.size());
    return Superdomain{p, q, std::move(box)};
  }

  bool contains(std::span<const double> x) const {
    if (x.size() != even_dim) return false;
    for (unsigned i = 0; i < even_dim; ++i)
      if (!box[i].contains(x[i])) return false;
    return true;
  }

  std::string to_string() const { return std::to_string(even_dim) + "|" + std::to_string(odd_dim); }
  bool operator==(const Superdomain&) const = default;
};

inline void require_same_domain(const Superdomain& a, const Superdomain& b, const char* where) {
  if (!(a == b))
    throw DomainMismatch(std::string(where) + ": superdomains differ (" + a.to_string() + " vs " + b.to_string() + ")");
}

/// s = sum_J s_J theta^J with expression coefficients.
class Section {
 public:
  using Components = std::map<OddIndexSet, Expr>;

  Section() = default;
  explicit Section(Superdomain dom) : dom_(std::move(dom)) {}
  Section(Superdomain dom, Components comps) : dom_(std::move(dom)) {
    for (auto& [J, e] : comps) add_component(J, e);
  }

  static Section constant(const Superdomain& dom, const Expr& f) { return Section(dom, {{OddIndexSet{}, f}}); }
  /// The coordinate x_{i+1}.
  static Section even_coordinate(const Superdomain& dom, unsigned i) {
    if (i >= dom.even_dim) throw InvalidArgument("even coordinate index out of range");
    return constant(dom, var(i));
  }
  /// The coordinate theta_{j+1}.
  static Section odd_coordinate(const Superdomain& dom, unsigned j) {
    if (j >= dom.odd_dim) throw InvalidArgument("odd coordinate index out of range");
    return Section(dom, {{OddIndexSet::single(j), Expr(1)}});
  }

  const Superdomain& domain() const { return dom_; }
  const Components& components() const { return comps_; }
  Expr component(OddIndexSet J) const {
    auto it = comps_.find(J);
    return it == comps_.end() ? Expr(0) : it->second;
  }
  bool is_zero() const { return comps_.empty(); }

  /// Parity if homogeneous; the zero section counts as even.
  std::optional<Parity> parity() const {
    std::optional<Parity> p;
    for (const auto& [J, e] : comps_) {
      if (!p)
        p = J.parity();
      else if (*p != J.parity())
        return std::nullopt;
    }
    return p ? p : std::optional<Parity>(Parity::even);
  }
  Section part(Parity p) const {
    Section out(dom_);
    for (const auto& [J, e] : comps_)
      if (J.parity() == p) out.comps_.emplace(J, e);
    return out;
  }

  void add_component(OddIndexSet J, const Expr& e) {
    if (J.span() > dom_.odd_dim)
      throw DomainMismatch("section component uses theta" + std::to_string(J.span()) + " on a domain of odd dimension " +
                           std::to_string(dom_.odd_dim));
    if (variable_count(e) > dom_.even_dim)
      throw DomainMismatch("section component uses x" + std::to_string(variable_count(e)) +
                           " on a domain of even dimension " + std::to_string(dom_.even_dim));
    auto it = comps_.find(J);
    Expr sum = it == comps_.end() ? e : it->second + e;
    if (sum.is_zero()) {
      if (it != comps_.end()) comps_.erase(it);
      return;
    }
    comps_[J] = sum;
  }

  Section& operator+=(const Section& o) {
    require_same_domain(dom_, o.dom_, "section add");
    for (const auto& [J, e] : o.comps_) add_component(J, e);
    return *this;
  }
  friend Section operator+(Section a, const Section& b) { return a += b; }
  friend Section operator-(const Section& a) {
    Section out(a.dom_);
    for (const auto& [J, e] : a.comps_) out.comps_.emplace(J, -e);
    return out;
  }
  friend Section operator-(const Section& a, const Section& b) { return a + (-b); }
  friend Section operator*(const Expr& f, const Section& s) {
    Section out(s.dom_);
    for (const auto& [J, e] : s.comps_) out.add_component(J, f * e);
    return out;
  }

 private:
  Superdomain dom_;
  Components comps_;
};

/// (sum s_J theta^J)(sum t_K theta^K) with the Koszul sign of theta^J theta^K.
inline Section section_mul(const Section& s, const Section& t) {
  require_same_domain(s.domain(), t.domain(), "section_mul");
  Section out(s.domain());
  for (const auto& [J, a] : s.components())
    for (const auto& [K, b] : t.components()) {
      int sign = odd_product_sign(J, K);
      if (sign == 0) continue;
      Expr prod = a * b;
      out.add_component(OddIndexSet{J.bits | K.bits}, sign < 0 ? -prod : prod);
    }
  return out;
}

inline Section operator*(const Section& s, const Section& t) { return section_mul(s, t); }

/// d/dx_{i+1} applied to each component.
inline Section differentiate(const Section& s, unsigned i) {
  if (i >= s.domain().even_dim) throw InvalidArgument("differentiate: even index out of range");
  Section out(s.domain());
  for (const auto& [J, e] : s.components()) out.add_component(J, differentiate(e, i));
  return out;
}

/// Left derivative d/dtheta_{j+1}: theta^J -> (-1)^{#members of J below j} theta^{J \ j}.
inline Section odd_derivative(const Section& s, unsigned j) {
  if (j >= s.domain().odd_dim) throw InvalidArgument("odd_derivative: odd index out of range");
  Section out(s.domain());
  for (const auto& [J, e] : s.components()) {
    int sign = left_derivative_sign(J, j);
    if (sign == 0) continue;
    out.add_component(J.without(j), sign < 0 ? -e : e);
  }
  return out;
}

/// d^J = d/dtheta_{j_r} o ... o d/dtheta_{j_1}, normalised so that d^J theta^J = 1.
inline Section odd_derivative(const Section& s, OddIndexSet J) {
  Section out = s;
  for (unsigned j : J.members()) out = odd_derivative(out, j);
  return out;
}

/// Polynomial sum_{|nu|+|J| < order} (1/nu!) d^nu s_J(x0) (x - x0)^nu theta^J.
template <class S>
Section taylor_polynomial(const Section& s, std::span<const S> x0, unsigned order) {
  const Superdomain& dom = s.domain();
  if (x0.size() != dom.even_dim) throw DomainMismatch("taylor_polynomial: base point has wrong dimension");
  std::vector<double> xd;
  for (const auto& v : x0) xd.push_back(ScalarTraits<S>::to_double(v));
  if (!dom.contains(xd)) throw DomainMismatch("taylor_polynomial: base point outside the domain box");
  std::vector<Expr> shifted;
  for (unsigned i = 0; i < dom.even_dim; ++i) {
    Rational c;
    if constexpr (std::is_same_v<S, double>)
      c = rational_from_double(x0[i]);
    else
      c = x0[i];
    shifted.push_back(var(i) - Expr(c));
  }
  Section out(dom);
  if (order == 0) return out;
  for (const auto& [J, e] : s.components()) {
    if (J.size() >= order) continue;
    DerivativeCache cache(e);
    for (const auto& nu : multi_indices_up_to(dom.even_dim, order - 1 - J.size())) {
      S value = evaluate(cache.get(nu), x0);
      Rational c;
      if constexpr (std::is_same_v<S, double>)
        c = rational_from_double(value);
      else
        c = value;
      c /= factorial(nu);
      if (sgn(c) == 0) continue;
      Expr term(c);
      for (unsigned i = 0; i < dom.even_dim; ++i) term = term * pow(shifted[i], nu[i]);
      out.add_component(J, term);
    }
  }
  return out;
}

/// Embed a section of U into U' = U x V (or V x U when offsets are nonzero):
/// x_i -> x_{i + even_offset}, theta_j -> theta_{j + odd_offset}.
inline Section shift_section(const Section& s, const Superdomain& target, unsigned even_offset, unsigned odd_offset) {
  std::vector<Expr> vars;
  for (unsigned i = 0; i < s.domain().even_dim; ++i) vars.push_back(var(i + even_offset));
  Section out(target);
  for (const auto& [J, e] : s.components()) out.add_component(OddIndexSet{J.bits << odd_offset}, substitute(e, vars));
  return out;
}

inline std::string to_string(OddIndexSet J) {
  std::string out = "{";
  bool first = true;
  for (unsigned j : J.members()) {
    if (!first) out += ",";
    out += std::to_string(j + 1);
    first = false;
  }
  return out + "}";
}

/// Section file form: one "J: expr" line per component.
inline std::string to_string(const Section& s) {
  std::string out;
  for (const auto& [J, e] : s.components()) out += to_string(J) + ": " + to_string(e) + "\n";
  return out;
}

}  // namespace superweil
