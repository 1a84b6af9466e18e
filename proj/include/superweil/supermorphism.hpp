#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "superweil/apoint.hpp"
#include "superweil/errors.hpp"
#include "superweil/section.hpp"

namespace superweil {

struct RangeCheckOptions {
  unsigned grid_per_axis = 7;
  std::size_t max_points = 10000;
};

/// Deterministic sample points of an open box: interior lattice on bounded axes,
/// geometric spread on half-lines, [-3, 3] on full lines.
inline std::vector<std::vector<double>> sample_grid(const Superdomain& dom, RangeCheckOptions opt = {}) {
  unsigned n = std::max(1U, opt.grid_per_axis);
  if (dom.even_dim > 0) {
    while (n > 1 && std::pow(static_cast<double>(n), dom.even_dim) > static_cast<double>(opt.max_points)) --n;
  }
  std::vector<std::vector<double>> axes;
  for (const auto& iv : dom.box) {
    std::vector<double> pts;
    for (unsigned k = 0; k < n; ++k) {
      double t = static_cast<double>(k + 1) / static_cast<double>(n + 1);
      double offset = std::ldexp(1.0, static_cast<int>(k) - static_cast<int>(n / 2));
      if (iv.bounded())
        pts.push_back(iv.lo + (iv.hi - iv.lo) * t);
      else if (std::isfinite(iv.lo))
        pts.push_back(iv.lo + offset);
      else if (std::isfinite(iv.hi))
        pts.push_back(iv.hi - offset);
      else
        pts.push_back(n == 1 ? 0.0 : -3.0 + 6.0 * static_cast<double>(k) / static_cast<double>(n - 1));
    }
    axes.push_back(std::move(pts));
  }
  std::vector<std::vector<double>> out{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : out)
      for (double v : axis) {
        auto p = prefix;
        p.push_back(v);
        next.push_back(std::move(p));
      }
    out = std::move(next);
  }
  return out;
}

inline std::string point_string(std::span<const double> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + ScalarTraits<double>::to_string(x[i]);
  return s + ")";
}

/// phi : U -> V given by the pullbacks of V's coordinates (even ones first).
class SuperdomainMorphism {
 public:
  SuperdomainMorphism(Superdomain source, Superdomain target, std::vector<Section> pullbacks,
                      RangeCheckOptions range = {})
      : source_(std::move(source)), target_(std::move(target)), pullbacks_(std::move(pullbacks)) {
    if (pullbacks_.size() != target_.even_dim + target_.odd_dim)
      throw DomainMismatch("morphism needs one pullback per target coordinate (" +
                           std::to_string(target_.even_dim + target_.odd_dim) + ")");
    for (std::size_t k = 0; k < pullbacks_.size(); ++k) {
      require_same_domain(pullbacks_[k].domain(), source_, "morphism pullback");
      Parity want = k < target_.even_dim ? Parity::even : Parity::odd;
      auto p = pullbacks_[k].parity();
      if (!pullbacks_[k].is_zero() && (!p || *p != want))
        throw ParityError("pullback of target coordinate " + std::to_string(k + 1) + " is not " + to_string(want));
    }
    for (const auto& x : sample_grid(source_, range)) {
      std::vector<double> y;
      try {
        for (unsigned k = 0; k < target_.even_dim; ++k)
          y.push_back(evaluate(pullbacks_[k].component(OddIndexSet{}), x));
      } catch (const EvaluationDomainError& e) {
        throw DomainMismatch("range condition: pullback undefined at " + point_string(x) + " (" + e.what() + ")");
      }
      if (!target_.contains(y))
        throw DomainMismatch("range condition fails at " + point_string(x) + ": image " + point_string(y) +
                             " leaves the target box");
    }
  }

  static SuperdomainMorphism identity(const Superdomain& dom) {
    std::vector<Section> pb;
    for (unsigned i = 0; i < dom.even_dim; ++i) pb.push_back(Section::even_coordinate(dom, i));
    for (unsigned j = 0; j < dom.odd_dim; ++j) pb.push_back(Section::odd_coordinate(dom, j));
    return SuperdomainMorphism(dom, dom, std::move(pb));
  }

  const Superdomain& source() const { return source_; }
  const Superdomain& target() const { return target_; }
  const std::vector<Section>& pullbacks() const { return pullbacks_; }
  const Section& pullback(std::size_t k) const { return pullbacks_.at(k); }

 private:
  Superdomain source_;
  Superdomain target_;
  std::vector<Section> pullbacks_;
};

/// phi_A(x_A) = x_A o phi^*: the target point with coordinates x_A(phi^* y_k).
template <class S>
APoint<S> pushforward_morphism(const SuperdomainMorphism& phi, const APoint<S>& x) {
  require_same_domain(phi.source(), x.domain(), "pushforward_morphism");
  std::vector<Element<S>> even, odd;
  const auto& tgt = phi.target();
  for (unsigned k = 0; k < tgt.even_dim; ++k) even.push_back(eval(phi.pullback(k), x));
  for (unsigned k = 0; k < tgt.odd_dim; ++k) odd.push_back(eval(phi.pullback(tgt.even_dim + k), x));
  return APoint<S>(tgt, x.algebra(), std::move(even), std::move(odd));
}

inline constexpr unsigned default_jet_order = 8;

/// Pull a section g on phi's target back along phi: g(a + n, theta') expanded
/// in the nilpotent part n of the even pullbacks. Each n_i has theta-degree
/// >= 2, so the expansion stops at |nu| = q_source / 2; jet_order caps it further.
inline Section pull_back_section(const Section& g, const SuperdomainMorphism& phi,
                                 unsigned jet_order = default_jet_order) {
  require_same_domain(g.domain(), phi.target(), "pull_back_section");
  const Superdomain& src = phi.source();
  const unsigned m = phi.target().even_dim;
  std::vector<Expr> bodies;
  std::vector<Section> nilpotent;
  for (unsigned i = 0; i < m; ++i) {
    Expr a = phi.pullback(i).component(OddIndexSet{});
    bodies.push_back(a);
    nilpotent.push_back(phi.pullback(i) - Section::constant(src, a));
  }
  const unsigned bound = std::min(src.odd_dim + jet_order, src.odd_dim / 2);

  std::map<EvenMultiIndex, Section> powers;
  for (const auto& nu : multi_indices_up_to(m, bound)) {
    if (total_degree(nu) == 0) {
      powers.emplace(nu, Section::constant(src, Expr(1)));
      continue;
    }
    unsigned i = 0;
    while (nu[i] == 0) ++i;
    EvenMultiIndex parent = nu;
    --parent[i];
    const Section& prev = powers.at(parent);
    powers.emplace(nu, prev.is_zero() ? prev : prev * nilpotent[i]);
  }

  Section out(src);
  for (const auto& [K, coeff] : g.components()) {
    Section theta = Section::constant(src, Expr(1));
    for (unsigned j : K.members()) theta = theta * phi.pullback(m + j);
    if (theta.is_zero()) continue;
    DerivativeCache cache(coeff);
    for (const auto& [nu, np] : powers) {
      if (np.is_zero()) continue;
      const Expr& d = cache.get(nu);
      if (d.is_zero()) continue;
      Expr c = substitute(d, bodies) * Expr(Rational(1 / factorial(nu)));
      out += c * (np * theta);
    }
  }
  return out;
}

/// psi o phi, with (psi o phi)^* = phi^* o psi^*.
inline SuperdomainMorphism compose_morphisms(const SuperdomainMorphism& psi, const SuperdomainMorphism& phi,
                                             unsigned jet_order = default_jet_order) {
  require_same_domain(phi.target(), psi.source(), "compose_morphisms");
  std::vector<Section> pb;
  for (const auto& g : psi.pullbacks()) pb.push_back(pull_back_section(g, phi, jet_order));
  return SuperdomainMorphism(phi.source(), psi.target(), std::move(pb));
}

}  // namespace superweil
