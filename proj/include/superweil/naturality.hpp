#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superweil/apoint.hpp"
#include "superweil/distribution.hpp"
#include "superweil/errors.hpp"
#include "superweil/random.hpp"
#include "superweil/supermorphism.hpp"

namespace superweil {

/// A natural transformation U_A -> V_A as truncated formal series: slot k of the
/// image is sum_{nu,J} f^k_{nu,J}(base) soul^nu theta~^J.
class FormalSeriesFamily {
 public:
  using Coefficients = std::map<SuperMonomial, Expr>;

  FormalSeriesFamily(Superdomain source, Superdomain target, unsigned order, std::vector<Coefficients> coeffs,
                     RangeCheckOptions range = {})
      : source_(std::move(source)), target_(std::move(target)), order_(order), coeffs_(std::move(coeffs)) {
    const std::size_t slots = target_.even_dim + target_.odd_dim;
    if (coeffs_.size() != slots)
      throw DomainMismatch("series family needs " + std::to_string(slots) + " coefficient slots");
    for (std::size_t k = 0; k < slots; ++k) {
      const Parity want = k < target_.even_dim ? Parity::even : Parity::odd;
      for (auto it = coeffs_[k].begin(); it != coeffs_[k].end();) {
        const auto& [m, f] = *it;
        if (m.even.size() != source_.even_dim || m.odd.span() > source_.odd_dim)
          throw DomainMismatch("series coefficient index does not fit the source " + source_.to_string());
        if (variable_count(f) > source_.even_dim)
          throw DomainMismatch("series coefficient uses a variable outside the source");
        if (m.degree() > order_) throw InvalidArgument("series coefficient above the truncation order");
        if (f.is_zero()) {
          it = coeffs_[k].erase(it);
          continue;
        }
        if (m.parity() != want)
          throw ParityError("slot " + std::to_string(k + 1) + " has a coefficient of the wrong parity at J=" +
                            to_string(m.odd));
        ++it;
      }
    }
    for (const auto& x : sample_grid(source_, range)) {
      std::vector<double> y;
      try {
        for (unsigned k = 0; k < target_.even_dim; ++k) y.push_back(evaluate(body_coefficient(k), x));
      } catch (const EvaluationDomainError& e) {
        throw DomainMismatch("range condition: coefficient undefined at " + point_string(x) + " (" + e.what() + ")");
      }
      if (!target_.contains(y))
        throw DomainMismatch("range condition fails at " + point_string(x) + ": image " + point_string(y) +
                             " leaves the target box");
    }
  }

  const Superdomain& source() const { return source_; }
  const Superdomain& target() const { return target_; }
  unsigned order() const { return order_; }
  const std::vector<Coefficients>& coefficients() const { return coeffs_; }

  Expr coefficient(std::size_t k, const SuperMonomial& m) const {
    auto it = coeffs_.at(k).find(m);
    return it == coeffs_[k].end() ? Expr(0) : it->second;
  }
  Expr body_coefficient(std::size_t k) const {
    return coefficient(k, SuperMonomial{EvenMultiIndex(source_.even_dim, 0), {}});
  }

 private:
  Superdomain source_;
  Superdomain target_;
  unsigned order_;
  std::vector<Coefficients> coeffs_;
};

template <class S>
APoint<S> apply_series(const FormalSeriesFamily& F, const APoint<S>& x) {
  require_same_domain(x.domain(), F.source(), "apply_series");
  const AlgebraPtr& alg = x.algebra();
  const unsigned h = alg->height();
  if (h > F.order())
    throw TruncationError("algebra height " + std::to_string(h) + " exceeds the series truncation order " +
                          std::to_string(F.order()));
  const std::vector<S> base = x.base();
  std::vector<Element<S>> souls;
  for (const auto& v : x.even_values()) souls.push_back(v.soul());

  std::map<SuperMonomial, Element<S>> monomials;
  for (const auto& m : monomials_up_to(F.source(), h)) {
    Element<S> e = Element<S>::one(alg);
    for (unsigned i = 0; i < m.even.size(); ++i) e = e * pow(souls[i], m.even[i]);
    for (unsigned j : m.odd.members()) e = e * x.odd_values()[j];
    monomials.emplace(m, std::move(e));
  }

  std::vector<Element<S>> even, odd;
  const auto& tgt = F.target();
  for (std::size_t k = 0; k < tgt.even_dim + tgt.odd_dim; ++k) {
    Element<S> out(alg);
    for (const auto& [m, f] : F.coefficients()[k]) {
      auto it = monomials.find(m);
      if (it == monomials.end() || it->second.is_zero()) continue;
      out += it->second * evaluate(f, std::span<const S>(base));
    }
    (k < tgt.even_dim ? even : odd).push_back(std::move(out));
  }
  return APoint<S>(tgt, alg, std::move(even), std::move(odd));
}

/// f^k_{nu,J} = (1/nu!) d^nu s_{k,J} for phi^*(y_k) = sum_J s_{k,J} theta^J.
inline FormalSeriesFamily series_from_morphism(const SuperdomainMorphism& phi, unsigned order) {
  const Superdomain& src = phi.source();
  std::vector<FormalSeriesFamily::Coefficients> coeffs;
  for (const auto& pb : phi.pullbacks()) {
    FormalSeriesFamily::Coefficients c;
    for (const auto& [J, s] : pb.components()) {
      if (J.size() > order) continue;
      DerivativeCache cache(s);
      for (const auto& nu : multi_indices_up_to(src.even_dim, order - J.size())) {
        const Expr& d = cache.get(nu);
        if (d.is_zero()) continue;
        Rational fact = factorial(nu);
        c.emplace(SuperMonomial{nu, J}, fact == 1 ? d : d * Expr(Rational(1 / fact)));
      }
    }
    coeffs.push_back(std::move(c));
  }
  return FormalSeriesFamily(src, phi.target(), order, std::move(coeffs));
}

/// First violation of d_i f_{nu,J} = (nu_i + 1) f_{nu + delta_i, J}.
struct SmoothnessWitness {
  std::size_t slot;  // k, 0-based
  unsigned variable; // i, 0-based
  SuperMonomial index;
  std::vector<double> point;
  double lhs;
  double rhs;

  std::string to_string() const {
    std::string nu;
    for (std::size_t i = 0; i < index.even.size(); ++i) nu += (i ? "," : "") + std::to_string(index.even[i]);
    return "k=" + std::to_string(slot + 1) + " i=" + std::to_string(variable + 1) + " nu=(" + nu +
           ") J=" + superweil::to_string(index.odd) + " at " + point_string(point) +
           ": d_i f = " + ScalarTraits<double>::to_string(lhs) + ", (nu_i+1) f_{nu+delta_i} = " +
           ScalarTraits<double>::to_string(rhs);
  }
};

struct SmoothnessResult {
  bool pass = true;
  std::size_t checks = 0;
  std::optional<SmoothnessWitness> witness;
};

inline SmoothnessResult smoothness_check(const FormalSeriesFamily& F, unsigned samples, double tol,
                                         std::uint64_t seed = 1) {
  const Superdomain& src = F.source();
  Rng rng(seed);
  std::vector<std::vector<double>> points;
  for (unsigned s = 0; s < samples; ++s) points.push_back(random_point(rng, src));

  SmoothnessResult result;
  if (F.order() == 0) return result;
  const auto monomials = monomials_up_to(src, F.order() - 1);
  for (std::size_t k = 0; k < F.coefficients().size(); ++k)
    for (const auto& m : monomials)
      for (unsigned i = 0; i < src.even_dim; ++i) {
        SuperMonomial up = m;
        ++up.even[i];
        Expr lhs_expr = differentiate(F.coefficient(k, m), i);
        Expr rhs_expr = F.coefficient(k, up) * Expr(static_cast<long>(m.even[i] + 1));
        if (lhs_expr.is_zero() && rhs_expr.is_zero()) continue;
        for (const auto& x : points) {
          double lhs = evaluate(lhs_expr, x), rhs = evaluate(rhs_expr, x);
          ++result.checks;
          if (std::abs(lhs - rhs) > tol * (1.0 + std::max(std::abs(lhs), std::abs(rhs)))) {
            result.pass = false;
            result.witness = SmoothnessWitness{k, i, m, x, lhs, rhs};
            return result;
          }
        }
      }
  return result;
}

/// phi^*(y_k) = sum_J f^k_{0,J} theta^J, after the recursion check.
inline SuperdomainMorphism morphism_from_series(const FormalSeriesFamily& F, unsigned samples = 50, double tol = 1e-7,
                                                std::uint64_t seed = 1) {
  SmoothnessResult r = smoothness_check(F, samples, tol, seed);
  if (!r.pass) throw NotSmooth("series family fails the smoothness recursion: " + r.witness->to_string());
  std::vector<Section> pullbacks;
  for (const auto& c : F.coefficients()) {
    Section s(F.source());
    for (const auto& [m, f] : c)
      if (total_degree(m.even) == 0) s.add_component(m.odd, f);
    pullbacks.push_back(std::move(s));
  }
  return SuperdomainMorphism(F.source(), F.target(), std::move(pullbacks));
}

}  // namespace superweil
