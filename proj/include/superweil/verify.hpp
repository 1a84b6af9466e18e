#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superweil/catalogue.hpp"
#include "superweil/distribution.hpp"
#include "superweil/format.hpp"
#include "superweil/naturality.hpp"
#include "superweil/product.hpp"
#include "superweil/random.hpp"
#include "superweil/tangent.hpp"
#include "superweil/transit.hpp"

namespace superweil::verify {

struct Options {
  std::uint64_t seed = 1;
  double tol = 1e-7;       ///< smoothness residual tolerance
  unsigned samples = 50;   ///< smoothness sample points
  unsigned order = 6;      ///< series truncation order
  std::size_t max_dim = default_max_dim;
};

/// Relative tolerance used by the floating-point property checks.
inline constexpr double float_tol = 1e-9;

struct Check {
  explicit Check(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  std::vector<std::string> notes;

  bool pass() const { return failures == 0; }

  /// Runs one case; a returned message or an exception counts as a failure.
  void run(const std::string& label, const std::function<std::optional<std::string>()>& body) {
    ++cases;
    std::optional<std::string> problem;
    try {
      problem = body();
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    if (!problem) return;
    if (failures++ == 0) first_failure = label + ": " + *problem;
  }
};

struct Report {
  std::string suite;
  std::vector<Check> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass()) return false;
    return true;
  }

  std::string to_string() const {
    std::string out = "suite " + suite + ": " + (pass() ? "PASS" : "FAIL") + "\n";
    for (const auto& c : checks) {
      out += std::string("  [") + (c.pass() ? "pass" : "FAIL") + "] " + c.name + ": " + std::to_string(c.cases) +
             " cases, " + std::to_string(c.failures) + " failures\n";
      for (const auto& n : c.notes) out += "      " + n + "\n";
      if (!c.pass()) out += "      first counterexample: " + c.first_failure + "\n";
    }
    return out;
  }
};

namespace detail {

inline std::optional<std::string> expect(bool ok, const std::string& what) {
  if (ok) return std::nullopt;
  return what;
}

template <class S>
std::optional<std::string> same(const Element<S>& a, const Element<S>& b, const char* what) {
  bool ok;
  if constexpr (std::is_same_v<S, double>)
    ok = approx_equal(a, b, float_tol);
  else
    ok = a == b;
  if (ok) return std::nullopt;
  return std::string(what) + ": " + format_element(a) + " vs " + format_element(b);
}

}  // namespace detail

// ---------------------------------------------------------------- axioms

inline Report axioms(const Options& opt) {
  Report r{"axioms", {}};
  Rng rng(opt.seed);
  auto algebras = catalogue::algebras(opt.max_dim);

  Check comm{"supercommutativity on basis pairs (exact)"};
  Check assoc{"associativity on basis triples (exact)"};
  Check decomposition{"a = body + soul, soul^(height+1) = 0"};
  Check inverse{"a * invert(a) = 1 (exact, 100 per algebra)"};
  for (const auto& [name, a] : algebras) {
    using E = Element<Rational>;
    const std::size_t n = a->dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        comm.run(name + " (" + a->label(i) + ", " + a->label(j) + ")", [&]() -> std::optional<std::string> {
          E u = E::basis(a, i), v = E::basis(a, j);
          int sign = a->parity(i) == Parity::odd && a->parity(j) == Parity::odd ? -1 : 1;
          return detail::same(u * v, v * u * E::scalar(a, Rational(sign)), "uv vs sign*vu");
        });
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          assoc.run(name, [&]() {
            E u = E::basis(a, i), v = E::basis(a, j), w = E::basis(a, k);
            return detail::same((u * v) * w, u * (v * w), "(uv)w vs u(vw)");
          });
    for (int t = 0; t < 20; ++t) {
      E e = random_element<Rational>(rng, a, random_parity(rng));
      decomposition.run(name, [&]() -> std::optional<std::string> {
        if (auto m = detail::same(e, E::scalar(a, e.body()) + e.soul(), "decomposition")) return m;
        return detail::expect(pow(e.soul(), a->height() + 1).is_zero(), "soul^(height+1) != 0");
      });
    }
    for (int t = 0; t < 100; ++t) {
      E e = random_invertible<Rational>(rng, a);
      inverse.run(name, [&]() { return detail::same(e * invert(e), E::one(a), "a * a^-1"); });
    }
  }
  comm.notes.push_back("algebras exercised: " + std::to_string(algebras.size()));

  Check morphisms{"catalogue morphisms: unit, parity, multiplicativity, pr_B o rho = pr_A"};
  for (const auto& [name, rho] : catalogue::algebra_morphisms())
    morphisms.run(name, [&]() -> std::optional<std::string> {
      validate_morphism(rho);
      return detail::expect(compose(body_projection(rho.target()), rho) == body_projection(rho.source()),
                            "pr_B o rho != pr_A");
    });

  Check tensor{"height(A (x) B0) <= height(A) + height(B0)"};
  for (const auto& [name, a] : algebras)
    for (const auto& b : {AlgebraDescriptor::reals(), AlgebraDescriptor::dual(), AlgebraDescriptor::truncated_poly(1, 0, 3)}) {
      AlgebraPtr b0 = make_algebra(b, opt.max_dim);
      if (a->dim() * b0->dim() > opt.max_dim) continue;
      tensor.run(name + " (x) " + b.to_string(), [&]() {
        AlgebraPtr ab = tensor_even(a, b0, opt.max_dim);
        return detail::expect(ab->height() <= a->height() + b0->height() && ab->dim() == a->dim() * b0->dim(),
                              "height " + std::to_string(ab->height()) + " too large");
      });
    }

  r.checks = {comm, assoc, decomposition, inverse, morphisms, tensor};
  return r;
}

// ---------------------------------------------------------------- evaluation

inline Report eval_morphism(const Options& opt) {
  Report r{"eval-morphism", {}};
  Rng rng(opt.seed);
  auto algebras = catalogue::algebras(opt.max_dim);
  auto domains = catalogue::domains();

  Check exact{"eval(st) = eval(s)eval(t), eval(s+t), eval(1) (polynomial, exact)"};
  Check analytic{"eval(st) = eval(s)eval(t) (analytic, 1e-9 relative)"};
  for (const auto& [name, a] : algebras)
    for (int t = 0; t < 100; ++t) {
      const Superdomain& dom = domains[static_cast<std::size_t>(t) % domains.size()];
      Section s = random_section(rng, dom, random_parity(rng), false);
      Section u = random_section(rng, dom, random_parity(rng), false);
      APoint<Rational> x = random_apoint<Rational>(rng, dom, a);
      exact.run(name + " on " + dom.to_string(), [&]() -> std::optional<std::string> {
        if (auto m = detail::same(eval(s * u, x), eval(s, x) * eval(u, x), "eval(st)")) return m;
        if (auto m = detail::same(eval(s + u, x), eval(s, x) + eval(u, x), "eval(s+t)")) return m;
        return detail::same(eval(Section::constant(dom, Expr(1)), x), Element<Rational>::one(a), "eval(1)");
      });
      Section sa = random_section(rng, dom, random_parity(rng), true);
      Section ua = random_section(rng, dom, random_parity(rng), true);
      APoint<double> xd = to_double(random_apoint<Rational>(rng, dom, a));
      analytic.run(name + " on " + dom.to_string(),
                   [&]() { return detail::same(eval(sa * ua, xd), eval(sa, xd) * eval(ua, xd), "eval(st)"); });
    }

  Check derivative{"e-coefficient over R(e) vs finite differences (1e-6) and symbolic (1e-12)"};
  AlgebraPtr dual = make_algebra(AlgebraDescriptor::dual());
  for (int t = 0; t < 50; ++t) {
    const unsigned p = 1 + static_cast<unsigned>(t % 3);
    const Superdomain dom = Superdomain::whole(p, 0);
    Expr f = random_analytic(rng, p);
    std::vector<double> x0 = random_point(rng, dom), v;
    for (unsigned i = 0; i < p; ++i) v.push_back(random_rational(rng).get_d());
    derivative.run(to_string(f), [&]() -> std::optional<std::string> {
      std::vector<Element<double>> even;
      for (unsigned i = 0; i < p; ++i) {
        Element<double> c = Element<double>::scalar(dual, x0[i]);
        c[1] = v[i];
        even.push_back(c);
      }
      APoint<double> x(dom, dual, even, {});
      double got = eval(Section::constant(dom, f), x)[1];
      double symbolic = 0;
      for (unsigned i = 0; i < p; ++i) symbolic += v[i] * evaluate(differentiate(f, i), x0);
      const double h = 1e-4;
      std::vector<double> xp = x0, xm = x0;
      for (unsigned i = 0; i < p; ++i) {
        xp[i] += h * v[i];
        xm[i] -= h * v[i];
      }
      double fd = (evaluate(f, xp) - evaluate(f, xm)) / (2 * h);
      if (!approx_equal(got, fd, 1e-6)) return "finite difference " + std::to_string(fd) + " vs " + std::to_string(got);
      return detail::expect(approx_equal(got, symbolic, 1e-12), "symbolic derivative mismatch");
    });
  }

  Check locality{"eval(s) = eval(Taylor polynomial of order height+1) (1e-9)"};
  for (const auto& [name, a] : algebras)
    for (int t = 0; t < 50; ++t) {
      const Superdomain& dom = domains[static_cast<std::size_t>(t) % domains.size()];
      Section s = random_section(rng, dom, random_parity(rng), true);
      APoint<double> x = to_double(random_apoint<Rational>(rng, dom, a));
      locality.run(name + " on " + dom.to_string(), [&]() {
        std::vector<double> base = x.base();
        Section jet = taylor_polynomial<double>(s, base, a->height() + 1);
        return detail::same(eval(s, x), eval(jet, x), "jet truncation");
      });
    }

  Check functor{"push(psi o phi) = push(psi) o push(phi), base point compatibility (1e-9)"};
  auto morphisms = catalogue::superdomain_morphisms();
  for (const auto& [pn, phi] : morphisms)
    for (const auto& [qn, psi] : morphisms) {
      if (!(phi.target() == psi.source())) continue;
      SuperdomainMorphism comp = compose_morphisms(psi, phi);
      for (const auto& [name, a] : algebras) {
        APoint<double> x = to_double(random_apoint<Rational>(rng, phi.source(), a));
        functor.run("(" + qn + ") o (" + pn + ") over " + name, [&]() -> std::optional<std::string> {
          APoint<double> direct = pushforward_morphism(comp, x);
          APoint<double> stepwise = pushforward_morphism(psi, pushforward_morphism(phi, x));
          if (!approx_equal(direct, stepwise, float_tol)) return "composite pushforward differs";
          std::vector<double> b = direct.base(), want;
          for (unsigned k = 0; k < comp.target().even_dim; ++k)
            want.push_back(evaluate(comp.pullback(k).component(OddIndexSet{}), x.base()));
          for (std::size_t k = 0; k < b.size(); ++k)
            if (!approx_equal(b[k], want[k], float_tol)) return std::string("base point mismatch");
          return std::nullopt;
        });
      }
    }

  Check products{"pair/split roundtrip (exact), z(s1 (x) s2) = x(s1) y(s2) (1e-9)"};
  for (int t = 0; t < 50; ++t) {
    const auto& [name, a] = algebras[static_cast<std::size_t>(t) % algebras.size()];
    const Superdomain& u = domains[rng.below(domains.size())];
    const Superdomain& v = domains[rng.below(domains.size())];
    APoint<Rational> xr = random_apoint<Rational>(rng, u, a);
    APoint<Rational> yr = random_apoint<Rational>(rng, v, a);
    Section s1 = random_section(rng, u, random_parity(rng), true);
    Section s2 = random_section(rng, v, random_parity(rng), true);
    products.run(name + " on " + u.to_string() + " x " + v.to_string(), [&]() -> std::optional<std::string> {
      APoint<Rational> z = product_pair(xr, yr);
      auto [x2, y2] = product_split(z, u, v);
      if (!(x2 == xr) || !(y2 == yr)) return "pair/split roundtrip failed";
      APoint<double> xd = to_double(xr), yd = to_double(yr), zd = product_pair(xd, yd);
      return detail::same(eval(section_tensor(s1, s2), zd), eval(s1, xd) * eval(s2, yd), "z(s1 (x) s2)");
    });
  }

  r.checks = {exact, analytic, derivative, locality, functor, products};
  return r;
}

// ---------------------------------------------------------------- naturality

inline Report naturality(const Options& opt) {
  Report r{"naturality", {}};
  Rng rng(opt.seed);
  auto domains = catalogue::domains();
  auto morphisms = catalogue::algebra_morphisms();

  Check square{"rho(eval_A(s, x)) = eval_B(s, rho^(x)) (polynomial, exact)"};
  for (const auto& [name, rho] : morphisms)
    for (int t = 0; t < 10; ++t) {
      const Superdomain& dom = domains[static_cast<std::size_t>(t) % domains.size()];
      Section s = random_section(rng, dom, random_parity(rng), false);
      APoint<Rational> x = random_apoint<Rational>(rng, dom, rho.source());
      square.run(name + " on " + dom.to_string(), [&]() {
        return detail::same(eval(s, pushforward_algebra(rho, x)), rho(eval(s, x)), "naturality square");
      });
    }

  Check functorial{"push(id) = id, push(rho o sigma) = push(rho) o push(sigma)"};
  for (const auto& [sn, sigma] : morphisms)
    for (const auto& [rn, rho] : morphisms) {
      if (!sigma.target()->same_structure(*rho.source()) || sn.rfind("id[", 0) == 0) continue;
      AlgebraMorphism comp = compose(rho, sigma);
      for (int t = 0; t < 20; ++t) {
        const Superdomain& dom = domains[static_cast<std::size_t>(t) % domains.size()];
        APoint<Rational> x = random_apoint<Rational>(rng, dom, sigma.source());
        functorial.run("(" + rn + ") o (" + sn + ")", [&]() -> std::optional<std::string> {
          if (!(pushforward_algebra(identity_morphism(x.algebra()), x) == x)) return "push(id) != id";
          return detail::expect(pushforward_algebra(comp, x) == pushforward_algebra(rho, pushforward_algebra(sigma, x)),
                                "push(rho o sigma) differs");
        });
      }
    }

  Check agreement{"apply_series(series_from_morphism(phi)) = push(phi) (1e-9)"};
  Check series_natural{"apply_series commutes with surjective rho^ (1e-9)"};
  auto algebras = catalogue::algebras(opt.max_dim);
  for (const auto& [pn, phi] : catalogue::superdomain_morphisms()) {
    FormalSeriesFamily F = series_from_morphism(phi, opt.order);
    for (const auto& [an, a] : algebras) {
      if (a->height() > opt.order) continue;
      APoint<double> x = to_double(random_apoint<Rational>(rng, phi.source(), a));
      agreement.run(pn + " over " + an, [&]() {
        return detail::expect(approx_equal(apply_series(F, x), pushforward_morphism(phi, x), float_tol),
                              "series image differs from pushforward");
      });
    }
    for (const auto& [rn, rho] : morphisms) {
      if (!is_surjective(rho) || rho.source()->height() > opt.order) continue;
      APoint<double> x = to_double(random_apoint<Rational>(rng, phi.source(), rho.source()));
      series_natural.run(pn + " / " + rn, [&]() {
        return detail::expect(approx_equal(apply_series(F, pushforward_algebra(rho, x)),
                                           pushforward_algebra(rho, apply_series(F, x)), float_tol),
                              "naturality of the series transformation fails");
      });
    }
  }

  r.checks = {square, functorial, agreement, series_natural};
  return r;
}

// ---------------------------------------------------------------- tangent vectors and derivations

inline Report tangent(const Options& opt) {
  Report r{"tangent", {}};
  Rng rng(opt.seed);
  auto domains = catalogue::domains();
  AlgebraPtr sd = make_algebra(AlgebraDescriptor::super_dual());

  Check roundtrip{"tangent_from_superdual and apoint_from_tangent are inverse (exact)"};
  Check pairing{"v(s) = sum v0_i d_i s + sum v1_j (d s/d theta_j) at the base (exact)"};
  Check leibniz_v{"v(st) = v(s) t(x) + (-1)^(p(v)p(s)) s(x) v(t) (exact)"};
  for (int t = 0; t < 50; ++t) {
    const Superdomain& dom = domains[static_cast<std::size_t>(t) % domains.size()];
    TangentVector<Rational> v;
    for (unsigned i = 0; i < dom.even_dim; ++i) v.base.push_back(random_rational(rng));
    const Parity pv = random_parity(rng);
    for (unsigned i = 0; i < dom.even_dim; ++i) v.even_part.push_back(pv == Parity::even ? random_rational(rng) : 0);
    for (unsigned j = 0; j < dom.odd_dim; ++j) v.odd_part.push_back(pv == Parity::odd ? random_rational(rng) : 0);
    APoint<Rational> x = random_apoint<Rational>(rng, dom, sd);
    roundtrip.run(dom.to_string(), [&]() -> std::optional<std::string> {
      if (!(tangent_from_superdual(apoint_from_tangent(v, dom)) == v)) return "tangent -> point -> tangent";
      return detail::expect(apoint_from_tangent(tangent_from_superdual(x), dom) == x, "point -> tangent -> point");
    });
    Section s = random_section(rng, dom, random_parity(rng), false);
    Section u = random_section(rng, dom, random_parity(rng), false);
    pairing.run(dom.to_string(), [&]() {
      Rational want = 0;
      for (unsigned i = 0; i < dom.even_dim; ++i)
        want += v.even_part[i] * evaluate(differentiate(s.component(OddIndexSet{}), i), std::span<const Rational>(v.base));
      for (unsigned j = 0; j < dom.odd_dim; ++j)
        want += v.odd_part[j] * evaluate(odd_derivative(s, j).component(OddIndexSet{}), std::span<const Rational>(v.base));
      return detail::expect(tangent_apply(v, s) == want, "pairing differs from the coordinate formula");
    });
    leibniz_v.run(dom.to_string(), [&]() {
      auto at = [&](const Section& f) { return evaluate(f.component(OddIndexSet{}), std::span<const Rational>(v.base)); };
      const Parity ps = *s.parity();
      const int sign = pv == Parity::odd && ps == Parity::odd ? -1 : 1;
      Rational lhs = tangent_apply(v, s * u);
      Rational rhs = tangent_apply(v, s) * at(u) + sign * at(s) * tangent_apply(v, u);
      return detail::expect(lhs == rhs, "tangent Leibniz rule fails");
    });
  }

  Check leibniz{"X(st) = X(s)x(t) + (-1)^(p(X)p(s)) x(s)X(t) (exact, 50 pairs)"};
  Check values{"derivation_from_values reproduces its values on the coordinates"};
  auto algebras = catalogue::algebras(opt.max_dim);
  for (int t = 0; t < 50; ++t) {
    const Superdomain& dom = domains[static_cast<std::size_t>(t) % domains.size()];
    const auto& [an, a] = algebras[static_cast<std::size_t>(t) % algebras.size()];
    APoint<Rational> x = random_apoint<Rational>(rng, dom, a);
    const Parity px = random_parity(rng);
    std::vector<Element<Rational>> vals;
    for (unsigned i = 0; i < dom.even_dim; ++i) vals.push_back(random_element<Rational>(rng, a, px));
    for (unsigned j = 0; j < dom.odd_dim; ++j) vals.push_back(random_element<Rational>(rng, a, px + Parity::odd));
    Section s = random_section(rng, dom, random_parity(rng), false);
    Section u = random_section(rng, dom, random_parity(rng), false);
    leibniz.run(an + " on " + dom.to_string(), [&]() {
      Derivation<Rational> X = derivation_from_values(x, vals);
      const int sign = px == Parity::odd && *s.parity() == Parity::odd ? -1 : 1;
      Element<Rational> lhs = derivation_apply(X, s * u);
      Element<Rational> rhs =
          derivation_apply(X, s) * eval(u, x) + eval(s, x) * derivation_apply(X, u) * Element<Rational>::scalar(a, Rational(sign));
      return detail::same(lhs, rhs, "Leibniz");
    });
    values.run(an + " on " + dom.to_string(), [&]() -> std::optional<std::string> {
      Derivation<Rational> X = derivation_from_values(x, vals);
      for (unsigned i = 0; i < dom.even_dim; ++i)
        if (auto m = detail::same(derivation_apply(X, Section::even_coordinate(dom, i)), vals[i], "X(x_i)")) return m;
      for (unsigned j = 0; j < dom.odd_dim; ++j)
        if (auto m = detail::same(derivation_apply(X, Section::odd_coordinate(dom, j)), vals[dom.even_dim + j], "X(theta_j)"))
          return m;
      return std::nullopt;
    });
  }

  r.checks = {roundtrip, pairing, leibniz_v, leibniz, values};
  return r;
}

// ---------------------------------------------------------------- distributions

template <class S>
Distribution<S> random_distribution(Rng& rng, const Superdomain& dom, unsigned order) {
  Distribution<S> v;
  v.domain = dom;
  v.order = order;
  for (unsigned i = 0; i < dom.even_dim; ++i) v.support.push_back(ScalarTraits<S>::from_rational(random_rational(rng)));
  for (const auto& m : monomials_up_to(dom, order)) {
    if (rng.below(3) == 0) continue;
    Rational a = random_rational(rng);
    if (sgn(a) != 0) v.coefficients.emplace(m, ScalarTraits<S>::from_rational(a));
  }
  return v;
}

inline Report distributions(const Options& opt) {
  Report r{"distributions", {}};
  Rng rng(opt.seed);

  Check roundtrip{"distribution_from(distribution_to_apoint(v)) = v, p,q <= 2, order <= 4 (exact)"};
  Check pairing{"v(m) = omega(x(m)) on every spanning monomial (exact)"};
  for (unsigned p = 0; p <= 2; ++p)
    for (unsigned q = 0; q <= 2; ++q)
      for (unsigned k = 0; k <= 4; ++k) {
        const Superdomain dom = Superdomain::whole(p, q);
        Distribution<Rational> v = random_distribution<Rational>(rng, dom, k);
        const std::string label = dom.to_string() + " order " + std::to_string(k);
        roundtrip.run(label, [&]() {
          auto jr = distribution_to_apoint(v, opt.max_dim);
          return detail::expect(distribution_from<Rational>(jr.omega, jr.point) == v, "roundtrip changed coefficients");
        });
        pairing.run(label, [&]() -> std::optional<std::string> {
          auto jr = distribution_to_apoint(v, opt.max_dim);
          for (const auto& m : monomials_up_to(dom, k)) {
            Section ms = monomial_section(dom, std::span<const Rational>(v.support), m);
            Element<Rational> img = eval(ms, jr.point);
            Rational lhs = 0;
            for (std::size_t i = 0; i < img.size(); ++i) lhs += jr.omega[i] * img[i];
            if (lhs != v.apply(ms)) return "pairing differs on " + monomial_label(m);
          }
          return std::nullopt;
        });
      }

  Check from_point{"distribution_from(omega, x)(s) = omega(x(s)) (exact)"};
  auto domains = catalogue::domains();
  for (const auto& [an, a] : catalogue::algebras(opt.max_dim))
    for (int t = 0; t < 5; ++t) {
      const Superdomain& dom = domains[static_cast<std::size_t>(t) % domains.size()];
      APoint<Rational> x = random_apoint<Rational>(rng, dom, a);
      std::vector<Rational> omega;
      for (std::size_t i = 0; i < a->dim(); ++i) omega.push_back(random_rational(rng));
      Section s = random_section(rng, dom, random_parity(rng), false);
      from_point.run(an + " on " + dom.to_string(), [&]() {
        Distribution<Rational> v = distribution_from<Rational>(omega, x);
        Element<Rational> img = eval(s, x);
        Rational want = 0;
        for (std::size_t i = 0; i < img.size(); ++i) want += omega[i] * img[i];
        return detail::expect(v.apply(s) == want, "distribution pairing differs from omega o x");
      });
    }

  r.checks = {roundtrip, pairing, from_point};
  return r;
}

// ---------------------------------------------------------------- transitivity

template <class S>
ClassicalWeilPoint<S> random_classical_point(Rng& rng, const Superdomain& u, const AlgebraPtr& a, const AlgebraPtr& b0) {
  FlatChart chart = make_flat_chart(u, a);
  std::vector<Element<S>> values;
  for (std::size_t k = 0; k < chart.slots.size(); ++k) {
    Element<S> e = random_element<S>(rng, b0, Parity::even);
    const auto [coord, basis] = chart.slots[k];
    if (coord < u.even_dim && basis == 0)
      e[0] = ScalarTraits<S>::from_rational(random_rational_in(rng, u.box[coord]));
    values.push_back(std::move(e));
  }
  return make_classical_point<S>(std::move(chart), b0, std::move(values));
}

inline Report transitivity(const Options& opt) {
  Report r{"transitivity", {}};
  Rng rng(opt.seed);
  const std::vector<AlgebraDescriptor> weils = {AlgebraDescriptor::grassmann(1), AlgebraDescriptor::grassmann(2),
                                                 AlgebraDescriptor::super_dual()};
  const std::vector<AlgebraDescriptor> evens = {AlgebraDescriptor::dual(), AlgebraDescriptor::truncated_poly(1, 0, 3)};
  const std::vector<Superdomain> domains = {Superdomain::whole(1, 1), Superdomain::whole(2, 1), Superdomain::whole(1, 2)};

  Check valid{"transit output is a valid A (x) B0 point; reshuffle and inverse compose to the identity (exact)"};
  Check multiplicative{"Y(st) = Y(s)Y(t) on 10 random section pairs (polynomial exact, analytic 1e-9)"};
  Check coordinates{"Y(s) = eval(s, transit(X)), coordinates reshuffle identically"};
  Check real{"B0 = R recovers the original A-point"};
  for (const auto& ad : weils)
    for (const auto& bd : evens)
      for (const auto& u : domains) {
        AlgebraPtr a = make_algebra(ad, opt.max_dim), b0 = make_algebra(bd, opt.max_dim);
        const std::string label = ad.to_string() + " (x) " + bd.to_string() + " on " + u.to_string();
        ClassicalWeilPoint<Rational> X = random_classical_point<Rational>(rng, u, a, b0);
        valid.run(label, [&]() -> std::optional<std::string> {
          APoint<Rational> z = transit(X, opt.max_dim);
          if (!(transit_inverse(z).point == X.point)) return "inverse o transit != id";
          return detail::expect(transit(transit_inverse(z), opt.max_dim) == z, "transit o inverse != id");
        });
        for (int t = 0; t < 10; ++t) {
          Section s = random_section(rng, u, random_parity(rng), false);
          Section w = random_section(rng, u, random_parity(rng), false);
          multiplicative.run(label, [&]() {
            AlgebraPtr ab = transit(X, opt.max_dim).algebra();
            return detail::same(induced_functional(s * w, X, ab),
                                induced_functional(s, X, ab) * induced_functional(w, X, ab), "Y(st)");
          });
        }
        for (int t = 0; t < 3; ++t) {
          Section s = random_section(rng, u, random_parity(rng), true);
          Section w = random_section(rng, u, random_parity(rng), true);
          ClassicalWeilPoint<double> Xd{X.chart, to_double(X.point)};
          multiplicative.run(label + " (analytic)", [&]() {
            AlgebraPtr ab = transit(Xd, opt.max_dim).algebra();
            return detail::same(induced_functional(s * w, Xd, ab),
                                induced_functional(s, Xd, ab) * induced_functional(w, Xd, ab), "Y(st)");
          });
        }
        Section s = random_section(rng, u, random_parity(rng), false);
        coordinates.run(label, [&]() -> std::optional<std::string> {
          APoint<Rational> z = transit(X, opt.max_dim);
          for (unsigned i = 0; i < u.even_dim; ++i)
            if (auto m = detail::same(induced_functional(Section::even_coordinate(u, i), X, z.algebra()),
                                      z.even_values()[i], "Y(x_i)"))
              return m;
          for (unsigned j = 0; j < u.odd_dim; ++j)
            if (auto m = detail::same(induced_functional(Section::odd_coordinate(u, j), X, z.algebra()),
                                      z.odd_values()[j], "Y(theta_j)"))
              return m;
          return detail::same(induced_functional(s, X, z.algebra()), eval(s, z), "Y(s) vs eval");
        });
        APoint<Rational> x = random_apoint<Rational>(rng, u, a);
        real.run(label, [&]() {
          APoint<Rational> back = transit(flatten(x), opt.max_dim);
          if (!back.algebra()->same_structure(*a)) return std::optional<std::string>("A (x) R differs from A");
          std::vector<Element<Rational>> even, odd;
          for (const auto& e : back.even_values()) even.push_back(e.rebase(a));
          for (const auto& e : back.odd_values()) odd.push_back(e.rebase(a));
          return detail::expect(APoint<Rational>(u, a, even, odd) == x, "reals do not recover x");
        });
      }

  r.checks = {valid, multiplicative, coordinates, real};
  return r;
}

// ---------------------------------------------------------------- smoothness

inline Report smoothness(const Options& opt) {
  Report r{"smoothness", {}};
  Check catalogue_pass{"series_from_morphism passes the recursion check"};
  Check counter{"counter-example fixture fails with the documented witness"};
  Check roundtrip{"morphism_from_series o series_from_morphism reproduces pullbacks (1e-9)"};
  Check zero{"zero family passes"};
  Rng rng(opt.seed);
  for (const auto& [name, phi] : catalogue::superdomain_morphisms()) {
    FormalSeriesFamily F = series_from_morphism(phi, opt.order);
    catalogue_pass.run(name, [&]() -> std::optional<std::string> {
      SmoothnessResult res = smoothness_check(F, opt.samples, opt.tol, opt.seed);
      if (res.pass) return std::nullopt;
      return "witness " + res.witness->to_string();
    });
    std::vector<std::vector<double>> points;
    for (int t = 0; t < 50; ++t) points.push_back(random_point(rng, phi.source()));
    roundtrip.run(name, [&]() -> std::optional<std::string> {
      SuperdomainMorphism back = morphism_from_series(F, opt.samples, opt.tol, opt.seed);
      for (std::size_t k = 0; k < phi.pullbacks().size(); ++k) {
        Section a = phi.pullback(k), b = back.pullback(k);
        for (const auto& J : odd_subsets(phi.source().odd_dim, phi.source().odd_dim))
          for (const auto& x : points)
            if (!approx_equal(evaluate(a.component(J), x), evaluate(b.component(J), x), float_tol))
              return "pullback " + std::to_string(k + 1) + " differs at " + point_string(x);
      }
      return std::nullopt;
    });
  }
  counter.run("f_{0,{}} = x, f_{1,{}} = 0", [&]() -> std::optional<std::string> {
    SmoothnessResult res = smoothness_check(catalogue::counter_example(opt.order), opt.samples, opt.tol, opt.seed);
    if (res.pass) return "counter-example passed the check";
    const auto& w = *res.witness;
    counter.notes.push_back("witness: " + w.to_string());
    return detail::expect(w.slot == 0 && w.variable == 0 && total_degree(w.index.even) == 0 && w.index.odd.size() == 0 &&
                              w.lhs == 1.0 && w.rhs == 0.0,
                          "unexpected witness " + w.to_string());
  });
  zero.run("zero family 2|1 -> 1|1", [&]() {
    FormalSeriesFamily Z(Superdomain::whole(2, 1), Superdomain::whole(1, 1), opt.order, {{}, {}});
    return detail::expect(smoothness_check(Z, opt.samples, opt.tol, opt.seed).pass, "zero family failed");
  });
  r.checks = {catalogue_pass, counter, roundtrip, zero};
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"axioms",       "eval-morphism", "naturality", "tangent",
                                                  "distributions", "transitivity", "smoothness"};
  return names;
}

/// Runs a named suite; nullopt for an unknown name.
inline std::optional<Report> run_suite(const std::string& name, const Options& opt) {
  if (name == "axioms") return axioms(opt);
  if (name == "eval-morphism") return eval_morphism(opt);
  if (name == "naturality") return naturality(opt);
  if (name == "tangent") return tangent(opt);
  if (name == "distributions") return distributions(opt);
  if (name == "transitivity") return transitivity(opt);
  if (name == "smoothness") return smoothness(opt);
  return std::nullopt;
}

}  // namespace superweil::verify
