#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "superweil/algebra.hpp"
#include "superweil/morphism.hpp"
#include "superweil/naturality.hpp"
#include "superweil/supermorphism.hpp"

namespace superweil::catalogue {

struct NamedAlgebra {
  std::string name;
  AlgebraPtr algebra;
};

/// R, R(e), R(e,eps), grassmann(1..4), poly(1,1,3), poly(2,1,4), grassmann(1) (x) R(e).
inline std::vector<NamedAlgebra> algebras(std::size_t max_dim = default_max_dim) {
  std::vector<AlgebraDescriptor> descs = {
      AlgebraDescriptor::reals(),           AlgebraDescriptor::dual(),
      AlgebraDescriptor::super_dual(),      AlgebraDescriptor::grassmann(1),
      AlgebraDescriptor::grassmann(2),      AlgebraDescriptor::grassmann(3),
      AlgebraDescriptor::grassmann(4),      AlgebraDescriptor::truncated_poly(1, 1, 3),
      AlgebraDescriptor::truncated_poly(2, 1, 4),
      AlgebraDescriptor::tensor(AlgebraDescriptor::grassmann(1), AlgebraDescriptor::dual())};
  std::vector<NamedAlgebra> out;
  for (const auto& d : descs) out.push_back({d.to_string(), make_algebra(d, max_dim)});
  return out;
}

inline AlgebraPtr algebra(const AlgebraDescriptor& d) { return make_algebra(d); }

struct NamedMorphism {
  std::string name;
  AlgebraMorphism morphism;
};

/// Body projections and identities of every catalogue algebra, plus a fixed
/// list of generator-image morphisms and refinement projections.
inline std::vector<NamedMorphism> algebra_morphisms() {
  std::vector<NamedMorphism> out;
  for (const auto& [name, a] : algebras()) {
    out.push_back({"pr[" + name + "]", body_projection(a)});
    out.push_back({"id[" + name + "]", identity_morphism(a)});
  }
  using E = Element<Rational>;
  auto g2 = algebra(AlgebraDescriptor::grassmann(2));
  auto g1 = algebra(AlgebraDescriptor::grassmann(1));
  auto g3 = algebra(AlgebraDescriptor::grassmann(3));
  auto g4 = algebra(AlgebraDescriptor::grassmann(4));
  auto sd = algebra(AlgebraDescriptor::super_dual());
  auto dual = algebra(AlgebraDescriptor::dual());
  auto p113 = algebra(AlgebraDescriptor::truncated_poly(1, 1, 3));
  auto p214 = algebra(AlgebraDescriptor::truncated_poly(2, 1, 4));
  auto g1d = algebra(AlgebraDescriptor::tensor(AlgebraDescriptor::grassmann(1), AlgebraDescriptor::dual()));

  out.push_back({"superdual->grassmann(2): x->t1 t2, t->t1",
                 make_morphism(sd, g2, {E::odd_generator(g2, 0) * E::odd_generator(g2, 1), E::odd_generator(g2, 0)})});
  out.push_back({"grassmann(2)->grassmann(1): t2->0", make_morphism(g2, g1, {E::odd_generator(g1, 0), E(g1)})});
  out.push_back({"grassmann(4)->grassmann(3): t4->0",
                 make_morphism(g4, g3, {E::odd_generator(g3, 0), E::odd_generator(g3, 1), E::odd_generator(g3, 2), E(g3)})});
  out.push_back({"grassmann(3)->grassmann(4): inclusion",
                 make_morphism(g3, g4, {E::odd_generator(g4, 0), E::odd_generator(g4, 1), E::odd_generator(g4, 2)})});
  out.push_back({"grassmann(2)->grassmann(2): t1<->t2",
                 make_morphism(g2, g2, {E::odd_generator(g2, 1), E::odd_generator(g2, 0)})});
  out.push_back({"dual->grassmann(2): x->t1 t2",
                 make_morphism(dual, g2, {E::odd_generator(g2, 0) * E::odd_generator(g2, 1)})});
  out.push_back({"poly(1,1,3)->superdual", make_morphism(p113, sd, {E::even_generator(sd, 0), E::odd_generator(sd, 0)})});
  out.push_back({"poly(2,1,4)->poly(1,1,3): x2->x1^2",
                 make_morphism(p214, p113,
                               {E::even_generator(p113, 0), pow(E::even_generator(p113, 0), 2),
                                E::odd_generator(p113, 0)})});
  out.push_back({"grassmann(1)(x)dual->dual: t->0", make_morphism(g1d, dual, {E::even_generator(dual, 0), E(dual)})});
  out.push_back({"poly(1,1,3)->grassmann(2): x->2 t1 t2, t->t2",
                 make_morphism(p113, g2,
                               {E::odd_generator(g2, 0) * E::odd_generator(g2, 1) * E::scalar(g2, Rational(2)),
                                E::odd_generator(g2, 1)})});
  Refinement r1 = common_refinement(dual, g1);
  out.push_back({"refine(dual,grassmann(1))->dual", r1.to_first});
  out.push_back({"refine(dual,grassmann(1))->grassmann(1)", r1.to_second});
  Refinement r2 = common_refinement(g1, g2);
  out.push_back({"refine(grassmann(1),grassmann(2))->grassmann(1)", r2.to_first});
  out.push_back({"refine(grassmann(1),grassmann(2))->grassmann(2)", r2.to_second});
  return out;
}

/// Small superdomains with p, q <= 3 used by the random suites.
inline std::vector<Superdomain> domains() {
  return {Superdomain::whole(1, 0), Superdomain::whole(0, 2), Superdomain::whole(1, 1), Superdomain::whole(2, 1),
          Superdomain::whole(1, 2), Superdomain::whole(2, 2), Superdomain::whole(3, 3)};
}

struct NamedSuperMorphism {
  std::string name;
  SuperdomainMorphism morphism;
};

/// Ten superdomain morphisms covering polynomial, analytic, odd-mixing and boxed cases.
inline std::vector<NamedSuperMorphism> superdomain_morphisms() {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<NamedSuperMorphism> out;
  auto x = [](unsigned i) { return var(i); };
  auto th = [](const Superdomain& d, unsigned j) { return Section::odd_coordinate(d, j); };
  auto fn = [](const Superdomain& d, const Expr& e) { return Section::constant(d, e); };

  const auto d10 = Superdomain::whole(1, 0), d11 = Superdomain::whole(1, 1), d12 = Superdomain::whole(1, 2),
             d02 = Superdomain::whole(0, 2), d22 = Superdomain::whole(2, 2), d21 = Superdomain::whole(2, 1),
             d33 = Superdomain::whole(3, 3);
  const auto pos = Superdomain::with_box(0, {Interval{0.0, inf}});

  out.push_back({"identity on 1|1", SuperdomainMorphism::identity(d11)});
  out.push_back({"x' = x^2", SuperdomainMorphism(d10, d10, {fn(d10, pow(x(0), 2))})});
  out.push_back({"x' = sin(x)", SuperdomainMorphism(d10, d10, {fn(d10, sin(x(0)))})});
  out.push_back({"x' = exp(x), t' = x t1",
                 SuperdomainMorphism(d11, d11, {fn(d11, exp(x(0))), x(0) * th(d11, 0)})});
  out.push_back({"x' = x + t1 t2", SuperdomainMorphism(d12, d10, {fn(d12, x(0)) + th(d12, 0) * th(d12, 1)})});
  out.push_back({"x' = t1 t2 on 0|2", SuperdomainMorphism(d02, d10, {th(d02, 0) * th(d02, 1)})});
  out.push_back({"2|2 -> 2|1 mixing",
                 SuperdomainMorphism(d22, d21,
                                     {fn(d22, x(0) * x(1)) + th(d22, 0) * th(d22, 1), fn(d22, exp(x(0))),
                                      x(1) * th(d22, 0) + cos(x(0)) * th(d22, 1)})});
  out.push_back({"3|3 -> 1|1",
                 SuperdomainMorphism(d33, d11,
                                     {fn(d33, x(0) + x(1) * x(2)) + th(d33, 0) * th(d33, 1) + th(d33, 1) * th(d33, 2),
                                      th(d33, 0) * th(d33, 1) * th(d33, 2) + x(0) * th(d33, 0)})});
  out.push_back({"x' = log(x) on (0, inf)", SuperdomainMorphism(pos, d10, {fn(pos, log(x(0)))})});
  out.push_back({"x' = exp(x) + inv(1 + x^2) into (0, inf)",
                 SuperdomainMorphism(d10, pos, {fn(d10, exp(x(0)) + inv(Expr(1) + pow(x(0), 2)))})});
  return out;
}

/// f_{0,{}} = x, f_{delta,{}} = 0: natural on R-points but not induced by a morphism.
inline FormalSeriesFamily counter_example(unsigned order = 6) {
  const auto d = Superdomain::whole(1, 0);
  FormalSeriesFamily::Coefficients c;
  c.emplace(SuperMonomial{{0}, {}}, var(0));
  return FormalSeriesFamily(d, d, order, {c});
}

}  // namespace superweil::catalogue
