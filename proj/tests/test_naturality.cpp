#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace superweil;
using namespace testing;

namespace {

using D = AlgebraDescriptor;
const Expr x = var(0);

SuperMonomial mono(EvenMultiIndex nu, OddIndexSet J = {}) { return SuperMonomial{std::move(nu), J}; }

APoint<Rational> shifted_dual(long base) {
  auto a = alg(D::dual());
  return APoint<Rational>(Superdomain::whole(1, 0), a, {scalar(a, base) + xgen(a, 0)}, {});
}

}  // namespace

TEST_CASE("series from a morphism", "[naturality]") {
  auto d10 = Superdomain::whole(1, 0);
  SuperdomainMorphism sq(d10, d10, {Section::constant(d10, pow(x, 2))});
  FormalSeriesFamily F = series_from_morphism(sq, 4);
  CHECK(same_function(F.coefficient(0, mono({0})), pow(x, 2), 1));
  CHECK(same_function(F.coefficient(0, mono({1})), Expr(2) * x, 1));
  CHECK(same_function(F.coefficient(0, mono({2})), Expr(1), 1));
  CHECK(F.coefficient(0, mono({3})).is_zero());

  SECTION("sin gives the Taylor coefficients cos(x)/1!, -sin(x)/2!, ...") {
    SuperdomainMorphism s(d10, d10, {Section::constant(d10, sin(x))});
    FormalSeriesFamily G = series_from_morphism(s, 5);
    CHECK(same_function(G.coefficient(0, mono({1})), cos(x), 1));
    CHECK(same_function(G.coefficient(0, mono({2})), Expr(Rational(-1, 2)) * sin(x), 1));
    CHECK(same_function(G.coefficient(0, mono({3})), Expr(Rational(-1, 6)) * cos(x), 1));
  }
  SECTION("the identity of 1|1 has two coefficients") {
    auto d11 = Superdomain::whole(1, 1);
    SuperdomainMorphism id(d11, d11, {Section::even_coordinate(d11, 0), Section::odd_coordinate(d11, 0)});
    FormalSeriesFamily G = series_from_morphism(id, 3);
    CHECK(G.coefficients()[0].size() == 2);
    CHECK(G.coefficients()[1].size() == 1);
    CHECK(same_function(G.coefficient(1, mono({0}, OddIndexSet::single(0))), Expr(1), 1));
  }
}

TEST_CASE("applying a series family", "[naturality]") {
  auto d10 = Superdomain::whole(1, 0);
  SuperdomainMorphism sq(d10, d10, {Section::constant(d10, pow(x, 2))});
  APoint<Rational> p = shifted_dual(3);
  CHECK(apply_series(series_from_morphism(sq, 4), p) == pushforward_morphism(sq, p));

  SECTION("the counter-example keeps the body and drops the soul") {
    APoint<Rational> image = apply_series(catalogue::counter_example(), p);
    const auto& a = p.algebra();
    CHECK(image.even_values()[0] == scalar(a, 3));
  }
  SECTION("heights above the order are rejected") {
    auto a = alg(D::truncated_poly(1, 0, 6));
    APoint<Rational> q(d10, a, {scalar(a, 1) + xgen(a, 0)}, {});
    CHECK_THROWS_AS(apply_series(series_from_morphism(sq, 3), q), TruncationError);
  }
  SECTION("a random super point matches the morphism pushforward") {
    Rng rng(23);
    for (const auto& [name, phi] : catalogue::superdomain_morphisms()) {
      auto g = alg(D::grassmann(phi.source().odd_dim + 1));
      auto a = alg(D::truncated_poly(phi.source().even_dim, 1, 3));
      for (const auto& A : {g, a}) {
        APoint<Rational> q = random_apoint<Rational>(rng, phi.source(), A);
        APoint<double> got = apply_series(series_from_morphism(phi, 6), to_double(q));
        APoint<double> want = pushforward_morphism(phi, to_double(q));
        INFO(name);
        CHECK(approx_equal(got, want, 1e-9));
      }
    }
  }
}

TEST_CASE("smoothness recursion", "[naturality]") {
  auto d10 = Superdomain::whole(1, 0);
  for (const auto& [name, phi] : catalogue::superdomain_morphisms()) {
    INFO(name);
    auto r = smoothness_check(series_from_morphism(phi, 6), 20, 1e-7);
    CHECK(r.pass);
  }

  SECTION("the counter-example fails at k=1, i=1, nu=(0)") {
    auto r = smoothness_check(catalogue::counter_example(), 10, 1e-7);
    REQUIRE_FALSE(r.pass);
    REQUIRE(r.witness);
    CHECK(r.witness->slot == 0);
    CHECK(r.witness->variable == 0);
    CHECK(r.witness->index == mono({0}));
    CHECK(r.witness->lhs == 1.0);
    CHECK(r.witness->rhs == 0.0);
    CHECK_THROWS_AS(morphism_from_series(catalogue::counter_example()), NotSmooth);
  }
  SECTION("the zero family is smooth") {
    FormalSeriesFamily Z(d10, d10, 4, {FormalSeriesFamily::Coefficients{}});
    auto r = smoothness_check(Z, 10, 1e-7);
    CHECK(r.pass);
    CHECK(r.checks == 0);
  }
  SECTION("the exp recursion reconstructs the morphism") {
    auto d11 = Superdomain::whole(1, 1);
    FormalSeriesFamily::Coefficients even, odd;
    Rational fact = 1;
    for (unsigned n = 0; n <= 4; ++n) {
      if (n) fact *= n;
      even.emplace(mono({n}), exp(x) * Expr(Rational(1 / fact)));
    }
    odd.emplace(mono({0}, OddIndexSet::single(0)), Expr(1));
    FormalSeriesFamily F(d11, d11, 4, {even, odd});
    SuperdomainMorphism phi = morphism_from_series(F);
    CHECK(same_section(phi.pullbacks()[0], Section::constant(d11, exp(x))));
    CHECK(same_section(phi.pullbacks()[1], Section::odd_coordinate(d11, 0)));
  }
}

TEST_CASE("series families are validated", "[naturality]") {
  auto d10 = Superdomain::whole(1, 0);
  auto d11 = Superdomain::whole(1, 1);
  using C = FormalSeriesFamily::Coefficients;
  CHECK_THROWS_AS(FormalSeriesFamily(d10, d10, 3, {}), DomainMismatch);
  CHECK_THROWS_AS(FormalSeriesFamily(d10, d10, 3, {C{{mono({0, 0}), x}}}), DomainMismatch);
  CHECK_THROWS_AS(FormalSeriesFamily(d10, d10, 3, {C{{mono({4}), x}}}), InvalidArgument);
  CHECK_THROWS_AS(FormalSeriesFamily(d11, d11, 3, {C{{mono({0}, OddIndexSet::single(0)), x}}, C{}}), ParityError);
  CHECK_THROWS_AS(FormalSeriesFamily(d10, d10, 3, {C{{mono({0}), var(1)}}}), DomainMismatch);

  SECTION("range condition on the target box") {
    auto pos = Superdomain::with_box(0, {Interval{0.0, 1.0}});
    CHECK_THROWS_AS(FormalSeriesFamily(pos, pos, 2, {C{{mono({0}), x + Expr(5)}}}), DomainMismatch);
  }
}

TEST_CASE("verification suites pass", "[naturality][verify]") {
  verify::Options opt;
  opt.samples = 10;
  for (const auto& name : verify::suite_names()) {
    auto r = verify::run_suite(name, opt);
    REQUIRE(r);
    INFO(r->to_string());
    CHECK(r->pass());
  }
  CHECK_FALSE(verify::run_suite("nope", opt));
}
