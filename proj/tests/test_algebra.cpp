#include <catch_amalgamated.hpp>

#include <set>

#include "support.hpp"

using namespace superweil;
using namespace testing;

namespace {

using D = AlgebraDescriptor;

/// Rank of a set of rational vectors by fraction-exact elimination.
std::size_t rank_of(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && sgn(rows[pivot][c]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || sgn(rows[r][c]) == 0) continue;
      Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Brute-force powers of the maximal ideal: m^k is spanned by k-fold products of non-unit basis elements.
std::vector<std::size_t> ideal_power_ranks(const AlgebraPtr& a) {
  std::vector<E> soul;
  for (std::size_t i = 1; i < a->dim(); ++i) soul.push_back(E::basis(a, i));
  std::vector<std::size_t> ranks;
  std::vector<E> power = soul;
  while (true) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& e : power)
      if (!e.is_zero()) rows.push_back(e.coefficients());
    const std::size_t r = rank_of(rows);
    ranks.push_back(r);
    if (r == 0) break;
    std::vector<E> next;
    for (const auto& p : power)
      for (const auto& s : soul) next.push_back(p * s);
    power = std::move(next);
    if (power.size() > 4096) {
      // Keep a spanning subset to bound the work.
      std::vector<E> kept;
      std::vector<std::vector<Rational>> basis;
      for (const auto& e : power) {
        if (e.is_zero()) continue;
        basis.push_back(e.coefficients());
        if (rank_of(basis) == basis.size())
          kept.push_back(e);
        else
          basis.pop_back();
      }
      power = std::move(kept);
    }
  }
  return ranks;
}

unsigned oracle_height(const AlgebraPtr& a) {
  auto r = ideal_power_ranks(a);
  return static_cast<unsigned>(r.size() - 1);
}

unsigned oracle_width(const AlgebraPtr& a) {
  auto r = ideal_power_ranks(a);
  return static_cast<unsigned>(r[0] - (r.size() > 1 ? r[1] : 0));
}

}  // namespace

TEST_CASE("basis enumeration", "[algebra_core]") {
  SECTION("grassmann(2)") {
    auto a = alg(D::grassmann(2));
    REQUIRE(a->dim() == 4);
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < a->dim(); ++k) labels.push_back(a->label(k));
    CHECK(labels == std::vector<std::string>{"1", "t1", "t2", "t1 t2"});
  }
  SECTION("superdual: x^2 = x t = t^2 = 0") {
    auto a = alg(D::super_dual());
    REQUIRE(a->dim() == 3);
    E x = xgen(a, 0), t = theta(a, 0);
    CHECK((x * x).is_zero());
    CHECK((x * t).is_zero());
    CHECK((t * t).is_zero());
    CHECK_FALSE(x.is_zero());
    CHECK_FALSE(t.is_zero());
  }
  SECTION("poly(1,0,3) has basis 1, x, x^2") {
    auto a = alg(D::truncated_poly(1, 0, 3));
    REQUIRE(a->dim() == 3);
    E x = xgen(a, 0);
    CHECK_FALSE((x * x).is_zero());
    CHECK((x * x * x).is_zero());
  }
  SECTION("grassmann(q) has dimension 2^q") {
    for (unsigned q = 0; q <= 5; ++q) CHECK(alg(D::grassmann(q))->dim() == (std::size_t{1} << q));
  }
  SECTION("basis is in graded-lex order") {
    for (const auto& [name, a] : catalogue::algebras())
      for (std::size_t k = 1; k < a->dim(); ++k) CHECK(graded_lex_less(a->monomial(k - 1), a->monomial(k)));
  }
}

TEST_CASE("multiplication signs", "[algebra_core]") {
  auto g2 = alg(D::grassmann(2));
  E t1 = theta(g2, 0), t2 = theta(g2, 1);
  E t12 = E::basis(g2, 3);
  CHECK(t1 * t2 == t12);
  CHECK(t2 * t1 == t12 * scalar(g2, -1));
  CHECK((theta(alg(D::grassmann(1)), 0) * theta(alg(D::grassmann(1)), 0)).is_zero());
  E one = E::one(g2);
  CHECK((one + t1 * t2) * (one - t1 * t2) == one);
}

TEST_CASE("odd product sign matches an inversion count", "[algebra_core]") {
  for (std::uint64_t I = 0; I < 32; ++I)
    for (std::uint64_t J = 0; J < 32; ++J) {
      int want = 0;
      if ((I & J) == 0) {
        // Concatenate the member lists and bubble sort, counting swaps.
        std::vector<unsigned> seq;
        for (unsigned k = 0; k < 5; ++k)
          if ((I >> k) & 1U) seq.push_back(k);
        for (unsigned k = 0; k < 5; ++k)
          if ((J >> k) & 1U) seq.push_back(k);
        int swaps = 0;
        for (std::size_t p = 0; p < seq.size(); ++p)
          for (std::size_t q = 0; q + 1 < seq.size() - p; ++q)
            if (seq[q] > seq[q + 1]) {
              std::swap(seq[q], seq[q + 1]);
              ++swaps;
            }
        want = swaps % 2 ? -1 : 1;
      }
      CHECK(odd_product_sign(OddIndexSet{I}, OddIndexSet{J}) == want);
    }
}

TEST_CASE("invert", "[algebra_core]") {
  auto g2 = alg(D::grassmann(2));
  E t12 = theta(g2, 0) * theta(g2, 1);
  CHECK(invert(scalar(g2, 2)) == E::scalar(g2, Rational(1, 2)));
  CHECK(invert(E::one(g2) + t12) == E::one(g2) - t12);
  CHECK_THROWS_AS(invert(theta(g2, 0)), NotInvertible);

  SECTION("geometric series oracle on poly(1,1,4)") {
    auto a = alg(D::truncated_poly(1, 1, 4));
    E x = xgen(a, 0), t = theta(a, 0);
    E u = scalar(a, 3) + x * scalar(a, 2) + x * t;
    // 1/(3 + n) = (1/3) sum (-n/3)^k, n^4 = 0.
    E n = u - scalar(a, 3), sum = E::one(a), term = E::one(a);
    for (int k = 1; k <= 3; ++k) {
      term = term * n * E::scalar(a, Rational(-1, 3));
      sum += term;
    }
    CHECK(invert(u) == sum * E::scalar(a, Rational(1, 3)));
    CHECK(u * invert(u) == E::one(a));
  }
}

TEST_CASE("height and width against brute-force ideal powers", "[algebra_core]") {
  CHECK(alg(D::super_dual())->height() == 1);
  CHECK(alg(D::super_dual())->width() == 2);
  CHECK(alg(D::grassmann(3))->height() == 3);
  CHECK(alg(D::grassmann(3))->width() == 3);
  CHECK(alg(D::truncated_poly(2, 1, 4))->height() == 3);
  for (const auto& [name, a] : catalogue::algebras()) {
    INFO(name);
    CHECK(a->height() == oracle_height(a));
    CHECK(a->width() == oracle_width(a));
  }
}

TEST_CASE("algebra morphisms", "[algebra_core]") {
  auto sd = alg(D::super_dual());
  auto g2 = alg(D::grassmann(2));
  auto dual = alg(D::dual());

  SECTION("pr_A is the body map") {
    auto pr = body_projection(g2);
    E a = scalar(g2, 5) + theta(g2, 0) + theta(g2, 0) * theta(g2, 1) * scalar(g2, 7);
    CHECK(pr(a)[0] == 5);
    CHECK(pr.target()->dim() == 1);
  }
  SECTION("superdual -> grassmann(2), x -> t1 t2, t -> t1") {
    auto rho = make_morphism(sd, g2, {theta(g2, 0) * theta(g2, 1), theta(g2, 0)});
    CHECK(rho(xgen(sd, 0)) == theta(g2, 0) * theta(g2, 1));
    CHECK(rho(theta(sd, 0)) == theta(g2, 0));
    CHECK(compose(body_projection(g2), rho) == body_projection(sd));
    CHECK(compose(identity_morphism(g2), rho) == rho);
  }
  SECTION("a nilpotent generator cannot map to a unit") {
    CHECK_THROWS_AS(make_morphism(dual, dual, {E::one(dual) + xgen(dual, 0)}), NotWellDefined);
  }
  SECTION("relations must be killed") {
    auto p13 = alg(D::truncated_poly(1, 0, 3));
    CHECK_THROWS_AS(make_morphism(dual, p13, {xgen(p13, 0)}), NotWellDefined);
  }
  SECTION("parity must be preserved") {
    CHECK_THROWS_AS(make_morphism(sd, g2, {theta(g2, 0), theta(g2, 1)}), ParityError);
  }
  SECTION("wrong image count") { CHECK_THROWS_AS(make_morphism(sd, g2, {theta(g2, 0)}), InvalidArgument); }
  SECTION("composition agrees with direct expansion on the basis") {
    auto g3 = alg(D::grassmann(3));
    auto swap = make_morphism(g2, g2, {theta(g2, 1), theta(g2, 0)});
    auto into = make_morphism(g2, g3, {theta(g3, 0) + theta(g3, 2), theta(g3, 1)});
    auto c = compose(into, swap);
    for (std::size_t i = 0; i < g2->dim(); ++i) CHECK(c(E::basis(g2, i)) == into(swap(E::basis(g2, i))));
    // t1 t2 -> t2 t1 -> t2 (t1 + t3)
    CHECK(c(E::basis(g2, 3)) == theta(g3, 1) * (theta(g3, 0) + theta(g3, 2)));
  }
  SECTION("every catalogue morphism is valid and compatible with pr") {
    for (const auto& [name, rho] : catalogue::algebra_morphisms()) {
      INFO(name);
      CHECK_NOTHROW(validate_morphism(rho));
      CHECK(compose(body_projection(rho.target()), rho) == body_projection(rho.source()));
    }
  }
}

TEST_CASE("tensor products with purely even algebras", "[algebra_core]") {
  SECTION("grassmann(1) (x) dual") {
    auto a = tensor_even(alg(D::grassmann(1)), alg(D::dual()));
    CHECK(a->dim() == 4);
    CHECK(a->height() == 2);
    CHECK(oracle_height(a) == 2);
  }
  SECTION("A (x) R is A") {
    for (const auto& [name, a] : catalogue::algebras()) {
      auto ar = tensor_even(a, alg(D::reals()));
      CHECK(ar->same_structure(*a));
    }
  }
  SECTION("dual (x) dual: e^2 = e'^2 = 0, (e e')^2 = 0, height 2") {
    auto a = tensor_even(alg(D::dual()), alg(D::dual()));
    REQUIRE(a->dim() == 4);
    const auto* tf = a->tensor_factors();
    REQUIRE(tf != nullptr);
    E e = E::basis(a, tf->index[1][0]), f = E::basis(a, tf->index[0][1]);
    CHECK((e * e).is_zero());
    CHECK((f * f).is_zero());
    CHECK_FALSE((e * f).is_zero());
    CHECK((e * f * e * f).is_zero());
    CHECK(a->height() == 2);
  }
  SECTION("odd second factor is rejected") {
    CHECK_THROWS_AS(tensor_even(alg(D::dual()), alg(D::grassmann(1))), ParityError);
  }
  SECTION("dimension cap") {
    CHECK_THROWS_AS(tensor_even(alg(D::grassmann(4)), alg(D::truncated_poly(2, 0, 4)), 64), DimensionCapExceeded);
  }
}

TEST_CASE("common refinement", "[algebra_core]") {
  SECTION("(dual, grassmann(1)) -> poly(1,1,2)") {
    auto r = common_refinement(alg(D::dual()), alg(D::grassmann(1)));
    CHECK(r.algebra->descriptor().to_string() == "poly(1,1,2)");
    CHECK(is_surjective(r.to_first));
    CHECK(is_surjective(r.to_second));
  }
  SECTION("(A, A) -> A with identities") {
    auto g2 = alg(D::grassmann(2));
    auto r = common_refinement(g2, g2);
    CHECK(r.algebra->same_structure(*g2));
    CHECK(r.to_first == identity_morphism(g2));
  }
  SECTION("(grassmann(1), grassmann(2)) -> grassmann(2)") {
    auto g1 = alg(D::grassmann(1)), g2 = alg(D::grassmann(2));
    auto r = common_refinement(g1, g2);
    CHECK(r.algebra->same_structure(*g2));
    CHECK(r.to_first(theta(r.algebra, 1)).is_zero());
    CHECK(r.to_first(theta(r.algebra, 0)) == theta(g1, 0));
    CHECK(r.to_second == identity_morphism(g2));
  }
  SECTION("tensor presentations are unsupported") {
    auto t = alg(D::tensor(D::grassmann(1), D::dual()));
    CHECK_THROWS_AS(common_refinement(t, alg(D::dual())), UnsupportedPresentation);
  }
}

TEST_CASE("table presentations are validated", "[algebra_core]") {
  SECTION("the dual numbers as a table") {
    TableDesc t;
    t.parities = {Parity::even, Parity::even};
    t.constants = {{{1, 0}, {0, 1}}, {{0, 1}, {0, 0}}};
    auto a = make_algebra(AlgebraDescriptor(t));
    CHECK(a->dim() == 2);
    CHECK(a->height() == 1);
  }
  SECTION("a noncommutative table is rejected") {
    TableDesc t;
    t.parities = {Parity::even, Parity::even, Parity::even, Parity::even};
    std::vector<std::vector<std::vector<Rational>>> c(4, std::vector<std::vector<Rational>>(4, std::vector<Rational>(4)));
    for (std::size_t i = 0; i < 4; ++i) {
      c[0][i][i] = 1;
      c[i][0][i] = 1;
    }
    c[1][2][3] = 1;  // e1 e2 = e3 but e2 e1 = 0
    t.constants = c;
    CHECK_THROWS_AS(make_algebra(AlgebraDescriptor(t)), AxiomViolation);
  }
  SECTION("an idempotent is not nilpotent") {
    TableDesc t;
    t.parities = {Parity::even, Parity::even};
    t.constants = {{{1, 0}, {0, 1}}, {{0, 1}, {0, 1}}};
    CHECK_THROWS_AS(make_algebra(AlgebraDescriptor(t)), AxiomViolation);
  }
}

TEST_CASE("dimension cap", "[algebra_core]") {
  CHECK_THROWS_AS(make_algebra(D::grassmann(7)), DimensionCapExceeded);
  CHECK_NOTHROW(make_algebra(D::grassmann(7), 128));
}
