#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace superweil;
using namespace testing;

namespace {

using D = AlgebraDescriptor;
const Expr x = var(0);
const Expr y = var(1);

/// Line and column of the ParseError thrown by f.
template <class F>
std::pair<std::size_t, std::size_t> parse_error_at(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  FAIL("no ParseError");
  return {0, 0};
}

}  // namespace

TEST_CASE("algebra descriptors", "[parse]") {
  for (const char* s : {"grassmann(3)", "poly(2,1,3)", "dual", "superdual", "tensor(dual,grassmann(2))",
                        "tensor(tensor(dual,dual),superdual)"})
    CHECK(parse_descriptor(s).to_string() == s);
  CHECK(alg(parse_descriptor("poly(1,0,2)"))->dim() == alg(D::dual())->dim());
  CHECK_THROWS_AS(parse_descriptor("poly(1,0,0)"), ParseError);
  CHECK_THROWS_AS(parse_descriptor("grassmann(2"), ParseError);
  CHECK_THROWS_AS(parse_descriptor("dual dual"), ParseError);
  CHECK_THROWS_AS(parse_descriptor("clifford(2)"), ParseError);
}

TEST_CASE("element literals", "[parse]") {
  auto g2 = alg(D::grassmann(2));
  CHECK(parse_element<Rational>("6 + 1*t1 + 4*t1 t2", g2) ==
        scalar(g2, 6) + theta(g2, 0) + E::scalar(g2, Rational(4)) * theta(g2, 0) * theta(g2, 1));
  CHECK(parse_element<Rational>("t2 t1", g2) == -(theta(g2, 0) * theta(g2, 1)));
  CHECK(parse_element<Rational>("-1/2", g2) == E::scalar(g2, Rational(-1, 2)));
  CHECK(parse_element<Rational>("0.25 + 010/08", g2) == E::scalar(g2, Rational(3, 2)));

  auto dual = alg(D::dual());
  CHECK(parse_element<Rational>("3 + x1", dual) == scalar(dual, 3) + xgen(dual, 0));
  CHECK(approx_equal(parse_element<double>("0.25*x1", dual), Ed::scalar(dual, 0.25) * Ed::even_generator(dual, 0), 1e-15));

  CHECK_THROWS_AS(parse_element<Rational>("t1 t1", g2), ParseError);
  CHECK_THROWS_AS(parse_element<Rational>("t3", g2), ParseError);
  CHECK_THROWS_AS(parse_element<Rational>("x1", g2), ParseError);
  CHECK_THROWS_AS(parse_element<Rational>("1 +", g2), ParseError);

  SECTION("formatted elements parse back") {
    Rng rng(29);
    for (const auto& named : catalogue::algebras()) {
      for (int k = 0; k < 10; ++k) {
        E e = random_element<Rational>(rng, named.algebra, random_parity(rng));
        INFO(format_element(e));
        CHECK(parse_element<Rational>(format_element(e), named.algebra) == e);
      }
    }
  }
}

TEST_CASE("expressions", "[parse]") {
  CHECK(same_function(parse_expr("x1^2*x2 + x1"), pow(x, 2) * y + x, 2));
  CHECK(same_function(parse_expr("-x1 - 2*x2"), -x - Expr(2) * y, 2));
  CHECK(same_function(parse_expr("exp(x1)*sin(x2) + cos(x1)/(2 + x2^2)"),
                      exp(x) * sin(y) + cos(x) * inv(Expr(2) + pow(y, 2)), 2));
  CHECK(same_function(parse_expr("log(3 + x1^2) + inv(1 + x2^2)"),
                      log(Expr(3) + pow(x, 2)) + inv(Expr(1) + pow(y, 2)), 2));
  CHECK(same_function(parse_expr("1/2*x1"), Expr(Rational(1, 2)) * x, 1));
  CHECK(variable_count(parse_expr("x3 + 1")) == 3);

  SECTION("errors carry the line and column") {
    CHECK(parse_error_at([] { parse_expr("x1 +* 2"); }) == std::pair<std::size_t, std::size_t>{1, 5});
    CHECK(parse_error_at([] { parse_expr("tan(x1)"); }).second == 1);
    CHECK(parse_error_at([] { parse_section_text("{}: x1\n\n{1}: x1 )"); }) ==
          std::pair<std::size_t, std::size_t>{3, 9});
    CHECK_THROWS_AS(parse_expr("x0"), ParseError);
  }
}

TEST_CASE("section files", "[parse]") {
  const std::string text = "# mixed\n{}: x1*sin(x2)\n{1}: exp(x1)\n{1}: x2\n";
  SectionText st = parse_section_text(text);
  CHECK(st.even_needed == 2);
  CHECK(st.odd_needed == 1);
  auto d = Superdomain::whole(2, 1);
  Section s = st.on(d);
  CHECK(same_function(s.component(OddIndexSet{}), x * sin(y), 2));
  CHECK(same_function(s.component(OddIndexSet::single(0)), exp(x) + y, 2));
  CHECK_THROWS_AS(st.on(Superdomain::whole(1, 1)), DomainMismatch);
  CHECK_THROWS_AS(parse_section_text("{1,1}: 1"), ParseError);
  CHECK_THROWS_AS(parse_section_text("x1"), ParseError);
}

TEST_CASE("point files", "[parse]") {
  const std::string text = "algebra: grassmann(2)\nx1 = 2\nx2 = 1 + t1 t2\nt1 = t1\n";
  APoint<Rational> p = parse_point<Rational>(text);
  auto g2 = p.algebra();
  CHECK(p.domain() == Superdomain::whole(2, 1));
  CHECK(p.even_values()[1] == scalar(g2, 1) + theta(g2, 0) * theta(g2, 1));
  CHECK(p.odd_values()[0] == theta(g2, 0));

  const std::string bare = "x1 = 1/2 + x1\n";
  CHECK_THROWS_AS(parse_point<Rational>(bare), InvalidArgument);
  CHECK(parse_point<Rational>(bare, D::dual()).base()[0] == Rational(1, 2));
  CHECK_THROWS_AS(parse_point<Rational>(text, D::dual()), InvalidArgument);
  CHECK_THROWS_AS(parse_point<Rational>("algebra: dual\nx2 = 1\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_point<Rational>("algebra: dual\nx1 = 1\nx1 = 2\n"), ParseError);
  CHECK_THROWS_AS(parse_point<Rational>("algebra: dual\nx0 = 1\n"), ParseError);
  CHECK(parse_point<Rational>("algebra: dual\nx1 = x1\n").base()[0] == 0);
  CHECK(parse_error_at([] { parse_point<Rational>("algebra: dual\nx1 = 3 + * x1\n"); }) ==
        std::pair<std::size_t, std::size_t>{2, 10});
}

TEST_CASE("distribution files", "[parse]") {
  const std::string text = "support: 1\nodd: 1\nnu=(1) J={} a=2\nnu=(2) J={} a=1/2\nnu=(0) J={1} a=3\nnu=(1) J={} a=1\n";
  Distribution<Rational> v = parse_distribution(text);
  CHECK(v.domain == Superdomain::whole(1, 1));
  CHECK(v.order == 2);
  CHECK(v.coefficient(SuperMonomial{{1}, {}}) == 3);
  CHECK(v.coefficient(SuperMonomial{{0}, OddIndexSet::single(0)}) == 3);

  CHECK(parse_distribution("support: 0, 1\nnu=(0,0) J={2} a=1\n").domain == Superdomain::whole(2, 2));
  CHECK_THROWS_AS(parse_distribution("nu=(1) J={} a=1\n"), ParseError);
  CHECK_THROWS_AS(parse_distribution("support: 1\nnu=(1,0) J={} a=1\n"), ParseError);
  CHECK_THROWS_AS(parse_distribution("support: 1\nodd: 0\nnu=(0) J={1} a=1\n"), InvalidArgument);
}

TEST_CASE("series files", "[parse]") {
  const std::string text = "source: 1|0\ntarget: 1|0\norder: 3\nk=1 nu=(0) J={}: x1^2\nk=1 nu=(1) J={}: 2*x1\n"
                           "k=1 nu=(2) J={}: 1\n";
  FormalSeriesFamily F = parse_series(text);
  CHECK(F.order() == 3);
  CHECK(smoothness_check(F, 10, 1e-9).pass);
  CHECK(parse_series("source: 1|0\ntarget: 1|0\n").order() == 6);
  CHECK_THROWS_AS(parse_series("source: 1|0\nk=1 nu=(0) J={}: 1\n"), ParseError);
  CHECK_THROWS_AS(parse_series("source: 1|0\ntarget: 1|0\nk=2 nu=(0) J={}: 1\n"), ParseError);
  CHECK_THROWS_AS(parse_series("source: 1|0\ntarget: 1|0\nk=1 nu=(0) J={1}: 1\n"), ParseError);
  CHECK_THROWS_AS(parse_series("source: 1|0\ntarget: 1|0\norder: 1\nk=1 nu=(2) J={}: 1\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_series("source: 1|1\ntarget: 1|0\nk=1 nu=(0) J={1}: 1\n"), ParityError);
}

TEST_CASE("transit files", "[parse]") {
  const std::string text = "weil: grassmann(1)\nalgebra: dual\ndomain: 1|1\nx1[1] = 2 + x1\nt1[t1] = 3 - x1\n";
  ClassicalWeilPoint<Rational> X = parse_transit<Rational>(text);
  CHECK(X.point.domain() == Superdomain::whole(2, 0));
  APoint<Rational> z = transit(X);
  auto both = alg(D::tensor(D::grassmann(1), D::dual()));
  CHECK(z.algebra()->dim() == both->dim());
  CHECK(transit_inverse(z).point == X.point);
  CHECK_THROWS_AS(parse_transit<Rational>("weil: grassmann(1)\nalgebra: grassmann(1)\ndomain: 1|1\n"), ParityError);
  CHECK_THROWS_AS(parse_transit<Rational>("weil: grassmann(1)\nalgebra: dual\ndomain: 1|1\nx1[t1] = 1\n"),
                  InvalidArgument);
}
