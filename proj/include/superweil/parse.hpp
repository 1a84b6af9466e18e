#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "superweil/algebra.hpp"
#include "superweil/apoint.hpp"
#include "superweil/distribution.hpp"
#include "superweil/element.hpp"
#include "superweil/errors.hpp"
#include "superweil/expr.hpp"
#include "superweil/naturality.hpp"
#include "superweil/section.hpp"
#include "superweil/transit.hpp"

namespace superweil {

/// Character cursor over one line of input, reporting 1-based positions.
class Cursor {
 public:
  Cursor(std::string_view text, std::size_t line = 1, std::size_t column_offset = 0)
      : text_(text), line_(line), offset_(column_offset) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  /// Next raw character, without skipping whitespace.
  char peek_raw() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'" + found());
  }
  bool accept_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    std::size_t end = pos_ + w.size();
    if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end])) &&
        std::isalpha(static_cast<unsigned char>(w.back())))
      return false;
    pos_ = end;
    return true;
  }
  void expect_end() {
    if (!eof()) fail("unexpected trailing input" + found());
  }

  unsigned integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer" + found());
    std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 9) fail_at(start, "integer too large");
    return static_cast<unsigned>(std::stoul(digits));
  }

  /// Unsigned rational token: INT, INT/INT or a decimal.
  Rational rational() {
    skip_ws();
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t s = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ > s;
    };
    bool any = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      any = digits() || any;
    } else if (any && pos_ + 1 < text_.size() && text_[pos_] == '/' &&
               std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      digits();
    }
    if (!any) fail("expected a number" + found());
    Rational r;
    if (!parse_rational(text_.substr(start, pos_ - start), r)) fail_at(start, "malformed number");
    return r;
  }
  Rational signed_rational() {
    bool neg = accept('-');
    if (!neg) accept('+');
    Rational r = rational();
    return neg ? Rational(-r) : r;
  }
  bool at_number() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }

  std::size_t line() const { return line_; }
  std::size_t column() const { return offset_ + pos_ + 1; }
  std::size_t position() const { return pos_; }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, column()); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) { throw ParseError(msg, line_, offset_ + pos + 1); }
  /// Validation failure carrying the current position.
  [[noreturn]] void invalid(const std::string& msg) {
    throw InvalidArgument("line " + std::to_string(line_) + ", column " + std::to_string(column()) + ": " + msg);
  }

 private:
  std::string found() {
    if (eof()) return ", found end of input";
    return std::string(", found '") + text_[pos_] + "'";
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

/// One significant line of a text file: comments stripped, 1-based number kept.
struct SourceLine {
  std::size_t number;
  std::string_view text;
};

inline std::vector<SourceLine> significant_lines(std::string_view text) {
  std::vector<SourceLine> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    out.push_back({number, line});
  }
  return out;
}

// ---------------------------------------------------------------- descriptors

inline AlgebraDescriptor parse_descriptor(Cursor& c) {
  if (c.accept_word("grassmann")) {
    c.expect('(');
    unsigned q = c.integer();
    c.expect(')');
    return AlgebraDescriptor::grassmann(q);
  }
  if (c.accept_word("poly")) {
    c.expect('(');
    unsigned k = c.integer();
    c.expect(',');
    unsigned l = c.integer();
    c.expect(',');
    std::size_t at = c.position();
    unsigned s = c.integer();
    if (s == 0) c.fail_at(at, "truncation order must be at least 1");
    c.expect(')');
    return AlgebraDescriptor::truncated_poly(k, l, s);
  }
  if (c.accept_word("superdual")) return AlgebraDescriptor::super_dual();
  if (c.accept_word("dual")) return AlgebraDescriptor::dual();
  if (c.accept_word("tensor")) {
    c.expect('(');
    AlgebraDescriptor a = parse_descriptor(c);
    c.expect(',');
    AlgebraDescriptor b = parse_descriptor(c);
    c.expect(')');
    return AlgebraDescriptor::tensor(a, b);
  }
  c.fail("expected an algebra descriptor (grassmann, poly, dual, superdual, tensor)");
}

inline AlgebraDescriptor parse_descriptor(std::string_view text, std::size_t line = 1, std::size_t offset = 0) {
  Cursor c(text, line, offset);
  AlgebraDescriptor d = parse_descriptor(c);
  c.expect_end();
  return d;
}

// ---------------------------------------------------------------- element literals

namespace detail {

template <class S>
Element<S> parse_monomial_factor(Cursor& c, const AlgebraPtr& a) {
  std::size_t at = c.position();
  if (c.accept('x')) {
    unsigned i = c.integer();
    unsigned n = 1;
    if (c.accept('^')) n = c.integer();
    if (i == 0 || i > a->even_generators())
      c.fail_at(at, "unknown even generator x" + std::to_string(i) + " for " + a->descriptor().to_string());
    return pow(Element<S>::even_generator(a, i - 1), n);
  }
  if (c.accept('t')) {
    unsigned j = c.integer();
    if (j == 0 || j > a->odd_generators())
      c.fail_at(at, "unknown odd generator t" + std::to_string(j) + " for " + a->descriptor().to_string());
    return Element<S>::odd_generator(a, j - 1);
  }
  c.fail("expected a generator x<i> or t<j>");
}

template <class S>
Element<S> parse_term(Cursor& c, const AlgebraPtr& a) {
  Element<S> term = Element<S>::one(a);
  bool any = false;
  if (c.at_number()) {
    term = Element<S>::scalar(a, ScalarTraits<S>::from_rational(c.rational()));
    any = true;
    if (!c.accept('*') && c.peek() != 'x' && c.peek() != 't') return term;
  }
  std::uint64_t seen_odd = 0;
  for (;;) {
    char ch = c.peek();
    if (ch != 'x' && ch != 't') {
      if (!any) c.fail("expected a coefficient or generator");
      return term;
    }
    std::size_t at = c.position();
    if (ch == 't') {
      Cursor probe = c;
      probe.accept('t');
      unsigned j = probe.integer();
      if (j > 0 && j <= 64) {
        const std::uint64_t bit = std::uint64_t{1} << (j - 1);
        if (seen_odd & bit) c.fail_at(at, "odd generator t" + std::to_string(j) + " repeated in one term");
        seen_odd |= bit;
      }
    }
    term = term * parse_monomial_factor<S>(c, a);
    any = true;
    c.accept('*');
  }
}

}  // namespace detail

/// Signed sum of terms `RATIONAL ["*" factors]`; factors are x<i>^<n> and t<j>.
template <class S>
Element<S> parse_element(Cursor& c, const AlgebraPtr& a) {
  Element<S> out(a);
  bool first = true;
  for (;;) {
    bool neg = false;
    if (c.accept('-'))
      neg = true;
    else if (!c.accept('+') && !first)
      return out;
    Element<S> t = detail::parse_term<S>(c, a);
    if (neg)
      out -= t;
    else
      out += t;
    first = false;
    if (c.eof()) return out;
  }
}

template <class S>
Element<S> parse_element(std::string_view text, const AlgebraPtr& a, std::size_t line = 1, std::size_t offset = 0) {
  Cursor c(text, line, offset);
  Element<S> e = parse_element<S>(c, a);
  c.expect_end();
  return e;
}

// ---------------------------------------------------------------- expressions

namespace detail {

inline Expr parse_sum(Cursor& c);

inline Expr parse_primary(Cursor& c) {
  if (c.at_number()) return Expr(c.rational());
  if (c.accept('(')) {
    Expr e = parse_sum(c);
    c.expect(')');
    return e;
  }
  struct Fn {
    const char* name;
    Expr (*make)(const Expr&);
  };
  static const Fn fns[] = {{"exp", [](const Expr& e) { return exp(e); }},
                           {"sin", [](const Expr& e) { return sin(e); }},
                           {"cos", [](const Expr& e) { return cos(e); }},
                           {"log", [](const Expr& e) { return log(e); }},
                           {"inv", [](const Expr& e) { return inv(e); }}};
  for (const auto& fn : fns)
    if (c.accept_word(fn.name)) {
      c.expect('(');
      Expr arg = parse_sum(c);
      c.expect(')');
      return fn.make(arg);
    }
  std::size_t at = c.position();
  if (c.accept('x')) {
    if (!std::isdigit(static_cast<unsigned char>(c.peek_raw()))) c.fail("expected a variable index after 'x'");
    unsigned i = c.integer();
    if (i == 0) c.fail_at(at, "variables are numbered from x1");
    return var(i - 1);
  }
  c.fail("expected a number, variable, function or '('");
}

inline Expr parse_power(Cursor& c) {
  Expr base = parse_primary(c);
  while (c.accept('^')) base = pow(base, c.integer());
  return base;
}

inline Expr parse_unary(Cursor& c) {
  if (c.accept('-')) return -parse_unary(c);
  if (c.accept('+')) return parse_unary(c);
  return parse_power(c);
}

inline Expr parse_product(Cursor& c) {
  Expr e = parse_unary(c);
  for (;;) {
    if (c.accept('*'))
      e = e * parse_unary(c);
    else if (c.accept('/'))
      e = e * inv(parse_unary(c));
    else
      return e;
  }
}

inline Expr parse_sum(Cursor& c) {
  Expr e = parse_product(c);
  for (;;) {
    if (c.accept('+'))
      e = e + parse_product(c);
    else if (c.accept('-'))
      e = e - parse_product(c);
    else
      return e;
  }
}

}  // namespace detail

inline Expr parse_expr(Cursor& c) { return detail::parse_sum(c); }

inline Expr parse_expr(std::string_view text, std::size_t line = 1, std::size_t offset = 0) {
  Cursor c(text, line, offset);
  Expr e = parse_expr(c);
  c.expect_end();
  return e;
}

// ---------------------------------------------------------------- index sets and tuples

/// "{}" | "{1,3}" (1-based members).
inline OddIndexSet parse_index_set(Cursor& c) {
  c.expect('{');
  OddIndexSet J;
  if (c.accept('}')) return J;
  for (;;) {
    std::size_t at = c.position();
    unsigned j = c.integer();
    if (j == 0 || j > 64) c.fail_at(at, "odd index must lie in 1..64");
    if (J.contains(j - 1)) c.fail_at(at, "odd index " + std::to_string(j) + " repeated");
    J = J.with(j - 1);
    if (c.accept('}')) return J;
    c.expect(',');
  }
}

/// "(0,2,1)" or "()".
inline EvenMultiIndex parse_tuple(Cursor& c) {
  c.expect('(');
  EvenMultiIndex nu;
  if (c.accept(')')) return nu;
  for (;;) {
    nu.push_back(c.integer());
    if (c.accept(')')) return nu;
    c.expect(',');
  }
}

/// "p|q".
inline std::pair<unsigned, unsigned> parse_dimensions(Cursor& c) {
  unsigned p = c.integer();
  c.expect('|');
  unsigned q = c.integer();
  return {p, q};
}

/// Rationals separated by commas and/or whitespace.
inline std::vector<Rational> parse_rational_list(Cursor& c) {
  std::vector<Rational> out;
  while (!c.eof()) {
    out.push_back(c.signed_rational());
    c.accept(',');
  }
  return out;
}

inline std::vector<Rational> parse_rational_list(std::string_view text) {
  Cursor c(text);
  return parse_rational_list(c);
}

/// "key:" at the start of a line; on success the cursor sits after the colon.
inline bool accept_header(Cursor& c, std::string_view key) {
  Cursor probe = c;
  if (!probe.accept_word(key) || !probe.accept(':')) return false;
  c = probe;
  return true;
}

// ---------------------------------------------------------------- section files

struct SectionText {
  struct Line {
    std::size_t number;
    OddIndexSet J;
    Expr expr;
  };
  std::vector<Line> lines;
  unsigned even_needed = 0;  ///< highest x index used
  unsigned odd_needed = 0;   ///< highest theta index used

  /// Builds the section on `dom`; repeated J lines are summed.
  Section on(const Superdomain& dom) const {
    Section s(dom);
    for (const auto& l : lines) {
      if (l.J.span() > dom.odd_dim || variable_count(l.expr) > dom.even_dim)
        throw DomainMismatch("line " + std::to_string(l.number) + ": section component does not fit the domain " +
                             dom.to_string());
      s.add_component(l.J, l.expr);
    }
    return s;
  }
};

/// Lines `J: expr`.
inline SectionText parse_section_text(std::string_view text) {
  SectionText out;
  for (const auto& line : significant_lines(text)) {
    Cursor c(line.text, line.number);
    OddIndexSet J = parse_index_set(c);
    c.expect(':');
    Expr e = parse_expr(c);
    c.expect_end();
    out.odd_needed = std::max(out.odd_needed, J.span());
    out.even_needed = std::max(out.even_needed, variable_count(e));
    out.lines.push_back({line.number, J, e});
  }
  return out;
}

inline Section parse_section(std::string_view text, const Superdomain& dom) { return parse_section_text(text).on(dom); }

// ---------------------------------------------------------------- point files

/// Coordinate lines `x<i> = literal` / `t<j> = literal` with an optional `algebra:` header.
/// Literals are views into the parsed text, which must outlive the result.
struct PointText {
  std::optional<AlgebraDescriptor> algebra;
  struct Line {
    std::size_t number;
    std::size_t column;
    bool odd;
    unsigned index;  // 0-based
    std::string_view literal;
    std::size_t literal_offset;
  };
  std::vector<Line> lines;
};

inline PointText parse_point_text(std::string_view text) {
  PointText out;
  for (const auto& line : significant_lines(text)) {
    Cursor c(line.text, line.number);
    if (accept_header(c, "algebra")) {
      if (out.algebra) c.fail("duplicate algebra header");
      c.skip_ws();
      std::size_t start = c.position();
      out.algebra = parse_descriptor(line.text.substr(start), line.number, start);
      continue;
    }
    std::size_t col = c.column();
    bool odd;
    if (c.accept('x'))
      odd = false;
    else if (c.accept('t'))
      odd = true;
    else
      c.fail("expected 'algebra:' or a coordinate x<i> / t<j>");
    std::size_t at = c.position();
    unsigned idx = c.integer();
    if (idx == 0) c.fail_at(at, "coordinates are numbered from 1");
    c.expect('=');
    c.skip_ws();
    std::size_t start = c.position();
    out.lines.push_back({line.number, col, odd, idx - 1, line.text.substr(start), start});
  }
  return out;
}

/// Element values per coordinate; the domain is R^{p|q} with p, q the highest indices.
template <class S>
struct CoordinateValues {
  AlgebraPtr algebra;
  Superdomain domain;
  std::vector<Element<S>> even;
  std::vector<Element<S>> odd;
};

template <class S>
CoordinateValues<S> coordinate_values(const PointText& pt, const AlgebraPtr& a) {
  unsigned p = 0, q = 0;
  for (const auto& l : pt.lines) (l.odd ? q : p) = std::max(l.odd ? q : p, l.index + 1);
  CoordinateValues<S> out{a, Superdomain::whole(p, q), {}, {}};
  std::vector<std::optional<Element<S>>> even(p), odd(q);
  for (const auto& l : pt.lines) {
    auto& slot = (l.odd ? odd : even)[l.index];
    if (slot)
      throw ParseError(std::string("duplicate coordinate ") + (l.odd ? "t" : "x") + std::to_string(l.index + 1),
                       l.number, l.column);
    slot = parse_element<S>(l.literal, a, l.number, l.literal_offset);
  }
  for (unsigned i = 0; i < p; ++i) {
    if (!even[i]) throw InvalidArgument("missing coordinate x" + std::to_string(i + 1));
    out.even.push_back(*even[i]);
  }
  for (unsigned j = 0; j < q; ++j) {
    if (!odd[j]) throw InvalidArgument("missing coordinate t" + std::to_string(j + 1));
    out.odd.push_back(*odd[j]);
  }
  return out;
}

/// The algebra from the file header, or `fallback` if the header is absent.
/// Both present and different is a validation error.
inline AlgebraDescriptor resolve_algebra(const PointText& pt, const std::optional<AlgebraDescriptor>& fallback) {
  if (pt.algebra && fallback && pt.algebra->to_string() != fallback->to_string())
    throw InvalidArgument("point file algebra " + pt.algebra->to_string() + " differs from the requested " +
                          fallback->to_string());
  if (pt.algebra) return *pt.algebra;
  if (fallback) return *fallback;
  throw InvalidArgument("no algebra given: add an 'algebra:' header or pass --algebra");
}

template <class S>
APoint<S> parse_point(std::string_view text, const std::optional<AlgebraDescriptor>& algebra = std::nullopt,
                      std::size_t max_dim = default_max_dim) {
  PointText pt = parse_point_text(text);
  AlgebraPtr a = make_algebra(resolve_algebra(pt, algebra), max_dim);
  auto v = coordinate_values<S>(pt, a);
  return APoint<S>(v.domain, a, std::move(v.even), std::move(v.odd));
}

// ---------------------------------------------------------------- distribution files

/// `support: reals`, optional `odd: q`, then `nu=(..) J={..} a=RATIONAL` lines.
inline Distribution<Rational> parse_distribution(std::string_view text) {
  std::optional<std::vector<Rational>> support;
  std::optional<unsigned> odd;
  std::map<SuperMonomial, Rational> coeffs;
  unsigned odd_needed = 0, order = 0;
  for (const auto& line : significant_lines(text)) {
    Cursor c(line.text, line.number);
    if (accept_header(c, "support")) {
      if (support) c.fail("duplicate support header");
      support = parse_rational_list(c);
      continue;
    }
    if (accept_header(c, "odd")) {
      if (odd) c.fail("duplicate odd header");
      odd = c.integer();
      c.expect_end();
      continue;
    }
    if (!support) c.fail("expected 'support:' before coefficient lines");
    if (!c.accept_word("nu")) c.fail("expected 'nu=' or a header");
    c.expect('=');
    std::size_t at = c.position();
    EvenMultiIndex nu = parse_tuple(c);
    if (nu.size() != support->size())
      c.fail_at(at, "nu has " + std::to_string(nu.size()) + " entries, support has " +
                        std::to_string(support->size()));
    if (!c.accept_word("J")) c.fail("expected 'J='");
    c.expect('=');
    OddIndexSet J = parse_index_set(c);
    if (!c.accept_word("a")) c.fail("expected 'a='");
    c.expect('=');
    Rational a = c.signed_rational();
    c.expect_end();
    SuperMonomial m{nu, J};
    coeffs[m] += a;
    odd_needed = std::max(odd_needed, J.span());
    order = std::max(order, m.degree());
  }
  if (!support) throw ParseError("missing 'support:' header", 1, 1);
  unsigned q = odd.value_or(odd_needed);
  if (q < odd_needed) throw InvalidArgument("coefficient uses theta" + std::to_string(odd_needed) + " but odd is " +
                                            std::to_string(q));
  Distribution<Rational> v;
  v.domain = Superdomain::whole(static_cast<unsigned>(support->size()), q);
  v.support = *support;
  v.order = order;
  for (auto& [m, a] : coeffs)
    if (sgn(a) != 0) v.coefficients.emplace(m, a);
  return v;
}

// ---------------------------------------------------------------- series files

/// `source: p|q`, `target: m|n`, optional `order: N`, then `k=.. nu=(..) J={..}: expr` lines.
inline FormalSeriesFamily parse_series(std::string_view text, unsigned default_order = 6) {
  std::optional<std::pair<unsigned, unsigned>> source, target;
  std::optional<unsigned> order;
  struct Entry {
    std::size_t line, column;
    unsigned k;
    SuperMonomial m;
    Expr f;
  };
  std::vector<Entry> entries;
  for (const auto& line : significant_lines(text)) {
    Cursor c(line.text, line.number);
    if (accept_header(c, "source")) {
      if (source) c.fail("duplicate source header");
      source = parse_dimensions(c);
      c.expect_end();
      continue;
    }
    if (accept_header(c, "target")) {
      if (target) c.fail("duplicate target header");
      target = parse_dimensions(c);
      c.expect_end();
      continue;
    }
    if (accept_header(c, "order")) {
      if (order) c.fail("duplicate order header");
      order = c.integer();
      c.expect_end();
      continue;
    }
    if (!source || !target) c.fail("expected 'source:' and 'target:' before coefficient lines");
    std::size_t col = c.column();
    if (!c.accept_word("k")) c.fail("expected 'k=' or a header");
    c.expect('=');
    std::size_t at = c.position();
    unsigned k = c.integer();
    if (k == 0 || k > target->first + target->second)
      c.fail_at(at, "slot k must lie in 1.." + std::to_string(target->first + target->second));
    if (!c.accept_word("nu")) c.fail("expected 'nu='");
    c.expect('=');
    at = c.position();
    EvenMultiIndex nu = parse_tuple(c);
    if (nu.size() != source->first)
      c.fail_at(at, "nu must have " + std::to_string(source->first) + " entries");
    if (!c.accept_word("J")) c.fail("expected 'J='");
    c.expect('=');
    at = c.position();
    OddIndexSet J = parse_index_set(c);
    if (J.span() > source->second) c.fail_at(at, "J uses an odd index beyond the source dimension");
    c.expect(':');
    Expr f = parse_expr(c);
    c.expect_end();
    entries.push_back({line.number, col, k - 1, SuperMonomial{nu, J}, f});
  }
  if (!source) throw ParseError("missing 'source:' header", 1, 1);
  if (!target) throw ParseError("missing 'target:' header", 1, 1);
  const unsigned n = order.value_or(default_order);
  std::vector<FormalSeriesFamily::Coefficients> coeffs(target->first + target->second);
  for (const auto& e : entries) {
    if (e.m.degree() > n)
      throw InvalidArgument("line " + std::to_string(e.line) + ": |nu| + |J| exceeds the order " + std::to_string(n));
    auto [it, inserted] = coeffs[e.k].emplace(e.m, e.f);
    if (!inserted) it->second = it->second + e.f;
  }
  return FormalSeriesFamily(Superdomain::whole(source->first, source->second),
                            Superdomain::whole(target->first, target->second), n, std::move(coeffs));
}

// ---------------------------------------------------------------- transit files

/// `weil: A`, `algebra: B0`, `domain: p|q`, then `x<i>[label] = literal` and
/// `t<j>[label] = literal` lines, one per flat chart slot; absent slots are zero.
template <class S>
ClassicalWeilPoint<S> parse_transit(std::string_view text, std::size_t max_dim = default_max_dim) {
  std::optional<AlgebraDescriptor> weil, algebra;
  std::optional<std::pair<unsigned, unsigned>> dims;
  struct Entry {
    std::size_t line, column;
    bool odd;
    unsigned index;
    std::string label;
    std::string_view literal;
    std::size_t offset;
  };
  std::vector<Entry> entries;
  for (const auto& line : significant_lines(text)) {
    Cursor c(line.text, line.number);
    auto header_desc = [&](std::optional<AlgebraDescriptor>& slot, const char* what) {
      if (slot) c.fail(std::string("duplicate ") + what + " header");
      c.skip_ws();
      std::size_t start = c.position();
      slot = parse_descriptor(line.text.substr(start), line.number, start);
    };
    if (accept_header(c, "weil")) {
      header_desc(weil, "weil");
      continue;
    }
    if (accept_header(c, "algebra")) {
      header_desc(algebra, "algebra");
      continue;
    }
    if (accept_header(c, "domain")) {
      if (dims) c.fail("duplicate domain header");
      dims = parse_dimensions(c);
      c.expect_end();
      continue;
    }
    std::size_t col = c.column();
    bool odd;
    if (c.accept('x'))
      odd = false;
    else if (c.accept('t'))
      odd = true;
    else
      c.fail("expected a header or a slot x<i>[label] / t<j>[label]");
    std::size_t at = c.position();
    unsigned idx = c.integer();
    if (idx == 0) c.fail_at(at, "coordinates are numbered from 1");
    c.expect('[');
    c.skip_ws();
    std::size_t lstart = c.position();
    std::size_t close = line.text.find(']', lstart);
    if (close == std::string_view::npos) c.fail("expected ']'");
    std::string label(line.text.substr(lstart, close - lstart));
    while (!label.empty() && label.back() == ' ') label.pop_back();
    Cursor rest(line.text.substr(close + 1), line.number, close + 1);
    rest.expect('=');
    rest.skip_ws();
    std::size_t start = close + 1 + rest.position();
    entries.push_back({line.number, col, odd, idx - 1, label, line.text.substr(start), start});
  }
  if (!weil) throw ParseError("missing 'weil:' header", 1, 1);
  if (!algebra) throw ParseError("missing 'algebra:' header", 1, 1);
  if (!dims) throw ParseError("missing 'domain:' header", 1, 1);
  AlgebraPtr a = make_algebra(*weil, max_dim);
  AlgebraPtr b0 = make_algebra(*algebra, max_dim);
  FlatChart chart = make_flat_chart(Superdomain::whole(dims->first, dims->second), a);
  std::vector<std::optional<Element<S>>> values(chart.slots.size());
  for (const auto& e : entries) {
    auto fail = [&](const std::string& msg) {
      throw InvalidArgument("line " + std::to_string(e.line) + ", column " + std::to_string(e.column) + ": " + msg);
    };
    unsigned coord = e.odd ? dims->first + e.index : e.index;
    if ((e.odd && e.index >= dims->second) || (!e.odd && e.index >= dims->first))
      fail("coordinate outside the domain " + std::to_string(dims->first) + "|" + std::to_string(dims->second));
    std::optional<std::size_t> basis;
    for (std::size_t k = 0; k < a->dim(); ++k)
      if (a->label(k) == e.label) basis = k;
    if (!basis) fail("'" + e.label + "' is not a basis label of " + a->descriptor().to_string());
    if (a->parity(*basis) != (e.odd ? Parity::odd : Parity::even))
      fail("basis element '" + e.label + "' has the wrong parity for this coordinate");
    std::size_t k = chart.slot(coord, *basis);
    if (values[k]) fail("duplicate slot");
    values[k] = parse_element<S>(e.literal, b0, e.line, e.offset);
  }
  std::vector<Element<S>> out;
  for (auto& v : values) out.push_back(v ? *v : Element<S>(b0));
  return make_classical_point<S>(std::move(chart), b0, std::move(out));
}

}  // namespace superweil
