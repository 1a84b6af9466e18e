#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "superweil/errors.hpp"
#include "superweil/monomial.hpp"
#include "superweil/scalar.hpp"

namespace superweil {

enum class ExprOp : std::uint8_t { constant, variable, sum, product, power, exp, sin, cos, log, inv };

class Expr;

struct ExprNode {
  ExprOp op = ExprOp::constant;
  Rational value;       // constant
  double approx = 0.0;  // constant, cached
  unsigned index = 0;   // variable (0-based) or power exponent
  std::vector<Expr> args;
};

/// Immutable expression tree in the even variables x_1..x_p (0-based indices).
///
/// Construction applies constant folding and zero/one elimination only.
/// Two expressions are compared by sampled evaluation, never structurally.
class Expr {
 public:
  Expr() : Expr(Rational(0)) {}
  Expr(const Rational& c) : node_(make_constant(c)) {}
  Expr(long c) : Expr(Rational(c)) {}
  Expr(int c) : Expr(Rational(c)) {}

  static Expr constant(const Rational& c) { return Expr(c); }
  static Expr variable(unsigned i) {
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::variable;
    n->index = i;
    return Expr(std::move(n));
  }

  ExprOp op() const { return node_->op; }
  const std::vector<Expr>& args() const { return node_->args; }
  const Rational& value() const { return node_->value; }
  double approx() const { return node_->approx; }
  unsigned index() const { return node_->index; }
  unsigned exponent() const { return node_->index; }

  bool is_constant() const { return op() == ExprOp::constant; }
  bool is_zero() const { return is_constant() && sgn(value()) == 0; }
  bool is_one() const { return is_constant() && value() == 1; }

  /// Unary node or binary-op node; applies local simplification.
  static Expr make(ExprOp op, std::vector<Expr> args, unsigned exponent = 0);

  Expr& operator+=(const Expr& o) { return *this = make(ExprOp::sum, {*this, o}); }
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o) { return *this = make(ExprOp::product, {*this, o}); }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}

  static std::shared_ptr<const ExprNode> make_constant(const Rational& c) {
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::constant;
    n->value = c;
    n->value.canonicalize();
    n->approx = n->value.get_d();
    return n;
  }

  std::shared_ptr<const ExprNode> node_;
};

inline Expr operator+(const Expr& a, const Expr& b) { return Expr::make(ExprOp::sum, {a, b}); }
inline Expr operator*(const Expr& a, const Expr& b) { return Expr::make(ExprOp::product, {a, b}); }
inline Expr operator-(const Expr& a) { return Expr::make(ExprOp::product, {Expr(-1), a}); }
inline Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }
inline Expr& Expr::operator-=(const Expr& o) { return *this = *this - o; }
inline Expr pow(const Expr& a, unsigned n) { return Expr::make(ExprOp::power, {a}, n); }
inline Expr exp(const Expr& a) { return Expr::make(ExprOp::exp, {a}); }
inline Expr sin(const Expr& a) { return Expr::make(ExprOp::sin, {a}); }
inline Expr cos(const Expr& a) { return Expr::make(ExprOp::cos, {a}); }
inline Expr log(const Expr& a) { return Expr::make(ExprOp::log, {a}); }
inline Expr inv(const Expr& a) { return Expr::make(ExprOp::inv, {a}); }
inline Expr operator/(const Expr& a, const Expr& b) { return a * inv(b); }
inline Expr var(unsigned i) { return Expr::variable(i); }

inline Expr Expr::make(ExprOp op, std::vector<Expr> args, unsigned exponent) {
  auto node = [&](ExprOp o, std::vector<Expr> a, unsigned idx = 0) {
    auto n = std::make_shared<ExprNode>();
    n->op = o;
    n->args = std::move(a);
    n->index = idx;
    return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
  };
  switch (op) {
    case ExprOp::sum: {
      std::vector<Expr> flat;
      Rational c = 0;
      for (auto& a : args) {
        if (a.op() == ExprOp::sum) {
          for (const auto& b : a.args()) {
            if (b.is_constant())
              c += b.value();
            else
              flat.push_back(b);
          }
        } else if (a.is_constant()) {
          c += a.value();
        } else {
          flat.push_back(std::move(a));
        }
      }
      if (sgn(c) != 0) flat.push_back(Expr(c));
      if (flat.empty()) return Expr(0);
      if (flat.size() == 1) return flat[0];
      return node(ExprOp::sum, std::move(flat));
    }
    case ExprOp::product: {
      std::vector<Expr> flat;
      Rational c = 1;
      for (auto& a : args) {
        if (a.op() == ExprOp::product) {
          for (const auto& b : a.args()) {
            if (b.is_constant())
              c *= b.value();
            else
              flat.push_back(b);
          }
        } else if (a.is_constant()) {
          c *= a.value();
        } else {
          flat.push_back(std::move(a));
        }
      }
      if (sgn(c) == 0) return Expr(0);
      if (flat.empty()) return Expr(c);
      if (c != 1) flat.insert(flat.begin(), Expr(c));
      if (flat.size() == 1) return flat[0];
      return node(ExprOp::product, std::move(flat));
    }
    case ExprOp::power: {
      const Expr& a = args.at(0);
      if (exponent == 0) return Expr(1);
      if (exponent == 1) return a;
      if (a.is_constant()) {
        Rational r = 1;
        for (unsigned k = 0; k < exponent; ++k) r *= a.value();
        return Expr(r);
      }
      if (a.op() == ExprOp::power) return node(ExprOp::power, {a.args()[0]}, a.exponent() * exponent);
      return node(ExprOp::power, std::move(args), exponent);
    }
    case ExprOp::exp:
      if (args.at(0).is_zero()) return Expr(1);
      return node(op, std::move(args));
    case ExprOp::sin:
      if (args.at(0).is_zero()) return Expr(0);
      return node(op, std::move(args));
    case ExprOp::cos:
      if (args.at(0).is_zero()) return Expr(1);
      return node(op, std::move(args));
    case ExprOp::log:
      if (args.at(0).is_one()) return Expr(0);
      return node(op, std::move(args));
    case ExprOp::inv: {
      const Expr& a = args.at(0);
      if (a.is_constant() && sgn(a.value()) != 0) return Expr(Rational(1 / a.value()));
      if (a.op() == ExprOp::inv) return a.args()[0];
      return node(op, std::move(args));
    }
    default:
      throw InvalidArgument("Expr::make: not an operator node");
  }
}

/// Exact partial derivative with respect to x_{i+1}.
inline Expr differentiate(const Expr& e, unsigned i) {
  switch (e.op()) {
    case ExprOp::constant:
      return Expr(0);
    case ExprOp::variable:
      return Expr(e.index() == i ? 1 : 0);
    case ExprOp::sum: {
      std::vector<Expr> terms;
      for (const auto& a : e.args()) terms.push_back(differentiate(a, i));
      return Expr::make(ExprOp::sum, std::move(terms));
    }
    case ExprOp::product: {
      std::vector<Expr> terms;
      const auto& f = e.args();
      for (std::size_t k = 0; k < f.size(); ++k) {
        Expr dk = differentiate(f[k], i);
        if (dk.is_zero()) continue;
        std::vector<Expr> factors;
        for (std::size_t m = 0; m < f.size(); ++m) factors.push_back(m == k ? dk : f[m]);
        terms.push_back(Expr::make(ExprOp::product, std::move(factors)));
      }
      return Expr::make(ExprOp::sum, std::move(terms));
    }
    case ExprOp::power: {
      const Expr& a = e.args()[0];
      Expr da = differentiate(a, i);
      if (da.is_zero()) return Expr(0);
      return Expr(static_cast<long>(e.exponent())) * pow(a, e.exponent() - 1) * da;
    }
    case ExprOp::exp: {
      Expr da = differentiate(e.args()[0], i);
      return da.is_zero() ? Expr(0) : e * da;
    }
    case ExprOp::sin: {
      Expr da = differentiate(e.args()[0], i);
      return da.is_zero() ? Expr(0) : cos(e.args()[0]) * da;
    }
    case ExprOp::cos: {
      Expr da = differentiate(e.args()[0], i);
      return da.is_zero() ? Expr(0) : -(sin(e.args()[0]) * da);
    }
    case ExprOp::log: {
      Expr da = differentiate(e.args()[0], i);
      return da.is_zero() ? Expr(0) : inv(e.args()[0]) * da;
    }
    case ExprOp::inv: {
      Expr da = differentiate(e.args()[0], i);
      return da.is_zero() ? Expr(0) : -(pow(e, 2) * da);
    }
  }
  return Expr(0);
}

/// d^nu e / dx^nu.
inline Expr differentiate(const Expr& e, const EvenMultiIndex& nu) {
  Expr out = e;
  for (unsigned i = 0; i < nu.size(); ++i)
    for (unsigned k = 0; k < nu[i] && !out.is_zero(); ++k) out = differentiate(out, i);
  return out;
}

/// Memoised table of partial derivatives d^nu e, built by one-step extensions.
class DerivativeCache {
 public:
  explicit DerivativeCache(Expr e) { cache_.emplace(EvenMultiIndex{}, std::move(e)); }

  const Expr& get(const EvenMultiIndex& nu) {
    EvenMultiIndex key = trimmed(nu);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    // peel one derivative off the last nonzero slot
    EvenMultiIndex parent = key;
    unsigned i = static_cast<unsigned>(parent.size()) - 1;
    --parent[i];
    Expr d = differentiate(get(parent), i);
    return cache_.emplace(std::move(key), std::move(d)).first->second;
  }

 private:
  static EvenMultiIndex trimmed(EvenMultiIndex nu) {
    while (!nu.empty() && nu.back() == 0) nu.pop_back();
    return nu;
  }

  std::map<EvenMultiIndex, Expr> cache_;
};

namespace detail {

inline double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw EvaluationDomainError(std::string(what) + " produced a non-finite value");
  return v;
}

}  // namespace detail

/// Numeric evaluation; throws EvaluationDomainError at singular points.
inline double evaluate(const Expr& e, std::span<const double> x) {
  switch (e.op()) {
    case ExprOp::constant:
      return e.approx();
    case ExprOp::variable:
      if (e.index() >= x.size()) throw DomainMismatch("expression uses x" + std::to_string(e.index() + 1) +
                                                      " beyond the domain's even dimension");
      return x[e.index()];
    case ExprOp::sum: {
      double s = 0.0;
      for (const auto& a : e.args()) s += evaluate(a, x);
      return s;
    }
    case ExprOp::product: {
      double s = 1.0;
      for (const auto& a : e.args()) s *= evaluate(a, x);
      return detail::checked(s, "product");
    }
    case ExprOp::power:
      return detail::checked(std::pow(evaluate(e.args()[0], x), static_cast<double>(e.exponent())), "power");
    case ExprOp::exp:
      return detail::checked(std::exp(evaluate(e.args()[0], x)), "exp");
    case ExprOp::sin:
      return std::sin(evaluate(e.args()[0], x));
    case ExprOp::cos:
      return std::cos(evaluate(e.args()[0], x));
    case ExprOp::log: {
      double a = evaluate(e.args()[0], x);
      if (!(a > 0.0)) throw EvaluationDomainError("log of non-positive value " + ScalarTraits<double>::to_string(a));
      return std::log(a);
    }
    case ExprOp::inv: {
      double a = evaluate(e.args()[0], x);
      if (a == 0.0) throw EvaluationDomainError("inv of zero");
      return detail::checked(1.0 / a, "inv");
    }
  }
  return 0.0;
}

/// Exact evaluation; transcendental nodes are exact only at their trivial points.
inline Rational evaluate(const Expr& e, std::span<const Rational> x) {
  switch (e.op()) {
    case ExprOp::constant:
      return e.value();
    case ExprOp::variable:
      if (e.index() >= x.size()) throw DomainMismatch("expression uses x" + std::to_string(e.index() + 1) +
                                                      " beyond the domain's even dimension");
      return x[e.index()];
    case ExprOp::sum: {
      Rational s = 0;
      for (const auto& a : e.args()) s += evaluate(a, x);
      return s;
    }
    case ExprOp::product: {
      Rational s = 1;
      for (const auto& a : e.args()) s *= evaluate(a, x);
      return s;
    }
    case ExprOp::power: {
      Rational a = evaluate(e.args()[0], x);
      Rational s = 1;
      for (unsigned k = 0; k < e.exponent(); ++k) s *= a;
      return s;
    }
    case ExprOp::exp:
    case ExprOp::cos: {
      Rational a = evaluate(e.args()[0], x);
      if (sgn(a) == 0) return Rational(1);
      throw InexactEvaluation("transcendental value has no exact rational form");
    }
    case ExprOp::sin: {
      Rational a = evaluate(e.args()[0], x);
      if (sgn(a) == 0) return Rational(0);
      throw InexactEvaluation("transcendental value has no exact rational form");
    }
    case ExprOp::log: {
      Rational a = evaluate(e.args()[0], x);
      if (sgn(a) <= 0) throw EvaluationDomainError("log of non-positive value " + a.get_str());
      if (a == 1) return Rational(0);
      throw InexactEvaluation("transcendental value has no exact rational form");
    }
    case ExprOp::inv: {
      Rational a = evaluate(e.args()[0], x);
      if (sgn(a) == 0) throw EvaluationDomainError("inv of zero");
      return Rational(1 / a);
    }
  }
  return Rational(0);
}

/// Replace x_{i+1} by values[i].
inline Expr substitute(const Expr& e, std::span<const Expr> values) {
  switch (e.op()) {
    case ExprOp::constant:
      return e;
    case ExprOp::variable:
      if (e.index() >= values.size()) throw DomainMismatch("substitution misses x" + std::to_string(e.index() + 1));
      return values[e.index()];
    default: {
      std::vector<Expr> args;
      args.reserve(e.args().size());
      for (const auto& a : e.args()) args.push_back(substitute(a, values));
      return Expr::make(e.op(), std::move(args), e.exponent());
    }
  }
}

inline Expr evaluate(const Expr& e, std::span<const Expr> values) { return substitute(e, values); }

/// Number of even variables referenced (max index + 1).
inline unsigned variable_count(const Expr& e) {
  if (e.op() == ExprOp::variable) return e.index() + 1;
  unsigned n = 0;
  for (const auto& a : e.args()) n = std::max(n, variable_count(a));
  return n;
}

/// Only constants, variables, sums, products and powers.
inline bool is_polynomial(const Expr& e) {
  switch (e.op()) {
    case ExprOp::constant:
    case ExprOp::variable:
      return true;
    case ExprOp::sum:
    case ExprOp::product:
    case ExprOp::power:
      for (const auto& a : e.args())
        if (!is_polynomial(a)) return false;
      return true;
    default:
      return false;
  }
}

/// Text form accepted by the section-file grammar.
inline std::string to_string(const Expr& e) {
  auto paren = [](const Expr& a, bool need) {
    std::string s = to_string(a);
    return need ? "(" + s + ")" : s;
  };
  switch (e.op()) {
    case ExprOp::constant:
      return e.value().get_str();
    case ExprOp::variable:
      return "x" + std::to_string(e.index() + 1);
    case ExprOp::sum: {
      std::string out;
      for (std::size_t k = 0; k < e.args().size(); ++k) {
        std::string t = to_string(e.args()[k]);
        if (k == 0)
          out = t;
        else if (!t.empty() && t[0] == '-')
          out += " - " + t.substr(1);
        else
          out += " + " + t;
      }
      return out;
    }
    case ExprOp::product: {
      std::string out;
      const auto& f = e.args();
      std::size_t start = 0;
      if (f[0].is_constant() && f[0].value() == -1) {
        out = "-";
        start = 1;
      }
      for (std::size_t k = start; k < f.size(); ++k) {
        if (k > start) out += "*";
        bool need = f[k].op() == ExprOp::sum || (f[k].is_constant() && sgn(f[k].value()) < 0 && k > 0);
        out += paren(f[k], need);
      }
      return out;
    }
    case ExprOp::power: {
      const Expr& a = e.args()[0];
      bool need = a.op() == ExprOp::sum || a.op() == ExprOp::product || a.op() == ExprOp::power ||
                  (a.is_constant() && (sgn(a.value()) < 0 || a.value().get_den() != 1));
      return paren(a, need) + "^" + std::to_string(e.exponent());
    }
    case ExprOp::exp:
      return "exp(" + to_string(e.args()[0]) + ")";
    case ExprOp::sin:
      return "sin(" + to_string(e.args()[0]) + ")";
    case ExprOp::cos:
      return "cos(" + to_string(e.args()[0]) + ")";
    case ExprOp::log:
      return "log(" + to_string(e.args()[0]) + ")";
    case ExprOp::inv:
      return "inv(" + to_string(e.args()[0]) + ")";
  }
  return "";
}

/// Symbolic coefficient mode: elements whose coefficients are expressions.
template <>
struct ScalarTraits<Expr> {
  static constexpr bool exact = true;

  static Expr zero() { return Expr(0); }
  static Expr one() { return Expr(1); }
  static Expr from_rational(const Rational& r) { return Expr(r); }
  static bool is_zero(const Expr& v) { return v.is_zero(); }
  static double magnitude(const Expr& v) { return v.is_constant() ? std::abs(v.approx()) : 0.0; }
  static std::string to_string(const Expr& v) { return superweil::to_string(v); }
};

}  // namespace superweil
