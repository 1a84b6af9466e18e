#pragma once

#include <string>
#include <utility>
#include <vector>

#include "superweil/apoint.hpp"
#include "superweil/errors.hpp"

namespace superweil {

/// The flattened coordinate chart of M_A over a superdomain U: one real
/// coordinate per (even coordinate of U, even basis element of A) and per
/// (odd coordinate of U, odd basis element of A), in that order.
struct FlatChart {
  Superdomain source;
  AlgebraPtr algebra;
  /// (coordinate of U, basis index of A); coordinates of U count even ones first.
  std::vector<std::pair<unsigned, std::size_t>> slots;
  Superdomain domain;

  std::size_t slot(unsigned coordinate, std::size_t basis) const {
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (slots[k].first == coordinate && slots[k].second == basis) return k;
    throw InvalidArgument("flat chart has no slot for coordinate " + std::to_string(coordinate + 1));
  }
};

inline FlatChart make_flat_chart(const Superdomain& u, const AlgebraPtr& a) {
  FlatChart c{u, a, {}, {}};
  std::vector<Interval> box;
  for (unsigned i = 0; i < u.even_dim; ++i)
    for (std::size_t b = 0; b < a->dim(); ++b)
      if (a->parity(b) == Parity::even) {
        c.slots.emplace_back(i, b);
        box.push_back(b == 0 ? u.box[i] : Interval{});
      }
  for (unsigned j = 0; j < u.odd_dim; ++j)
    for (std::size_t b = 0; b < a->dim(); ++b)
      if (a->parity(b) == Parity::odd) {
        c.slots.emplace_back(u.even_dim + j, b);
        box.emplace_back();
      }
  c.domain = Superdomain::with_box(0, std::move(box));
  return c;
}

/// A B0-point of the flat chart of M_A.
template <class S>
struct ClassicalWeilPoint {
  FlatChart chart;
  APoint<S> point;
};

template <class S>
ClassicalWeilPoint<S> make_classical_point(FlatChart chart, const AlgebraPtr& b0, std::vector<Element<S>> values) {
  if (!b0->purely_even())
    throw ParityError("classical Weil point: " + b0->descriptor().to_string() + " is not purely even");
  APoint<S> p(chart.domain, b0, std::move(values), {});
  return ClassicalWeilPoint<S>{std::move(chart), std::move(p)};
}

/// The real chart coordinates of an A-point, as an R-point of the flat chart.
template <class S>
ClassicalWeilPoint<S> flatten(const APoint<S>& x) {
  FlatChart chart = make_flat_chart(x.domain(), x.algebra());
  const auto p = x.domain().even_dim;
  std::vector<S> coords;
  for (const auto& [k, b] : chart.slots) coords.push_back(k < p ? x.even_values()[k][b] : x.odd_values()[k - p][b]);
  APoint<S> pt = real_point<S>(chart.domain, coords);
  return ClassicalWeilPoint<S>{std::move(chart), std::move(pt)};
}

/// (M_A)_{B0} -> M_{A (x) B0}: the (i, a) value t contributes a (x) t to coordinate i.
template <class S>
APoint<S> transit(const ClassicalWeilPoint<S>& X, std::size_t max_dim = default_max_dim) {
  const FlatChart& c = X.chart;
  require_same_domain(X.point.domain(), c.domain, "transit");
  AlgebraPtr ab = tensor_even(c.algebra, X.point.algebra(), max_dim);
  const TensorFactors& tf = *ab->tensor_factors();
  const unsigned p = c.source.even_dim;
  std::vector<Element<S>> even(p, Element<S>(ab)), odd(c.source.odd_dim, Element<S>(ab));
  for (std::size_t k = 0; k < c.slots.size(); ++k) {
    const auto [coord, a] = c.slots[k];
    Element<S>& target = coord < p ? even[coord] : odd[coord - p];
    const Element<S>& t = X.point.even_values()[k];
    for (std::size_t b = 0; b < t.size(); ++b) target[tf.index[a][b]] += t[b];
  }
  return APoint<S>(c.source, ab, std::move(even), std::move(odd));
}

/// Inverse reshuffle: an A (x) B0-point back to the flat chart of M_A with B0 values.
template <class S>
ClassicalWeilPoint<S> transit_inverse(const APoint<S>& z) {
  const TensorFactors* tf = z.algebra()->tensor_factors();
  if (!tf) throw UnsupportedPresentation("transit_inverse needs a point over a tensor product algebra");
  FlatChart chart = make_flat_chart(z.domain(), tf->left);
  const unsigned p = z.domain().even_dim;
  std::vector<Element<S>> values;
  for (const auto& [coord, a] : chart.slots) {
    const Element<S>& src = coord < p ? z.even_values()[coord] : z.odd_values()[coord - p];
    Element<S> t(tf->right);
    for (std::size_t b = 0; b < tf->right->dim(); ++b) t[b] = src[tf->index[a][b]];
    values.push_back(std::move(t));
  }
  return make_classical_point<S>(std::move(chart), tf->right, std::move(values));
}

/// s^ = sum_a a (x) s^_a: s evaluated at the generic A-point of the chart, with
/// the chart coordinates as symbolic variables. Entry a holds s^_a.
inline std::vector<Expr> lift_section(const Section& s, const FlatChart& c) {
  require_same_domain(s.domain(), c.source, "lift_section");
  const AlgebraPtr& a = c.algebra;
  const unsigned p = c.source.even_dim;
  std::vector<Expr> base(p, Expr(0));
  std::vector<Element<Expr>> souls(p, Element<Expr>(a)), odd(c.source.odd_dim, Element<Expr>(a));
  for (std::size_t k = 0; k < c.slots.size(); ++k) {
    const auto [coord, b] = c.slots[k];
    if (coord < p && b == 0)
      base[coord] = var(static_cast<unsigned>(k));
    else
      (coord < p ? souls[coord] : odd[coord - p])[b] = var(static_cast<unsigned>(k));
  }
  Element<Expr> lifted = formal_taylor<Expr>(s, a, base, souls, odd);
  return lifted.coefficients();
}

/// Y(s) = sum_a a (x) X(s^_a), the functional on O(U) induced by X.
template <class S>
Element<S> induced_functional(const Section& s, const ClassicalWeilPoint<S>& X, const AlgebraPtr& ab) {
  const TensorFactors* tf = ab->tensor_factors();
  if (!tf || !tf->left->same_structure(*X.chart.algebra) || !tf->right->same_structure(*X.point.algebra()))
    throw AlgebraMismatch("induced_functional: target must be the tensor product of the chart and point algebras");
  std::vector<Expr> lifted = lift_section(s, X.chart);
  Element<S> out(ab);
  for (std::size_t a = 0; a < lifted.size(); ++a) {
    if (lifted[a].is_zero()) continue;
    Element<S> y = eval(Section::constant(X.chart.domain, lifted[a]), X.point);
    for (std::size_t b = 0; b < y.size(); ++b) out[tf->index[a][b]] += y[b];
  }
  return out;
}

}  // namespace superweil
