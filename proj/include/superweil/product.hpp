#pragma once

#include <utility>
#include <vector>

#include "superweil/apoint.hpp"
#include "superweil/errors.hpp"

namespace superweil {

/// U x V: boxes and odd dimensions concatenated, U's coordinates first.
inline Superdomain product_domain(const Superdomain& u, const Superdomain& v) {
  Superdomain out{u.even_dim + v.even_dim, u.odd_dim + v.odd_dim, u.box};
  out.box.insert(out.box.end(), v.box.begin(), v.box.end());
  return out;
}

template <class S>
APoint<S> product_pair(const APoint<S>& x, const APoint<S>& y) {
  require_same_algebra(x.algebra(), y.algebra(), "product_pair");
  auto even = x.even_values();
  auto odd = x.odd_values();
  for (const auto& v : y.even_values()) even.push_back(v.rebase(x.algebra()));
  for (const auto& v : y.odd_values()) odd.push_back(v.rebase(x.algebra()));
  return APoint<S>(product_domain(x.domain(), y.domain()), x.algebra(), std::move(even), std::move(odd));
}

template <class S>
std::pair<APoint<S>, APoint<S>> product_split(const APoint<S>& z, const Superdomain& u, const Superdomain& v) {
  require_same_domain(z.domain(), product_domain(u, v), "product_split");
  const auto& ev = z.even_values();
  const auto& od = z.odd_values();
  auto slice = [](const std::vector<Element<S>>& xs, std::size_t from, std::size_t count) {
    return std::vector<Element<S>>(xs.begin() + static_cast<std::ptrdiff_t>(from),
                                   xs.begin() + static_cast<std::ptrdiff_t>(from + count));
  };
  APoint<S> x(u, z.algebra(), slice(ev, 0, u.even_dim), slice(od, 0, u.odd_dim));
  APoint<S> y(v, z.algebra(), slice(ev, u.even_dim, v.even_dim), slice(od, u.odd_dim, v.odd_dim));
  return {std::move(x), std::move(y)};
}

/// pr_1^* s on U x V.
inline Section pull_first(const Section& s, const Superdomain& v) {
  return shift_section(s, product_domain(s.domain(), v), 0, 0);
}

/// pr_2^* t on U x V.
inline Section pull_second(const Superdomain& u, const Section& t) {
  return shift_section(t, product_domain(u, t.domain()), u.even_dim, u.odd_dim);
}

/// s1 (x) s2 = pr_1^* s1 . pr_2^* s2.
inline Section section_tensor(const Section& s1, const Section& s2) {
  return pull_first(s1, s2.domain()) * pull_second(s1.domain(), s2);
}

}  // namespace superweil
