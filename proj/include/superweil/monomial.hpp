#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "superweil/errors.hpp"
#include "superweil/scalar.hpp"

namespace superweil {

enum class Parity : std::uint8_t { even = 0, odd = 1 };

constexpr Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

constexpr Parity parity_of(unsigned count) { return (count & 1U) ? Parity::odd : Parity::even; }

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

/// Exponents of the even variables, nu = (nu_1, ..., nu_k).
using EvenMultiIndex = std::vector<unsigned>;

inline unsigned total_degree(const EvenMultiIndex& nu) {
  return std::accumulate(nu.begin(), nu.end(), 0U);
}

/// nu! = prod nu_i!, exact.
inline Rational factorial(const EvenMultiIndex& nu) {
  mpz_class acc = 1;
  for (unsigned n : nu) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    acc *= f;
  }
  return Rational(acc);
}

inline EvenMultiIndex unit_index(unsigned size, unsigned i) {
  EvenMultiIndex nu(size, 0);
  nu[i] = 1;
  return nu;
}

/// Subset J of the odd variables. Bit j (0-based) stands for theta_{j+1}.
struct OddIndexSet {
  std::uint64_t bits = 0;

  static OddIndexSet of(std::initializer_list<unsigned> members) {
    OddIndexSet s;
    for (unsigned j : members) s.bits |= std::uint64_t{1} << j;
    return s;
  }
  static OddIndexSet single(unsigned j) { return OddIndexSet{std::uint64_t{1} << j}; }

  unsigned size() const { return static_cast<unsigned>(std::popcount(bits)); }
  bool empty() const { return bits == 0; }
  bool contains(unsigned j) const { return (bits >> j) & 1U; }
  Parity parity() const { return parity_of(size()); }
  OddIndexSet without(unsigned j) const { return OddIndexSet{bits & ~(std::uint64_t{1} << j)}; }
  OddIndexSet with(unsigned j) const { return OddIndexSet{bits | (std::uint64_t{1} << j)}; }

  /// Members in increasing order.
  std::vector<unsigned> members() const {
    std::vector<unsigned> out;
    for (std::uint64_t b = bits; b != 0; b &= b - 1) out.push_back(static_cast<unsigned>(std::countr_zero(b)));
    return out;
  }

  /// Highest member + 1, 0 when empty.
  unsigned span() const { return bits == 0 ? 0U : 64U - static_cast<unsigned>(std::countl_zero(bits)); }

  auto operator<=>(const OddIndexSet&) const = default;
};

/// Sign of theta^J theta^K rewritten as theta^{J u K}; 0 when J and K overlap.
inline int odd_product_sign(OddIndexSet a, OddIndexSet b) {
  if (a.bits & b.bits) return 0;
  unsigned swaps = 0;
  for (unsigned k : b.members()) swaps += static_cast<unsigned>(std::popcount(a.bits >> (k + 1)));
  return (swaps & 1U) ? -1 : 1;
}

/// Sign of the left derivative d/dtheta_j applied to theta^J (0 if j is not in J).
inline int left_derivative_sign(OddIndexSet set, unsigned j) {
  if (!set.contains(j)) return 0;
  std::uint64_t below = set.bits & ((std::uint64_t{1} << j) - 1);
  return (std::popcount(below) & 1) ? -1 : 1;
}

/// x^nu theta^J.
struct SuperMonomial {
  EvenMultiIndex even;
  OddIndexSet odd;

  unsigned degree() const { return total_degree(even) + odd.size(); }
  Parity parity() const { return odd.parity(); }

  bool operator==(const SuperMonomial&) const = default;
};

/// Canonical order: total degree, then nu lexicographically ascending, then J as an integer.
inline bool graded_lex_less(const SuperMonomial& a, const SuperMonomial& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  if (a.even != b.even) return a.even < b.even;
  return a.odd.bits < b.odd.bits;
}

inline bool operator<(const SuperMonomial& a, const SuperMonomial& b) { return graded_lex_less(a, b); }

/// All nu in N^p with |nu| <= max_degree, graded-lex ascending.
inline std::vector<EvenMultiIndex> multi_indices_up_to(unsigned p, unsigned max_degree) {
  std::vector<EvenMultiIndex> out;
  EvenMultiIndex current(p, 0);
  for (unsigned d = 0; d <= max_degree; ++d) {
    // exponent vectors of exact degree d, lexicographically ascending
    auto rec = [&](auto&& self, unsigned pos, unsigned remaining) -> void {
      if (pos + 1 == p) {
        current[pos] = remaining;
        out.push_back(current);
        return;
      }
      for (unsigned e = 0; e <= remaining; ++e) {
        current[pos] = e;
        self(self, pos + 1, remaining - e);
      }
    };
    if (p == 0) {
      if (d == 0) out.emplace_back();
      continue;
    }
    rec(rec, 0, d);
  }
  return out;
}

/// All subsets of {0..q-1} with at most max_size members, ordered by size then bits.
inline std::vector<OddIndexSet> odd_subsets(unsigned q, unsigned max_size) {
  std::vector<OddIndexSet> out;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << q); ++b) {
    if (static_cast<unsigned>(std::popcount(b)) <= max_size) out.push_back(OddIndexSet{b});
  }
  std::stable_sort(out.begin(), out.end(), [](OddIndexSet a, OddIndexSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.bits < b.bits;
  });
  return out;
}

/// "x1^2 x3^1 t1 t2"; the empty monomial prints as "1".
inline std::string monomial_label(const SuperMonomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.even.size(); ++i) {
    if (m.even[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += "x" + std::to_string(i + 1) + "^" + std::to_string(m.even[i]);
  }
  for (unsigned j : m.odd.members()) {
    if (!out.empty()) out += ' ';
    out += "t" + std::to_string(j + 1);
  }
  return out.empty() ? "1" : out;
}

}  // namespace superweil
