#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "superweil/errors.hpp"
#include "superweil/monomial.hpp"
#include "superweil/scalar.hpp"

namespace superweil {

inline constexpr std::size_t default_max_dim = 64;

class AlgebraDescriptor;
using DescriptorPtr = std::shared_ptr<const AlgebraDescriptor>;

struct GrassmannDesc {
  unsigned generators = 0;
};

/// R[x_1..x_k] (x) Lambda(theta_1..theta_l) / m^s.
struct TruncatedPolyDesc {
  unsigned even = 0;
  unsigned odd = 0;
  unsigned truncation = 1;
};

struct DualDesc {};
struct SuperDualDesc {};

/// A (x) B0 with B0 purely even.
struct TensorEvenDesc {
  DescriptorPtr left;
  DescriptorPtr right;
};

/// Explicit presentation: constants[i][j][k] is the coefficient of e_k in e_i e_j.
struct TableDesc {
  std::vector<Parity> parities;
  std::vector<std::vector<std::vector<Rational>>> constants;
  std::size_t unit = 0;
};

class AlgebraDescriptor {
 public:
  using Variant = std::variant<GrassmannDesc, TruncatedPolyDesc, DualDesc, SuperDualDesc, TensorEvenDesc, TableDesc>;

  AlgebraDescriptor(Variant v) : v_(std::move(v)) {}

  static AlgebraDescriptor grassmann(unsigned q) { return {GrassmannDesc{q}}; }
  static AlgebraDescriptor truncated_poly(unsigned k, unsigned l, unsigned s) { return {TruncatedPolyDesc{k, l, s}}; }
  static AlgebraDescriptor dual() { return {DualDesc{}}; }
  static AlgebraDescriptor super_dual() { return {SuperDualDesc{}}; }
  static AlgebraDescriptor reals() { return truncated_poly(0, 0, 1); }
  static AlgebraDescriptor tensor(AlgebraDescriptor a, AlgebraDescriptor b) {
    return {TensorEvenDesc{std::make_shared<const AlgebraDescriptor>(std::move(a)),
                           std::make_shared<const AlgebraDescriptor>(std::move(b))}};
  }

  const Variant& variant() const { return v_; }

  /// Descriptor grammar form. Table presentations print as "table(<dim>)".
  std::string to_string() const {
    return std::visit(
        [](const auto& d) -> std::string {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, GrassmannDesc>) {
            return "grassmann(" + std::to_string(d.generators) + ")";
          } else if constexpr (std::is_same_v<T, TruncatedPolyDesc>) {
            return "poly(" + std::to_string(d.even) + "," + std::to_string(d.odd) + "," +
                   std::to_string(d.truncation) + ")";
          } else if constexpr (std::is_same_v<T, DualDesc>) {
            return "dual";
          } else if constexpr (std::is_same_v<T, SuperDualDesc>) {
            return "superdual";
          } else if constexpr (std::is_same_v<T, TensorEvenDesc>) {
            return "tensor(" + d.left->to_string() + "," + d.right->to_string() + ")";
          } else {
            return "table(" + std::to_string(d.parities.size()) + ")";
          }
        },
        v_);
  }

 private:
  Variant v_;
};

/// One summand of a structure-constant product e_i e_j = sum coeff * e_index.
struct StructureTerm {
  std::uint32_t index = 0;
  Rational coeff;
  double approx = 0.0;
};

/// Variables grouped into blocks, each truncated independently: the monomial
/// x^nu theta^J survives iff, for every block, its degree in that block's
/// variables is below the block's truncation. One block is a TruncatedPoly;
/// tensor products of such algebras concatenate their blocks.
struct MonomialBlock {
  unsigned even = 0;
  unsigned odd = 0;
  unsigned truncation = 1;
};

class MonomialLayout {
 public:
  MonomialLayout() = default;
  explicit MonomialLayout(std::vector<MonomialBlock> blocks) : blocks_(std::move(blocks)) {
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      for (unsigned i = 0; i < blocks_[b].even; ++i) even_block_.push_back(b);
      for (unsigned j = 0; j < blocks_[b].odd; ++j) odd_block_.push_back(b);
    }
  }

  const std::vector<MonomialBlock>& blocks() const { return blocks_; }
  unsigned even_vars() const { return static_cast<unsigned>(even_block_.size()); }
  unsigned odd_vars() const { return static_cast<unsigned>(odd_block_.size()); }
  std::size_t block_of_even(unsigned i) const { return even_block_[i]; }
  std::size_t block_of_odd(unsigned j) const { return odd_block_[j]; }

  std::vector<unsigned> block_degrees(const SuperMonomial& m) const {
    std::vector<unsigned> deg(blocks_.size(), 0);
    for (unsigned i = 0; i < m.even.size(); ++i) deg[even_block_[i]] += m.even[i];
    for (unsigned j : m.odd.members()) deg[odd_block_[j]] += 1;
    return deg;
  }

  bool admissible(const SuperMonomial& m) const {
    if (m.odd.span() > odd_vars()) return false;
    auto deg = block_degrees(m);
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      if (deg[b] >= blocks_[b].truncation) return false;
    return true;
  }

  bool operator==(const MonomialLayout& o) const {
    if (blocks_.size() != o.blocks_.size()) return false;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const auto &x = blocks_[b], &y = o.blocks_[b];
      if (x.even != y.even || x.odd != y.odd || x.truncation != y.truncation) return false;
    }
    return true;
  }

 private:
  std::vector<MonomialBlock> blocks_;
  std::vector<std::size_t> even_block_;
  std::vector<std::size_t> odd_block_;
};

class WeilAlgebra;
using AlgebraPtr = std::shared_ptr<const WeilAlgebra>;

/// Basis bookkeeping for A (x) B0: factors[k] = (i, j) means e_k = a_i (x) b_j.
struct TensorFactors {
  AlgebraPtr left;
  AlgebraPtr right;
  std::vector<std::pair<std::size_t, std::size_t>> factors;
  std::vector<std::vector<std::size_t>> index;  // index[i][j] = k
};

inline AlgebraPtr make_algebra(const AlgebraDescriptor& desc, std::size_t max_dim = default_max_dim);

/// A finite-dimensional supercommutative unital algebra R.1 + nilpotent ideal,
/// stored on a canonical basis whose element 0 is the unit.
class WeilAlgebra {
 public:
  const AlgebraDescriptor& descriptor() const { return desc_; }
  std::size_t dim() const { return parities_.size(); }
  Parity parity(std::size_t i) const { return parities_[i]; }
  std::span<const StructureTerm> product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

  /// Least r with (nilpotent ideal)^{r+1} = 0.
  unsigned height() const { return height_; }
  /// dim(I / I^2) for the nilpotent ideal I.
  unsigned width() const { return width_; }

  bool is_monomial() const { return layout_.has_value(); }
  const MonomialLayout& layout() const {
    if (!layout_) throw UnsupportedPresentation("algebra " + desc_.to_string() + " has no monomial presentation");
    return *layout_;
  }
  const SuperMonomial& monomial(std::size_t i) const {
    layout();
    return monomials_[i];
  }
  std::optional<std::size_t> find(const SuperMonomial& m) const {
    auto it = monomial_index_.find(m);
    if (it == monomial_index_.end()) return std::nullopt;
    return it->second;
  }

  unsigned even_generators() const { return layout_ ? layout_->even_vars() : 0U; }
  unsigned odd_generators() const { return layout_ ? layout_->odd_vars() : 0U; }
  /// Basis index of x_{i+1}, or nullopt if it is truncated away.
  std::optional<std::size_t> even_generator(unsigned i) const {
    SuperMonomial m{unit_index(even_generators(), i), {}};
    return find(m);
  }
  std::optional<std::size_t> odd_generator(unsigned j) const {
    return find(SuperMonomial{EvenMultiIndex(even_generators(), 0), OddIndexSet::single(j)});
  }

  std::string label(std::size_t i) const {
    if (i == 0) return "1";
    if (layout_) return monomial_label(monomials_[i]);
    return "e" + std::to_string(original_index_[i]);
  }

  const TensorFactors* tensor_factors() const { return tensor_ ? tensor_.get() : nullptr; }

  bool purely_even() const {
    return std::all_of(parities_.begin(), parities_.end(), [](Parity p) { return p == Parity::even; });
  }

  /// Identical basis, parities and structure constants.
  bool same_structure(const WeilAlgebra& o) const {
    if (this == &o) return true;
    if (dim() != o.dim() || parities_ != o.parities_) return false;
    if (layout_.has_value() != o.layout_.has_value()) return false;
    if (layout_ && monomials_ != o.monomials_) return false;
    for (std::size_t k = 0; k < table_.size(); ++k) {
      const auto &x = table_[k], &y = o.table_[k];
      if (x.size() != y.size()) return false;
      for (std::size_t t = 0; t < x.size(); ++t)
        if (x[t].index != y[t].index || x[t].coeff != y[t].coeff) return false;
    }
    return true;
  }

 private:
  friend AlgebraPtr make_algebra(const AlgebraDescriptor&, std::size_t);
  friend AlgebraPtr tensor_even(const AlgebraPtr&, const AlgebraPtr&, std::size_t);
  friend struct AlgebraBuilder;

  explicit WeilAlgebra(AlgebraDescriptor desc) : desc_(std::move(desc)) {}

  AlgebraDescriptor desc_;
  std::vector<Parity> parities_;
  std::vector<std::vector<StructureTerm>> table_;
  unsigned height_ = 0;
  unsigned width_ = 0;
  std::optional<MonomialLayout> layout_;
  std::vector<SuperMonomial> monomials_;
  std::map<SuperMonomial, std::size_t> monomial_index_;
  std::vector<std::size_t> original_index_;
  std::shared_ptr<const TensorFactors> tensor_;
};

namespace detail {

/// Incrementally row-reduced span of rational vectors.
class RowSpace {
 public:
  explicit RowSpace(std::size_t n) : n_(n) {}

  /// Returns true if v was independent of the current span.
  bool insert(std::vector<Rational> v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& c = v[pivots_[r]];
      if (sgn(c) == 0) continue;
      Rational f = c;
      for (std::size_t k = 0; k < n_; ++k)
        if (sgn(rows_[r][k]) != 0) v[k] -= f * rows_[r][k];
    }
    std::size_t pivot = n_;
    for (std::size_t k = 0; k < n_; ++k)
      if (sgn(v[k]) != 0) {
        pivot = k;
        break;
      }
    if (pivot == n_) return false;
    Rational inv = 1 / v[pivot];
    for (auto& x : v) x *= inv;
    for (auto& row : rows_) {
      Rational f = row[pivot];
      if (sgn(f) == 0) continue;
      for (std::size_t k = 0; k < n_; ++k) row[k] -= f * v[k];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }

 private:
  std::size_t n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

inline std::vector<Rational> multiply_dense(const std::vector<std::vector<StructureTerm>>& table, std::size_t dim,
                                            const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(dim, Rational(0));
  for (std::size_t i = 0; i < dim; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (sgn(b[j]) == 0) continue;
      Rational ab = a[i] * b[j];
      for (const auto& t : table[i * dim + j]) out[t.index] += ab * t.coeff;
    }
  }
  return out;
}

/// Powers of the nilpotent ideal spanned by basis elements 1..dim-1.
/// Returns dims of I, I^2, ... up to the first zero power; throws if nilpotency fails.
inline std::vector<std::size_t> ideal_power_dims(const std::vector<std::vector<StructureTerm>>& table,
                                                 std::size_t dim) {
  std::vector<std::size_t> dims;
  std::vector<std::vector<Rational>> current;
  for (std::size_t i = 1; i < dim; ++i) {
    std::vector<Rational> v(dim, Rational(0));
    v[i] = 1;
    current.push_back(std::move(v));
  }
  for (std::size_t step = 0; !current.empty(); ++step) {
    if (step > dim) throw AxiomViolation("nilpotency: the span of the non-unit basis elements is not nilpotent");
    dims.push_back(current.size());
    RowSpace next(dim);
    for (const auto& u : current) {
      for (std::size_t j = 1; j < dim; ++j) {
        std::vector<Rational> e(dim, Rational(0));
        e[j] = 1;
        next.insert(multiply_dense(table, dim, u, e));
      }
    }
    current = next.rows();
  }
  return dims;
}

inline StructureTerm make_term(std::size_t index, const Rational& c) {
  return StructureTerm{static_cast<std::uint32_t>(index), c, c.get_d()};
}

}  // namespace detail

struct AlgebraBuilder {
  static void finish(WeilAlgebra& a) {
    auto dims = detail::ideal_power_dims(a.table_, a.dim());
    a.height_ = static_cast<unsigned>(dims.size());
    std::size_t d1 = dims.empty() ? 0 : dims[0];
    std::size_t d2 = dims.size() > 1 ? dims[1] : 0;
    a.width_ = static_cast<unsigned>(d1 - d2);
  }

  static std::shared_ptr<WeilAlgebra> monomial_algebra(AlgebraDescriptor desc, MonomialLayout layout,
                                                       std::size_t max_dim) {
    std::vector<SuperMonomial> basis;
    const unsigned k = layout.even_vars(), l = layout.odd_vars();
    if (l > 60) throw DimensionCapExceeded("too many odd generators");
    // Enumerate block by block so truncation prunes early.
    SuperMonomial current{EvenMultiIndex(k, 0), {}};
    std::vector<unsigned> block_deg(layout.blocks().size(), 0);
    auto check_cap = [&] {
      if (basis.size() > max_dim)
        throw DimensionCapExceeded("algebra " + desc.to_string() + " exceeds the dimension cap of " +
                                   std::to_string(max_dim));
    };
    auto rec_odd = [&](auto&& self, unsigned j) -> void {
      if (j == l) {
        basis.push_back(current);
        check_cap();
        return;
      }
      self(self, j + 1);
      std::size_t b = layout.block_of_odd(j);
      if (block_deg[b] + 1 < layout.blocks()[b].truncation) {
        ++block_deg[b];
        current.odd = current.odd.with(j);
        self(self, j + 1);
        current.odd = current.odd.without(j);
        --block_deg[b];
      }
    };
    auto rec_even = [&](auto&& self, unsigned i) -> void {
      if (i == k) {
        rec_odd(rec_odd, 0);
        return;
      }
      std::size_t b = layout.block_of_even(i);
      unsigned saved = block_deg[b];
      for (unsigned e = 0; saved + e < layout.blocks()[b].truncation; ++e) {
        current.even[i] = e;
        block_deg[b] = saved + e;
        self(self, i + 1);
      }
      current.even[i] = 0;
      block_deg[b] = saved;
    };
    bool nonzero = std::all_of(layout.blocks().begin(), layout.blocks().end(),
                               [](const MonomialBlock& b) { return b.truncation >= 1; });
    if (!nonzero) throw InvalidArgument("truncation degree must be at least 1");
    rec_even(rec_even, 0);
    std::sort(basis.begin(), basis.end(), graded_lex_less);

    auto a = std::shared_ptr<WeilAlgebra>(new WeilAlgebra(std::move(desc)));
    const std::size_t n = basis.size();
    for (std::size_t i = 0; i < n; ++i) a->monomial_index_.emplace(basis[i], i);
    a->parities_.reserve(n);
    for (const auto& m : basis) a->parities_.push_back(m.parity());
    a->table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        int sign = odd_product_sign(basis[i].odd, basis[j].odd);
        if (sign == 0) continue;
        SuperMonomial m{basis[i].even, OddIndexSet{basis[i].odd.bits | basis[j].odd.bits}};
        for (unsigned v = 0; v < k; ++v) m.even[v] += basis[j].even[v];
        if (!layout.admissible(m)) continue;
        a->table_[i * n + j].push_back(detail::make_term(a->monomial_index_.at(m), Rational(sign)));
      }
    }
    a->original_index_.resize(n);
    std::iota(a->original_index_.begin(), a->original_index_.end(), 0);
    a->layout_ = std::move(layout);
    a->monomials_ = std::move(basis);
    finish(*a);
    return a;
  }

  static std::shared_ptr<WeilAlgebra> table_algebra(const AlgebraDescriptor& desc, std::size_t max_dim) {
    const auto& t = std::get<TableDesc>(desc.variant());
    const std::size_t n = t.parities.size();
    if (n == 0) throw AxiomViolation("table: dimension must be positive");
    if (n > max_dim)
      throw DimensionCapExceeded("table dimension " + std::to_string(n) + " exceeds cap " + std::to_string(max_dim));
    if (t.unit >= n) throw AxiomViolation("table: unit index out of range");
    if (t.constants.size() != n) throw AxiomViolation("table: structure constants must be dim x dim x dim");
    for (const auto& row : t.constants) {
      if (row.size() != n) throw AxiomViolation("table: structure constants must be dim x dim x dim");
      for (const auto& v : row)
        if (v.size() != n) throw AxiomViolation("table: structure constants must be dim x dim x dim");
    }
    auto pair_str = [](std::size_t i, std::size_t j) {
      return "(e" + std::to_string(i) + ", e" + std::to_string(j) + ")";
    };
    const auto& c = t.constants;
    if (t.parities[t.unit] != Parity::even) throw AxiomViolation("unit: the unit must be even");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        Rational expect = (k == i) ? 1 : 0;
        if (c[t.unit][i][k] != expect || c[i][t.unit][k] != expect)
          throw AxiomViolation("unit fails on basis pair " + pair_str(t.unit, i));
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Parity pij = t.parities[i] + t.parities[j];
        int sign = (t.parities[i] == Parity::odd && t.parities[j] == Parity::odd) ? -1 : 1;
        for (std::size_t k = 0; k < n; ++k) {
          if (sgn(c[i][j][k]) != 0 && t.parities[k] != pij)
            throw AxiomViolation("parity fails on basis pair " + pair_str(i, j));
          if (c[i][j][k] != sign * c[j][i][k])
            throw AxiomViolation("supercommutativity fails on basis pair " + pair_str(i, j));
        }
        if (i != t.unit && j != t.unit && sgn(c[i][j][t.unit]) != 0)
          throw AxiomViolation("ideal: product of nilpotent basis pair " + pair_str(i, j) + " has a unit component");
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t out = 0; out < n; ++out) {
            Rational lhs = 0, rhs = 0;
            for (std::size_t m = 0; m < n; ++m) {
              lhs += c[i][j][m] * c[m][k][out];
              rhs += c[j][k][m] * c[i][m][out];
            }
            if (lhs != rhs)
              throw AxiomViolation("associativity fails on basis triple (e" + std::to_string(i) + ", e" +
                                   std::to_string(j) + ", e" + std::to_string(k) + ")");
          }

    // Reorder so that the unit is basis element 0.
    std::vector<std::size_t> order{t.unit};
    for (std::size_t i = 0; i < n; ++i)
      if (i != t.unit) order.push_back(i);
    std::vector<std::size_t> position(n);
    for (std::size_t p = 0; p < n; ++p) position[order[p]] = p;

    auto a = std::shared_ptr<WeilAlgebra>(new WeilAlgebra(desc));
    a->original_index_ = order;
    for (std::size_t p = 0; p < n; ++p) a->parities_.push_back(t.parities[order[p]]);
    a->table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto& terms = a->table_[position[i] * n + position[j]];
        for (std::size_t k = 0; k < n; ++k)
          if (sgn(c[i][j][k]) != 0) terms.push_back(detail::make_term(position[k], c[i][j][k]));
        std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.index < y.index; });
      }
    finish(*a);
    return a;
  }
};

/// A (x) B0 for purely even B0. Monomial factors give a monomial algebra whose
/// blocks are A's followed by B0's; otherwise basis pairs (a_i, b_j) ordered
/// with j major.
inline AlgebraPtr tensor_even(const AlgebraPtr& left, const AlgebraPtr& right, std::size_t max_dim = default_max_dim) {
  if (!right->purely_even())
    throw ParityError("tensor_even: the second factor " + right->descriptor().to_string() + " is not purely even");
  if (left->dim() * right->dim() > max_dim)
    throw DimensionCapExceeded("tensor product dimension " + std::to_string(left->dim() * right->dim()) +
                               " exceeds cap " + std::to_string(max_dim));
  AlgebraDescriptor desc = AlgebraDescriptor::tensor(left->descriptor(), right->descriptor());
  auto factors = std::make_shared<TensorFactors>();
  factors->left = left;
  factors->right = right;
  factors->index.assign(left->dim(), std::vector<std::size_t>(right->dim(), 0));
  std::shared_ptr<WeilAlgebra> out;

  if (left->is_monomial() && right->is_monomial()) {
    std::vector<MonomialBlock> blocks = left->layout().blocks();
    for (const auto& b : right->layout().blocks()) blocks.push_back(b);
    out = AlgebraBuilder::monomial_algebra(desc, MonomialLayout(std::move(blocks)), max_dim);
    const unsigned ka = left->even_generators();
    factors->factors.resize(out->dim());
    for (std::size_t k = 0; k < out->dim(); ++k) {
      const auto& m = out->monomial(k);
      SuperMonomial ma{EvenMultiIndex(m.even.begin(), m.even.begin() + ka), m.odd};
      SuperMonomial mb{EvenMultiIndex(m.even.begin() + ka, m.even.end()), {}};
      std::size_t i = *left->find(ma), j = *right->find(mb);
      factors->factors[k] = {i, j};
      factors->index[i][j] = k;
    }
  } else {
    const std::size_t da = left->dim(), db = right->dim(), n = da * db;
    out = std::shared_ptr<WeilAlgebra>(new WeilAlgebra(desc));
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t i = 0; i < da; ++i) {
        factors->index[i][j] = factors->factors.size();
        factors->factors.emplace_back(i, j);
        out->parities_.push_back(left->parity(i));
      }
    out->original_index_.resize(n);
    std::iota(out->original_index_.begin(), out->original_index_.end(), 0);
    out->table_.resize(n * n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        auto [i1, j1] = factors->factors[u];
        auto [i2, j2] = factors->factors[v];
        std::map<std::size_t, Rational> acc;
        for (const auto& ta : left->product(i1, i2))
          for (const auto& tb : right->product(j1, j2)) acc[factors->index[ta.index][tb.index]] += ta.coeff * tb.coeff;
        for (auto& [k, c] : acc)
          if (sgn(c) != 0) out->table_[u * n + v].push_back(detail::make_term(k, c));
      }
    AlgebraBuilder::finish(*out);
  }
  out->tensor_ = std::move(factors);
  return out;
}

inline AlgebraPtr make_algebra(const AlgebraDescriptor& desc, std::size_t max_dim) {
  return std::visit(
      [&](const auto& d) -> AlgebraPtr {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, GrassmannDesc>) {
          return AlgebraBuilder::monomial_algebra(desc, MonomialLayout({{0, d.generators, d.generators + 1}}),
                                                  max_dim);
        } else if constexpr (std::is_same_v<T, TruncatedPolyDesc>) {
          if (d.truncation < 1) throw InvalidArgument("poly: truncation degree s must be at least 1");
          return AlgebraBuilder::monomial_algebra(desc, MonomialLayout({{d.even, d.odd, d.truncation}}), max_dim);
        } else if constexpr (std::is_same_v<T, DualDesc>) {
          return AlgebraBuilder::monomial_algebra(desc, MonomialLayout({{1, 0, 2}}), max_dim);
        } else if constexpr (std::is_same_v<T, SuperDualDesc>) {
          return AlgebraBuilder::monomial_algebra(desc, MonomialLayout({{1, 1, 2}}), max_dim);
        } else if constexpr (std::is_same_v<T, TensorEvenDesc>) {
          return tensor_even(make_algebra(*d.left, max_dim), make_algebra(*d.right, max_dim), max_dim);
        } else {
          return AlgebraBuilder::table_algebra(desc, max_dim);
        }
      },
      desc.variant());
}

inline unsigned height(const WeilAlgebra& a) { return a.height(); }
inline unsigned width(const WeilAlgebra& a) { return a.width(); }

inline void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b, const char* where) {
  if (a == b) return;
  if (!a || !b || !a->same_structure(*b))
    throw AlgebraMismatch(std::string(where) + ": operands live in different algebras (" +
                          (a ? a->descriptor().to_string() : "null") + " vs " +
                          (b ? b->descriptor().to_string() : "null") + ")");
}

}  // namespace superweil
