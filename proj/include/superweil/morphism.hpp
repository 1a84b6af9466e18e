#pragma once

#include <string>
#include <utility>
#include <vector>

#include "superweil/algebra.hpp"
#include "superweil/element.hpp"
#include "superweil/errors.hpp"

namespace superweil {

/// A parity-preserving unital algebra map, stored as the image of every source basis element.
class AlgebraMorphism {
 public:
  AlgebraMorphism(AlgebraPtr source, AlgebraPtr target, std::vector<Element<Rational>> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {}

  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }
  const Element<Rational>& image(std::size_t i) const { return images_[i]; }
  const std::vector<Element<Rational>>& images() const { return images_; }

  template <class S>
  Element<S> operator()(const Element<S>& a) const {
    require_same_algebra(a.algebra(), source_, "apply morphism");
    Element<S> out(target_);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (ScalarTraits<S>::is_zero(a[i])) continue;
      const auto& img = images_[i];
      for (std::size_t k = 0; k < img.size(); ++k) {
        if (sgn(img[k]) == 0) continue;
        if constexpr (std::is_same_v<S, double>) {
          out[k] += a[i] * img[k].get_d();
        } else {
          out[k] += a[i] * ScalarTraits<S>::from_rational(img[k]);
        }
      }
    }
    return out;
  }

  friend bool operator==(const AlgebraMorphism& a, const AlgebraMorphism& b) {
    if (!a.source_->same_structure(*b.source_) || !a.target_->same_structure(*b.target_)) return false;
    for (std::size_t i = 0; i < a.images_.size(); ++i)
      if (!(a.images_[i] == b.images_[i].rebase(a.target_))) return false;
    return true;
  }

 private:
  AlgebraPtr source_;
  AlgebraPtr target_;
  std::vector<Element<Rational>> images_;
};

/// Exhaustive check: unit to unit, parity preserved, multiplicative on every basis pair.
/// Throws NotWellDefined / ParityError naming the first failure.
inline void validate_morphism(const AlgebraMorphism& rho) {
  const auto& src = rho.source();
  const auto& tgt = rho.target();
  if (rho.images().size() != src->dim()) throw NotWellDefined("morphism: one image per source basis element required");
  for (const auto& img : rho.images()) require_same_algebra(img.algebra(), tgt, "morphism image");
  if (!(rho.image(0) == Element<Rational>::one(tgt))) throw NotWellDefined("morphism does not map the unit to the unit");
  for (std::size_t i = 0; i < src->dim(); ++i)
    if (!rho.image(i).is_homogeneous(src->parity(i)))
      throw ParityError("morphism: image of basis element " + src->label(i) + " is not " +
                        to_string(src->parity(i)));
  for (std::size_t i = 0; i < src->dim(); ++i)
    for (std::size_t j = 0; j < src->dim(); ++j) {
      Element<Rational> uv = Element<Rational>::basis(src, i) * Element<Rational>::basis(src, j);
      if (!(rho(uv) == rho.image(i) * rho.image(j)))
        throw NotWellDefined("morphism is not multiplicative on basis pair (" + src->label(i) + ", " +
                             src->label(j) + ")");
    }
}

/// Validated morphism from explicit basis images.
inline AlgebraMorphism morphism_from_basis_images(AlgebraPtr source, AlgebraPtr target,
                                                  std::vector<Element<Rational>> images) {
  AlgebraMorphism rho(std::move(source), std::move(target), std::move(images));
  validate_morphism(rho);
  return rho;
}

/// Extends generator images (even generators first, then odd) multiplicatively and
/// checks that the defining relations of the source are killed.
inline AlgebraMorphism make_morphism(const AlgebraPtr& source, const AlgebraPtr& target,
                                     const std::vector<Element<Rational>>& generator_images) {
  const auto& layout = source->layout();
  const unsigned k = layout.even_vars(), l = layout.odd_vars();
  if (generator_images.size() != k + l)
    throw InvalidArgument("make_morphism: expected " + std::to_string(k + l) + " generator images, got " +
                          std::to_string(generator_images.size()));
  for (std::size_t g = 0; g < generator_images.size(); ++g) {
    const auto& img = generator_images[g];
    require_same_algebra(img.algebra(), target, "make_morphism");
    Parity want = g < k ? Parity::even : Parity::odd;
    std::string name = g < k ? "x" + std::to_string(g + 1) : "t" + std::to_string(g - k + 1);
    if (!img.is_homogeneous(want)) throw ParityError("image of generator " + name + " is not " + to_string(want));
    if (sgn(img.body()) != 0)
      throw NotWellDefined("image of nilpotent generator " + name + " has nonzero body");
  }

  auto monomial_image = [&](const SuperMonomial& m) {
    Element<Rational> out = Element<Rational>::one(target);
    for (unsigned i = 0; i < k; ++i) out = out * pow(generator_images[i], m.even[i]);
    for (unsigned j : m.odd.members()) out = out * generator_images[k + j];
    return out;
  };

  // Relations: every monomial of degree s_b in block b's variables must vanish.
  for (std::size_t b = 0; b < layout.blocks().size(); ++b) {
    const auto& blk = layout.blocks()[b];
    std::vector<unsigned> evens, odds;
    for (unsigned i = 0; i < k; ++i)
      if (layout.block_of_even(i) == b) evens.push_back(i);
    for (unsigned j = 0; j < l; ++j)
      if (layout.block_of_odd(j) == b) odds.push_back(j);
    for (const auto& J : odd_subsets(static_cast<unsigned>(odds.size()), blk.truncation)) {
      if (J.size() > blk.truncation) continue;
      unsigned rest = blk.truncation - J.size();
      if (evens.empty() && rest != 0) continue;
      for (const auto& nu : multi_indices_up_to(static_cast<unsigned>(evens.size()), rest)) {
        if (total_degree(nu) != rest) continue;
        SuperMonomial m{EvenMultiIndex(k, 0), {}};
        for (std::size_t t = 0; t < evens.size(); ++t) m.even[evens[t]] = nu[t];
        for (unsigned jj : J.members()) m.odd = m.odd.with(odds[jj]);
        if (!monomial_image(m).is_zero())
          throw NotWellDefined("relation " + monomial_label(m) + " = 0 is not killed by the generator images");
      }
    }
  }

  std::vector<Element<Rational>> images;
  images.reserve(source->dim());
  for (std::size_t i = 0; i < source->dim(); ++i) images.push_back(monomial_image(source->monomial(i)));
  AlgebraMorphism rho(source, target, std::move(images));
  validate_morphism(rho);
  return rho;
}

inline AlgebraMorphism identity_morphism(const AlgebraPtr& a) {
  std::vector<Element<Rational>> images;
  for (std::size_t i = 0; i < a->dim(); ++i) images.push_back(Element<Rational>::basis(a, i));
  return AlgebraMorphism(a, a, std::move(images));
}

/// pr_A : A -> R, the body map.
inline AlgebraMorphism body_projection(const AlgebraPtr& a) {
  static const AlgebraPtr reals = make_algebra(AlgebraDescriptor::reals());
  std::vector<Element<Rational>> images;
  images.push_back(Element<Rational>::one(reals));
  for (std::size_t i = 1; i < a->dim(); ++i) images.emplace_back(reals);
  return AlgebraMorphism(a, reals, std::move(images));
}

/// rho o sigma.
inline AlgebraMorphism compose(const AlgebraMorphism& rho, const AlgebraMorphism& sigma) {
  require_same_algebra(sigma.target(), rho.source(), "compose");
  std::vector<Element<Rational>> images;
  images.reserve(sigma.source()->dim());
  for (const auto& img : sigma.images()) images.push_back(rho(img.rebase(rho.source())));
  return AlgebraMorphism(sigma.source(), rho.target(), std::move(images));
}

struct Refinement {
  AlgebraPtr algebra;
  AlgebraMorphism to_first;
  AlgebraMorphism to_second;
};

namespace detail {

inline std::optional<TruncatedPolyDesc> single_block(const AlgebraPtr& a) {
  if (!a->is_monomial() || a->tensor_factors() != nullptr) return std::nullopt;
  const auto& blocks = a->layout().blocks();
  if (blocks.size() != 1) return std::nullopt;
  return TruncatedPolyDesc{blocks[0].even, blocks[0].odd, blocks[0].truncation};
}

}  // namespace detail

/// Upper bound of two truncated-polynomial presentations together with the
/// generator projections onto each.
inline Refinement common_refinement(const AlgebraPtr& a1, const AlgebraPtr& a2,
                                    std::size_t max_dim = default_max_dim) {
  auto p1 = detail::single_block(a1);
  auto p2 = detail::single_block(a2);
  if (!p1 || !p2)
    throw UnsupportedPresentation("common_refinement needs truncated polynomial presentations, got " +
                                  a1->descriptor().to_string() + " and " + a2->descriptor().to_string());
  TruncatedPolyDesc d{std::max(p1->even, p2->even), std::max(p1->odd, p2->odd),
                      std::max(p1->truncation, p2->truncation)};
  AlgebraPtr big = make_algebra(AlgebraDescriptor(d), max_dim);
  auto projection = [&](const AlgebraPtr& small) {
    std::vector<Element<Rational>> gens;
    for (unsigned i = 0; i < d.even; ++i)
      gens.push_back(i < small->even_generators() ? Element<Rational>::even_generator(small, i)
                                                  : Element<Rational>(small));
    for (unsigned j = 0; j < d.odd; ++j)
      gens.push_back(j < small->odd_generators() ? Element<Rational>::odd_generator(small, j)
                                                 : Element<Rational>(small));
    return make_morphism(big, small, gens);
  };
  return Refinement{big, projection(a1), projection(a2)};
}

/// True if every target basis element is in the image span.
inline bool is_surjective(const AlgebraMorphism& rho) {
  detail::RowSpace span(rho.target()->dim());
  for (const auto& img : rho.images()) span.insert(img.coefficients());
  return span.rank() == rho.target()->dim();
}

}  // namespace superweil
