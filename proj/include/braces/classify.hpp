#pragma once

// Semidirect products of braces and their classification up to the
// equivalence σ ~ τ iff τ(h₂(b)) = h₁ σ(b) h₁⁻¹ for brace automorphisms h₁, h₂.

#include <array>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "braces/brace.hpp"

namespace braces {

  // A finite group of permutations, closed under composition, with index lookup.
  class PermGroup {
   public:
    PermGroup() = default;
    explicit PermGroup(std::vector<Perm> elements);  // must be a group

    std::size_t size() const noexcept {
      return elems_.size();
    }
    Perm const& operator[](std::size_t i) const noexcept {
      return elems_[i];
    }
    std::vector<Perm> const& elements() const noexcept {
      return elems_;
    }
    std::size_t index(Perm const& f) const;  // throws std::out_of_range
    std::size_t identity() const noexcept {
      return identity_;
    }
    std::size_t compose(std::size_t i, std::size_t j) const;  // elems[i] ∘ elems[j]
    std::size_t inverse(std::size_t i) const noexcept {
      return inv_[i];
    }
    std::uint32_t order(std::size_t i) const noexcept {
      return order_[i];
    }
    std::vector<std::size_t> const& generators() const noexcept {
      return gens_;
    }

   private:
    std::vector<Perm>                               elems_;
    std::unordered_map<Perm, std::size_t, PermHash> index_;
    std::vector<std::size_t>                        inv_;
    std::vector<std::uint32_t>                      order_;
    std::vector<std::size_t>                        gens_;
    std::size_t                                     identity_ = 0;
  };

  using PermGroupPtr = std::shared_ptr<PermGroup const>;

  struct TauMorphism {
    std::vector<std::size_t> images;  // B₂ element -> index into *target_aut
    PermGroupPtr             target_aut;

    Perm const& at(elem_t b) const {
      return (*target_aut)[images[b]];
    }
  };

  // τ(0) = id and τ(b·b') = τ(b) ∘ τ(b') for all b, b'.
  bool validate_tau(BraceTable const& b2, TauMorphism const& tau);

  // All group morphisms (B₂,·) -> autB1, in lexicographic order of the
  // images of a greedy generating set.
  std::vector<TauMorphism> enumerate_taus(BraceTable const& b2, PermGroupPtr const& autB1);

  struct TauClass {
    TauMorphism representative;  // lexicographically least image vector in its orbit
    std::size_t orbit_size = 0;
  };

  // Orbits of Aut(B₁) × Aut(B₂) on `taus`, sorted by representative.
  std::vector<TauClass> tau_classes(std::vector<TauMorphism> const& taus,
                                    PermGroup const& autB1_brace, PermGroup const& autB2_brace);

  // Additive group B₁ × B₂, (a,b)·(a',b') = (a·τ(b)(a'), b·b').
  // Throws PreconditionError if tau is not a morphism (B₂,·) -> Aut(B₁).
  BraceTable semidirect_brace(BraceTable const& b1, BraceTable const& b2, TauMorphism const& tau);

  // a·b = a + b for every a in B₁ × {0}, b in {0} × B₂; returns a failing pair.
  std::optional<std::array<elem_t, 2>> check_coprime_product_identity(BraceTable const&    b,
                                                                     ProductLayout const& layout);

  struct ClassifyOptions {
    // Caller asserts that every solvable group of order mn has a normal
    // subgroup of order m.
    bool        normal_subgroup_hypothesis = false;
    bool        certify                    = true;  // pairwise brace_isomorphic check
    std::size_t jobs                       = 1;
  };

  struct ClassifiedBrace {
    std::size_t m_index = 0, n_index = 0;  // positions in the input catalogs
    TauClass                             tau;
    BraceTable                           brace;
    std::shared_ptr<ProductLayout const> layout;  // B₁ × B₂ inside brace.additive()
  };

  // Every brace of size mn, given complete catalogs of braces of sizes m and n.
  // Throws PreconditionError if gcd(m, n) ≠ 1 or the hypothesis flag is unset.
  // Certification failure throws std::logic_error.
  std::vector<ClassifiedBrace> classify_mn(std::vector<BraceTable> const& catalog_m,
                                           std::vector<BraceTable> const& catalog_n,
                                           ClassifyOptions const&         opts = {});

}  // namespace braces
