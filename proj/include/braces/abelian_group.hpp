#pragma once

// Finite abelian groups in invariant-factor form with a mixed-radix element
// encoding, permutations of their elements, and additive homomorphism
// enumeration.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace braces {

  // Elements of every structure in this library are indices into [0, n).
  using elem_t = std::uint16_t;

  inline constexpr std::size_t kMaxOrder = 65535;

  class Perm {
   public:
    Perm() = default;
    explicit Perm(std::vector<elem_t> images) : images_(std::move(images)) {}

    static Perm identity(std::size_t n);

    std::size_t size() const noexcept {
      return images_.size();
    }
    elem_t operator[](std::size_t i) const noexcept {
      return images_[i];
    }
    std::vector<elem_t> const& images() const noexcept {
      return images_;
    }

    bool is_bijection() const;
    bool is_identity() const;
    Perm inverse() const;

    auto operator<=>(Perm const&) const = default;
    bool operator==(Perm const&) const  = default;

   private:
    std::vector<elem_t> images_;
  };

  // (f ∘ g)(x) = f(g(x)).
  Perm compose(Perm const& f, Perm const& g);

  struct PermHash {
    std::size_t operator()(Perm const& p) const noexcept;
  };

  // One cyclic p-primary summand of the group, living inside invariant
  // coordinate `coordinate`.
  struct PrimaryFactor {
    std::uint32_t prime;
    std::uint32_t modulus;  // prime power
    std::size_t   coordinate;
  };

  class FiniteAbelianGroup {
   public:
    // The trivial group.
    FiniteAbelianGroup();
    // Any list of cyclic orders (each >= 2); normalized to invariant factors
    // d_1 | d_2 | ... | d_k.
    explicit FiniteAbelianGroup(std::vector<std::uint64_t> const& factors);

    std::size_t order() const noexcept {
      return impl_->order;
    }
    std::size_t rank() const noexcept {
      return impl_->factors.size();
    }
    std::vector<std::uint32_t> const& invariant_factors() const noexcept {
      return impl_->factors;
    }
    std::vector<PrimaryFactor> const& primary_factors() const noexcept {
      return impl_->primary;
    }
    std::uint32_t exponent() const noexcept;

    // Mixed radix, least-significant coordinate first.
    std::uint32_t coord(elem_t e, std::size_t i) const noexcept {
      return impl_->coords[static_cast<std::size_t>(e) * rank() + i];
    }
    std::vector<std::uint32_t> decode(elem_t e) const;
    elem_t encode(std::span<std::uint32_t const> coords) const;

    elem_t add(elem_t a, elem_t b) const noexcept {
      if (!impl_->add_table.empty()) {
        return impl_->add_table[static_cast<std::size_t>(a) * order() + b];
      }
      return add_slow(a, b);
    }
    elem_t neg(elem_t a) const noexcept {
      return impl_->neg[a];
    }
    elem_t sub(elem_t a, elem_t b) const noexcept {
      return add(a, neg(b));
    }
    elem_t scale(std::int64_t k, elem_t a) const;
    std::uint32_t element_order(elem_t a) const;

    // The canonical generator of invariant coordinate i.
    elem_t generator(std::size_t i) const;

    std::vector<std::uint32_t> to_primary(elem_t e) const;
    elem_t from_primary(std::span<std::uint32_t const> values) const;

    // Row of the addition table when it is materialized (order <= 4096),
    // empty span otherwise.
    std::span<elem_t const> add_row(elem_t a) const noexcept;

    std::string describe() const;

    bool operator==(FiniteAbelianGroup const& other) const noexcept {
      return impl_->factors == other.impl_->factors;
    }

   private:
    struct Impl {
      std::vector<std::uint32_t> factors;
      std::vector<std::uint64_t> strides;
      std::size_t                order = 1;
      std::vector<std::uint32_t> coords;
      std::vector<elem_t>        neg;
      std::vector<elem_t>        add_table;
      std::vector<PrimaryFactor> primary;
      std::vector<std::uint32_t> crt_basis;  // one per primary factor
    };

    elem_t add_slow(elem_t a, elem_t b) const noexcept;

    std::shared_ptr<Impl const> impl_;
  };

  inline FiniteAbelianGroup make_group(std::vector<std::uint64_t> const& factors) {
    return FiniteAbelianGroup(factors);
  }

  // The direct product left × right identified with a normalized group
  // through primary components. When the orders are coprime this is the
  // unique Hall decomposition.
  class ProductLayout {
   public:
    ProductLayout(FiniteAbelianGroup left, FiniteAbelianGroup right);

    // Splits `whole` into the part supported on `left_primes` and the rest.
    static ProductLayout split(FiniteAbelianGroup const&         whole,
                               std::span<std::uint32_t const> left_primes);

    FiniteAbelianGroup const& whole() const noexcept {
      return whole_;
    }
    FiniteAbelianGroup const& left() const noexcept {
      return left_;
    }
    FiniteAbelianGroup const& right() const noexcept {
      return right_;
    }

    elem_t combine(elem_t a, elem_t b) const noexcept {
      return combine_[static_cast<std::size_t>(a) * right_.order() + b];
    }
    elem_t left_part(elem_t e) const noexcept {
      return left_part_[e];
    }
    elem_t right_part(elem_t e) const noexcept {
      return right_part_[e];
    }

   private:
    FiniteAbelianGroup  whole_, left_, right_;
    std::vector<elem_t> combine_, left_part_, right_part_;
  };

  // Evaluates the homomorphism A -> B sending the i-th canonical generator
  // of A to gen_images[i].
  elem_t eval_hom(FiniteAbelianGroup const&  a,
                  FiniteAbelianGroup const&  b,
                  std::span<elem_t const> gen_images,
                  elem_t                     e);

  // Full image table of that homomorphism if it is a bijection.
  std::optional<Perm> hom_to_perm(FiniteAbelianGroup const&  a,
                                  FiniteAbelianGroup const&  b,
                                  std::span<elem_t const> gen_images);

  inline constexpr std::size_t kDefaultCandidateLimit = 50'000'000;

  // Visits every additive isomorphism A -> B, as images of A's canonical
  // generators, in lexicographic order of those images. `filter` runs before
  // the O(|A|) bijectivity test; `visit` returns false to stop early.
  // Throws ResourceLimit if the candidate space exceeds `limit`.
  void for_each_additive_isomorphism(
      FiniteAbelianGroup const&                               a,
      FiniteAbelianGroup const&                               b,
      std::function<bool(std::span<elem_t const>)> const& filter,
      std::function<bool(std::span<elem_t const>)> const& visit,
      std::size_t limit = kDefaultCandidateLimit);

  inline constexpr std::size_t kAutomorphismOrderBound = 10'000;

  // Aut(G, +) as permutations; identity first, then lexicographic.
  std::vector<Perm> abelian_automorphisms(FiniteAbelianGroup const& g);

}  // namespace braces
