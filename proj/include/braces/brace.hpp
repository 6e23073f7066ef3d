#pragma once

// Finite left braces: an abelian group (B,+) with a second group law · such
// that a·(b+c) + a = a·b + a·c.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "braces/abelian_group.hpp"
#include "braces/group.hpp"
#include "json.hpp"

namespace braces {

  using Meta = nlohmann::ordered_json;

  class BraceTable {
   public:
    // Throws IdentityViolation unless row 0 and column 0 of `mul` are the
    // identity, std::invalid_argument on shape or range errors.
    BraceTable(FiniteAbelianGroup additive, std::vector<elem_t> mul,
               Meta meta = Meta::object());

    std::size_t size() const noexcept {
      return additive_.order();
    }
    FiniteAbelianGroup const& additive() const noexcept {
      return additive_;
    }
    elem_t mul(elem_t a, elem_t b) const noexcept {
      return mul_[static_cast<std::size_t>(a) * size() + b];
    }
    std::span<elem_t const> row(elem_t a) const noexcept {
      return std::span<elem_t const>(mul_).subspan(static_cast<std::size_t>(a) * size(),
                                                   size());
    }
    std::vector<elem_t> const& mul_table() const noexcept {
      return mul_;
    }
    Meta const& meta() const noexcept {
      return meta_;
    }
    void set_meta(Meta meta) {
      meta_ = std::move(meta);
    }

    // -a + a·b
    elem_t lambda(elem_t a, elem_t b) const noexcept {
      return additive_.add(additive_.neg(a), mul(a, b));
    }

    // (B,·); throws if some element has no inverse.
    GroupTable mult_group() const;

   private:
    FiniteAbelianGroup  additive_;
    std::vector<elem_t> mul_;
    Meta                meta_;
  };

  BraceTable make_trivial_brace(FiniteAbelianGroup const& g);

  // Builds the table of law(a, b) for all a, b.
  template <class Law>
  BraceTable brace_from_law(FiniteAbelianGroup const& g, Law&& law, Meta meta = Meta::object()) {
    std::size_t const   n = g.order();
    std::vector<elem_t> mul(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        mul[a * n + b] = law(static_cast<elem_t>(a), static_cast<elem_t>(b));
      }
    }
    return BraceTable(g, std::move(mul), std::move(meta));
  }

  // Row a holds λ_a.
  std::vector<elem_t> lambda_table(BraceTable const& b);
  Perm lambda_map(BraceTable const& b, elem_t a);

  inline constexpr std::size_t kVerifyBound = 1000;

  struct VerifyOptions {
    bool paranoid = false;  // also run the raw O(n³) associativity and brace-law loops
  };

  struct VerifyReport {
    bool                                 is_brace = true;
    std::optional<std::array<elem_t, 3>> first_violation;
    std::string                          law;  // which law failed
    std::size_t                          checked = 0;

    std::string describe() const;
  };

  // λ_a(b+c) = λ_a(b) + λ_a(c) for all a, b, c (the brace law), λ_a
  // bijective, and λ_{a·b} = λ_a ∘ λ_b (associativity given the above).
  VerifyReport check_lambda_identities(BraceTable const& b);

  // Exhaustive; throws ResourceLimit above kVerifyBound.
  VerifyReport verify_brace(BraceTable const& b, VerifyOptions const& opts = {});

  inline constexpr std::uint64_t kDefaultSampleSeed = 0x5eed5eedULL;

  // Random triples (a, b, c) checked against the brace law and associativity.
  VerifyReport verify_brace_sampled(BraceTable const& b, std::size_t samples,
                                    std::uint64_t seed = kDefaultSampleSeed);

}  // namespace braces
