#pragma once

// Brute-force enumeration of braces on a fixed additive group as regular
// subgroups of the holomorph Hol(G) = G ⋊ Aut(G).

#include <optional>
#include <string>
#include <vector>

#include "braces/brace.hpp"
#include "braces/classify.hpp"

namespace braces {

  inline constexpr std::size_t kHolomorphBound = 100'000;

  class Holomorph {
   public:
    // Throws ResourceLimit when |G|·|Aut G| exceeds kHolomorphBound.
    explicit Holomorph(FiniteAbelianGroup base);

    FiniteAbelianGroup const& base() const noexcept {
      return base_;
    }
    PermGroup const& aut() const noexcept {
      return aut_;
    }
    std::size_t order() const noexcept {
      return base_.order() * aut_.size();
    }

    struct Element {
      elem_t      g   = 0;
      std::size_t phi = 0;  // index into aut()
      bool        operator==(Element const&) const = default;
    };

    // (g,φ)·(g',φ') = (g + φ(g'), φ∘φ')
    Element mul(Element const& x, Element const& y) const;
    std::size_t compose(std::size_t a, std::size_t b) const;

   private:
    FiniteAbelianGroup         base_;
    PermGroup                  aut_;
    std::vector<std::uint32_t> table_;  // composition table when Aut is small
  };

  // {(a, λ_a)} for a verified brace; nullopt if some λ_a is not in Aut(G).
  std::optional<std::vector<Holomorph::Element>> regular_subgroup(BraceTable const& b,
                                                                  Holomorph const&  hol);

  // a·b = g_a + φ_a(g_b), for a regular subgroup listed by its G-components.
  BraceTable brace_from_regular_subgroup(Holomorph const&                      hol,
                                         std::vector<Holomorph::Element> const& subgroup);

  // One brace per Aut(G)-conjugacy class of regular subgroups, ordered by
  // canonical form. Each passes verify_brace.
  std::vector<BraceTable> braces_on(FiniteAbelianGroup const& g);

  struct MatchReport {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (oracle index, catalog index)
    std::vector<std::size_t> unmatched_oracle;
    std::vector<std::size_t> unmatched_catalog;
    bool                     perfect() const {
      return unmatched_oracle.empty() && unmatched_catalog.empty();
    }
    std::string describe() const;
  };

  // Maximum bipartite matching under brace_isomorphic.
  MatchReport oracle_match(std::vector<BraceTable> const& oracle,
                           std::vector<BraceTable> const& catalog);

  // Every abelian group of order n, one per isomorphism type.
  std::vector<FiniteAbelianGroup> abelian_groups_of_order(std::size_t n);

}  // namespace braces
