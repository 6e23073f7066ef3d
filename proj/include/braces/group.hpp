#pragma once

// Finite groups given by a Cayley table on [0, n) with identity 0.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "braces/abelian_group.hpp"

namespace braces {

  class GroupTable {
   public:
    GroupTable() = default;
    // Row = left factor. Throws std::invalid_argument if 0 is not a two-sided
    // identity or some element lacks an inverse. Associativity is not checked.
    GroupTable(std::size_t n, std::vector<elem_t> mul);

    std::size_t size() const noexcept {
      return n_;
    }
    elem_t mul(elem_t a, elem_t b) const noexcept {
      return mul_[static_cast<std::size_t>(a) * n_ + b];
    }
    elem_t inv(elem_t a) const noexcept {
      return inv_[a];
    }
    std::vector<elem_t> const& table() const noexcept {
      return mul_;
    }

   private:
    std::size_t         n_ = 0;
    std::vector<elem_t> mul_;
    std::vector<elem_t> inv_;
  };

  // Exhaustive (ab)c = a(bc); returns the first failing triple.
  std::optional<std::array<elem_t, 3>> find_nonassociative_triple(GroupTable const& g);

  std::vector<std::uint32_t> element_orders(GroupTable const& g);

  // Sorted elements of the subgroup generated by `gens`.
  std::vector<elem_t> subgroup_closure(GroupTable const& g, std::span<elem_t const> gens);

  // Greedy generating set: repeatedly adds the element of largest order not yet
  // in the generated subgroup (smallest index on ties).
  std::vector<elem_t> generating_set(GroupTable const& g);

  bool is_abelian(GroupTable const& g);

  struct GroupFingerprint {
    std::vector<std::pair<std::uint32_t, std::size_t>> order_counts;  // (order, count)
    std::size_t                center_size  = 0;
    std::size_t                derived_size = 0;
    bool                       abelian      = false;
    std::vector<std::uint32_t> abelian_invariants;  // empty unless abelian

    auto operator<=>(GroupFingerprint const&) const = default;
    bool operator==(GroupFingerprint const&) const  = default;

    std::string describe() const;
  };

  GroupFingerprint group_fingerprint(GroupTable const& g);

  inline constexpr std::size_t kGroupIsoNodeLimit = 20'000'000;

  // Backtracking over images of a greedy generating set, pruned by element
  // order and centralizer size, each partial assignment checked on the
  // subgroup it generates. Returns an isomorphism g -> h as a permutation.
  // Throws ResourceLimit after `node_limit` partial assignments.
  std::optional<Perm> group_isomorphism(GroupTable const& g, GroupTable const& h,
                                        std::size_t node_limit = kGroupIsoNodeLimit);

}  // namespace braces
