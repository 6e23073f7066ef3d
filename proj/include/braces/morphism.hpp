#pragma once

// Brace morphisms, automorphism groups and isomorphism search.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "braces/brace.hpp"

namespace braces {

  struct BraceMap {
    BraceTable const* source = nullptr;
    BraceTable const* target = nullptr;
    Perm              images;

    bool     is_additive() const;
    bool     is_multiplicative() const;
    bool     is_brace_morphism() const {
      return is_additive() && is_multiplicative();
    }
    BraceMap inverse() const;
  };

  // The Hall decomposition of a brace along a set of primes. Both parts are
  // sub-braces, and every brace isomorphism respects the decomposition.
  struct HallSplit {
    ProductLayout layout;
    BraceTable    left;
    BraceTable    right;
  };

  HallSplit hall_split(BraceTable const& b, std::span<std::uint32_t const> left_primes);

  // Cheap isomorphism invariants used to reject pairs early.
  struct BraceInvariants {
    std::vector<std::uint32_t>                         additive;
    std::vector<std::pair<std::uint32_t, std::size_t>> mult_orders;
    std::size_t                                        socle_size = 0;  // #{a : λ_a = id}

    bool operator==(BraceInvariants const&) const = default;
  };

  BraceInvariants brace_invariants(BraceTable const& b);

  // Calls visit(f) for every brace isomorphism a -> b until it returns false.
  // Splits into Hall parts whenever the order has more than one prime; on a
  // prime-power part it runs the generator-image search over additive
  // isomorphisms, checking multiplicativity on generators.
  void for_each_brace_isomorphism(BraceTable const& a, BraceTable const& b,
                                  std::function<bool(Perm const&)> const& visit,
                                  std::size_t candidate_limit = kDefaultCandidateLimit);

  std::vector<Perm> brace_isomorphisms(BraceTable const& a, BraceTable const& b,
                                       std::size_t candidate_limit = kDefaultCandidateLimit);

  // Identity first, then lexicographic.
  std::vector<Perm> brace_automorphisms(BraceTable const& b,
                                        std::size_t candidate_limit = kDefaultCandidateLimit);

  struct IsoOptions {
    std::size_t size_bound      = kVerifyBound;
    std::size_t candidate_limit = kDefaultCandidateLimit;
  };

  std::optional<BraceMap> brace_isomorphic(BraceTable const& a, BraceTable const& b,
                                           IsoOptions const& opts = {});

}  // namespace braces
