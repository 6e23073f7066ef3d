#pragma once

// The four braces of size p² for an odd prime p.

#include <cstdint>
#include <string_view>
#include <vector>

#include "braces/brace.hpp"
#include "braces/gl2.hpp"

namespace braces {

  enum class SeedKind { CyclicTrivial, CyclicNontrivial, ElementaryTrivial, ElementaryNontrivial };

  std::string_view seed_kind_name(SeedKind kind);
  bool             seed_is_cyclic(SeedKind kind);
  bool             seed_is_trivial(SeedKind kind);

  struct SeedBrace {
    BraceTable        brace;
    SeedKind          kind;
    Perm              mult_to_add_iso;  // (B,·) -> (B,+)
    // Closed-form Aut(B,+,·) as matrices acting on coordinate columns; a
    // cyclic automorphism x -> kx is stored as [[k,0],[0,1]]. Sorted.
    std::vector<Mat2> automorphisms;
  };

  // The permutation of B induced by one of the closed-form automorphisms.
  Perm seed_automorphism_perm(std::int64_t p, SeedKind kind, Mat2 const& m);

  // Elements of Z/p × Z/p are encoded as x + p·y.
  // Cyclic nontrivial: x·y = x + y + p·x·y mod p².
  // Elementary nontrivial: (x1,y1)·(x2,y2) = (x1 + x2 + y1·y2, y1 + y2).
  SeedBrace make_seed(std::int64_t p, SeedKind kind);

  // In kind order. Every seed is checked at construction: verify_brace, the
  // isomorphism (B,·) -> (B,+), and closed-form automorphisms against the
  // brute-force brace_automorphisms. Throws std::invalid_argument unless p is
  // an odd prime with p² ≤ 1000.
  std::vector<SeedBrace> seed_braces(std::int64_t p);
  inline std::vector<SeedBrace> seed_q_braces(std::int64_t q) {
    return seed_braces(q);
  }

}  // namespace braces
