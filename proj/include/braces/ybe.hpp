#pragma once

// Involutive non-degenerate set-theoretic solutions of the Yang–Baxter
// equation attached to braces.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "braces/brace.hpp"

namespace braces {

  struct YbeSolution {
    std::size_t         n = 0;
    std::vector<elem_t> first, second;  // r(x,y) at index x·n + y

    std::pair<elem_t, elem_t> operator()(elem_t x, elem_t y) const noexcept {
      std::size_t i = static_cast<std::size_t>(x) * n + y;
      return {first[i], second[i]};
    }
  };

  YbeSolution flip_solution(std::size_t n);

  // r(x,y) = (λ_x(y), λ_x(y)⁻¹·x·y), inverse taken in (B,·).
  YbeSolution brace_to_ybe(BraceTable const& b);

  bool is_involutive(YbeSolution const& s);
  // y ↦ first(x,y) bijective for each x, x ↦ second(x,y) bijective for each y.
  bool is_nondegenerate(YbeSolution const& s);

  struct BraidReport {
    bool                                 ok      = true;
    std::optional<std::array<elem_t, 3>> witness;  // smallest failing triple
    std::size_t                          checked = 0;
    std::string                          describe() const;
  };

  // (r×id)(id×r)(r×id) = (id×r)(r×id)(id×r) over all n³ triples.
  BraidReport verify_braid(YbeSolution const& s, std::size_t jobs = 1);
  BraidReport verify_braid_sampled(YbeSolution const& s, std::size_t samples,
                                   std::uint64_t seed = kDefaultSampleSeed);

  // r'(f x, f y) = (f×f)(r(x,y)) for all x, y.
  bool solutions_conjugate(YbeSolution const& s, YbeSolution const& t, Perm const& f);

  nlohmann::ordered_json ybe_to_json(YbeSolution const& s);

}  // namespace braces
