#pragma once

// Exact modular arithmetic on machine integers. Every modulus used by the
// library is far below 2^31, so products fit comfortably in 64 bits.

#include <cstdint>
#include <utility>
#include <vector>

namespace braces::arith {

  using i64 = std::int64_t;

  // Least non-negative residue of a modulo m (m > 0).
  constexpr i64 mod(i64 a, i64 m) noexcept {
    i64 r = a % m;
    return r < 0 ? r + m : r;
  }

  i64 gcd(i64 a, i64 b) noexcept;
  i64 pow_mod(i64 base, i64 exp, i64 m);
  // Throws std::invalid_argument when gcd(a, m) != 1.
  i64 inv_mod(i64 a, i64 m);
  // Multiplicative order of a modulo m; throws when a is not a unit.
  i64 mult_order(i64 a, i64 m);

  bool is_prime(i64 n) noexcept;
  std::vector<std::pair<i64, int>> factorize(i64 n);

  // Smallest integer x > 1 whose multiplicative order modulo m is exactly
  // `order`. Throws std::domain_error if there is none.
  i64 smallest_of_order(i64 order, i64 m);

  // Smallest quadratic nonresidue modulo an odd prime p.
  i64 smallest_nonresidue(i64 p);
  bool is_square_mod(i64 a, i64 p);

}  // namespace braces::arith
