#include "braces/arith.hpp"

#include <stdexcept>
#include <string>

namespace braces::arith {

  i64 gcd(i64 a, i64 b) noexcept {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
      i64 t = a % b;
      a     = b;
      b     = t;
    }
    return a;
  }

  i64 pow_mod(i64 base, i64 exp, i64 m) {
    if (exp < 0) {
      return pow_mod(inv_mod(base, m), -exp, m);
    }
    i64 result = 1 % m;
    base       = mod(base, m);
    while (exp > 0) {
      if (exp & 1) {
        result = result * base % m;
      }
      base = base * base % m;
      exp >>= 1;
    }
    return result;
  }

  i64 inv_mod(i64 a, i64 m) {
    i64 old_r = mod(a, m), r = m;
    i64 old_s = 1, s = 0;
    while (r != 0) {
      i64 quot = old_r / r;
      i64 tmp  = old_r - quot * r;
      old_r    = r;
      r        = tmp;
      tmp      = old_s - quot * s;
      old_s    = s;
      s        = tmp;
    }
    if (old_r != 1) {
      throw std::invalid_argument(std::to_string(a) + " is not invertible modulo "
                                  + std::to_string(m));
    }
    return mod(old_s, m);
  }

  i64 mult_order(i64 a, i64 m) {
    a = mod(a, m);
    if (gcd(a, m) != 1) {
      throw std::invalid_argument(std::to_string(a) + " is not a unit modulo "
                                  + std::to_string(m));
    }
    i64 x = a, k = 1;
    while (x != 1 % m) {
      x = x * a % m;
      ++k;
    }
    return k;
  }

  bool is_prime(i64 n) noexcept {
    if (n < 2) {
      return false;
    }
    for (i64 d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        return false;
      }
    }
    return true;
  }

  std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n < 1) {
      throw std::invalid_argument("factorize: n must be positive");
    }
    std::vector<std::pair<i64, int>> out;
    for (i64 d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        int e = 0;
        while (n % d == 0) {
          n /= d;
          ++e;
        }
        out.emplace_back(d, e);
      }
    }
    if (n > 1) {
      out.emplace_back(n, 1);
    }
    return out;
  }

  i64 smallest_of_order(i64 order, i64 m) {
    for (i64 x = 2; x < m; ++x) {
      if (gcd(x, m) == 1 && mult_order(x, m) == order) {
        return x;
      }
    }
    throw std::domain_error("no element of order " + std::to_string(order)
                            + " modulo " + std::to_string(m));
  }

  bool is_square_mod(i64 a, i64 p) {
    a = mod(a, p);
    if (a == 0) {
      return true;
    }
    return pow_mod(a, (p - 1) / 2, p) == 1;
  }

  i64 smallest_nonresidue(i64 p) {
    if (p < 3 || !is_prime(p)) {
      throw std::invalid_argument("smallest_nonresidue: p must be an odd prime");
    }
    for (i64 a = 2; a < p; ++a) {
      if (!is_square_mod(a, p)) {
        return a;
      }
    }
    throw std::logic_error("odd prime without a nonresidue");
  }

}  // namespace braces::arith
