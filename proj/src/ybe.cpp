#include "braces/ybe.hpp"

#include <random>
#include <sstream>

#include "braces/parallel.hpp"

namespace braces {

  YbeSolution flip_solution(std::size_t n) {
    YbeSolution s{n, std::vector<elem_t>(n * n), std::vector<elem_t>(n * n)};
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        s.first[x * n + y]  = static_cast<elem_t>(y);
        s.second[x * n + y] = static_cast<elem_t>(x);
      }
    }
    return s;
  }

  YbeSolution brace_to_ybe(BraceTable const& b) {
    std::size_t const n = b.size();
    GroupTable const  g = b.mult_group();
    YbeSolution       s{n, std::vector<elem_t>(n * n), std::vector<elem_t>(n * n)};
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        auto   ex = static_cast<elem_t>(x), ey = static_cast<elem_t>(y);
        elem_t u  = b.lambda(ex, ey);
        s.first[x * n + y]  = u;
        s.second[x * n + y] = g.mul(g.inv(u), b.mul(ex, ey));
      }
    }
    return s;
  }

  bool is_involutive(YbeSolution const& s) {
    for (std::size_t x = 0; x < s.n; ++x) {
      for (std::size_t y = 0; y < s.n; ++y) {
        auto [u, v] = s(static_cast<elem_t>(x), static_cast<elem_t>(y));
        auto [a, b] = s(u, v);
        if (a != x || b != y) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_nondegenerate(YbeSolution const& s) {
    std::vector<char> seen(s.n);
    for (std::size_t x = 0; x < s.n; ++x) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t y = 0; y < s.n; ++y) {
        auto v = s.first[x * s.n + y];
        if (seen[v]) {
          return false;
        }
        seen[v] = 1;
      }
    }
    for (std::size_t y = 0; y < s.n; ++y) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t x = 0; x < s.n; ++x) {
        auto v = s.second[x * s.n + y];
        if (seen[v]) {
          return false;
        }
        seen[v] = 1;
      }
    }
    return true;
  }

  namespace {

    bool braid_holds(YbeSolution const& s, elem_t x, elem_t y, elem_t z) {
      // left: r12 r23 r12
      auto [a, b]   = s(x, y);
      auto [b1, c1] = s(b, z);
      auto [a2, b2] = s(a, b1);
      // right: r23 r12 r23
      auto [y1, z1] = s(y, z);
      auto [x2, y2] = s(x, y1);
      auto [y3, z2] = s(y2, z1);
      return a2 == x2 && b2 == y3 && c1 == z2;
    }

  }  // namespace

  std::string BraidReport::describe() const {
    std::ostringstream os;
    if (ok) {
      os << "braid relation holds on " << checked << " triples";
    } else {
      os << "braid relation fails at (" << (*witness)[0] << ", " << (*witness)[1] << ", "
         << (*witness)[2] << ")";
    }
    return os.str();
  }

  BraidReport verify_braid(YbeSolution const& s, std::size_t jobs) {
    std::size_t const                                  n = s.n;
    std::vector<std::optional<std::array<elem_t, 3>>> fail(n);
    parallel_for(n, jobs, [&](std::size_t x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          auto ex = static_cast<elem_t>(x), ey = static_cast<elem_t>(y),
               ez = static_cast<elem_t>(z);
          if (!braid_holds(s, ex, ey, ez)) {
            fail[x] = std::array<elem_t, 3>{ex, ey, ez};
            return;
          }
        }
      }
    });
    BraidReport r;
    r.checked = n * n * n;
    for (auto const& f : fail) {
      if (f) {
        r.ok      = false;
        r.witness = f;
        break;
      }
    }
    return r;
  }

  BraidReport verify_braid_sampled(YbeSolution const& s, std::size_t samples, std::uint64_t seed) {
    BraidReport                                r;
    std::mt19937_64                            rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, s.n - 1);
    for (std::size_t i = 0; i < samples; ++i) {
      auto x = static_cast<elem_t>(pick(rng)), y = static_cast<elem_t>(pick(rng)),
           z = static_cast<elem_t>(pick(rng));
      ++r.checked;
      if (!braid_holds(s, x, y, z)) {
        r.ok      = false;
        r.witness = std::array<elem_t, 3>{x, y, z};
        break;
      }
    }
    return r;
  }

  bool solutions_conjugate(YbeSolution const& s, YbeSolution const& t, Perm const& f) {
    if (s.n != t.n || f.size() != s.n) {
      return false;
    }
    for (std::size_t x = 0; x < s.n; ++x) {
      for (std::size_t y = 0; y < s.n; ++y) {
        auto [u, v] = s(static_cast<elem_t>(x), static_cast<elem_t>(y));
        auto [a, b] = t(f[x], f[y]);
        if (a != f[u] || b != f[v]) {
          return false;
        }
      }
    }
    return true;
  }

  nlohmann::ordered_json ybe_to_json(YbeSolution const& s) {
    nlohmann::ordered_json j;
    j["n"]      = s.n;
    j["first"]  = s.first;
    j["second"] = s.second;
    return j;
  }

}  // namespace braces
