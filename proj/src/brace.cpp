#include "braces/brace.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include "braces/errors.hpp"

namespace braces {

  BraceTable::BraceTable(FiniteAbelianGroup additive, std::vector<elem_t> mul, Meta meta)
      : additive_(std::move(additive)), mul_(std::move(mul)), meta_(std::move(meta)) {
    std::size_t const n = additive_.order();
    if (mul_.size() != n * n) {
      throw std::invalid_argument("BraceTable: expected a " + std::to_string(n) + "x"
                                  + std::to_string(n) + " multiplication table");
    }
    for (elem_t x : mul_) {
      if (x >= n) {
        throw std::invalid_argument("BraceTable: table entry " + std::to_string(x)
                                    + " out of range");
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (mul_[a] != a) {
        throw IdentityViolation("BraceTable: 0·" + std::to_string(a) + " = "
                                    + std::to_string(mul_[a]) + ", expected "
                                    + std::to_string(a),
                                0, a);
      }
      if (mul_[a * n] != a) {
        throw IdentityViolation("BraceTable: " + std::to_string(a) + "·0 = "
                                    + std::to_string(mul_[a * n]) + ", expected "
                                    + std::to_string(a),
                                a, 0);
      }
    }
  }

  GroupTable BraceTable::mult_group() const {
    return GroupTable(size(), mul_);
  }

  BraceTable make_trivial_brace(FiniteAbelianGroup const& g) {
    return brace_from_law(g, [&g](elem_t a, elem_t b) { return g.add(a, b); },
                          Meta{{"family", "trivial"}});
  }

  std::vector<elem_t> lambda_table(BraceTable const& b) {
    std::size_t const   n = b.size();
    std::vector<elem_t> out(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      elem_t const na = b.additive().neg(static_cast<elem_t>(a));
      for (std::size_t x = 0; x < n; ++x) {
        out[a * n + x] = b.additive().add(na, b.mul(static_cast<elem_t>(a), static_cast<elem_t>(x)));
      }
    }
    return out;
  }

  Perm lambda_map(BraceTable const& b, elem_t a) {
    if (a >= b.size()) {
      throw std::out_of_range("lambda_map: element out of range");
    }
    std::vector<elem_t> img(b.size());
    for (std::size_t x = 0; x < b.size(); ++x) {
      img[x] = b.lambda(a, static_cast<elem_t>(x));
    }
    return Perm(std::move(img));
  }

  std::string VerifyReport::describe() const {
    std::ostringstream os;
    if (is_brace) {
      os << "brace (" << checked << " checks)";
    } else {
      os << "not a brace: " << law << " fails";
      if (first_violation) {
        auto const& v = *first_violation;
        os << " at (" << v[0] << ", " << v[1] << ", " << v[2] << ")";
      }
    }
    return os.str();
  }

  namespace {

    VerifyReport fail(std::string law, elem_t a, elem_t b, elem_t c, std::size_t checked) {
      VerifyReport r;
      r.is_brace        = false;
      r.law             = std::move(law);
      r.first_violation = std::array<elem_t, 3>{a, b, c};
      r.checked         = checked;
      return r;
    }

  }  // namespace

  VerifyReport check_lambda_identities(BraceTable const& b) {
    std::size_t const         n   = b.size();
    FiniteAbelianGroup const& add = b.additive();
    auto const                lam = lambda_table(b);
    std::size_t               checked = 0;

    for (std::size_t a = 0; a < n; ++a) {
      elem_t const* la = lam.data() + a * n;
      for (std::size_t x = 0; x < n; ++x) {
        auto const ex = static_cast<elem_t>(x);
        for (std::size_t y = 0; y < n; ++y) {
          auto const ey = static_cast<elem_t>(y);
          if (la[add.add(ex, ey)] != add.add(la[x], la[y])) {
            return fail("brace law a·(b+c)+a = a·b+a·c", static_cast<elem_t>(a), ex, ey,
                        checked);
          }
        }
        checked += n;
      }
    }

    std::vector<std::size_t> seen(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t x = 0; x < n; ++x) {
        elem_t y = lam[a * n + x];
        if (seen[y] == a) {
          // find the earlier preimage for the report
          std::size_t x0 = 0;
          while (lam[a * n + x0] != y) {
            ++x0;
          }
          return fail("lambda bijectivity", static_cast<elem_t>(a), static_cast<elem_t>(x0),
                      static_cast<elem_t>(x), checked);
        }
        seen[y] = a;
      }
      checked += n;
    }

    for (std::size_t a = 0; a < n; ++a) {
      elem_t const* la = lam.data() + a * n;
      for (std::size_t x = 0; x < n; ++x) {
        elem_t const  ax  = b.mul(static_cast<elem_t>(a), static_cast<elem_t>(x));
        elem_t const* lax = lam.data() + static_cast<std::size_t>(ax) * n;
        elem_t const* lx  = lam.data() + x * n;
        for (std::size_t y = 0; y < n; ++y) {
          if (lax[y] != la[lx[y]]) {
            return fail("associativity (lambda_{a·b} = lambda_a lambda_b)",
                        static_cast<elem_t>(a), static_cast<elem_t>(x),
                        static_cast<elem_t>(y), checked);
          }
        }
        checked += n;
      }
    }
    VerifyReport ok;
    ok.checked = checked;
    return ok;
  }

  VerifyReport verify_brace(BraceTable const& b, VerifyOptions const& opts) {
    std::size_t const n = b.size();
    if (n > kVerifyBound) {
      throw ResourceLimit("verify_brace: size " + std::to_string(n)
                          + " exceeds the exhaustive bound " + std::to_string(kVerifyBound));
    }
    VerifyReport report = check_lambda_identities(b);
    if (!report.is_brace || !opts.paranoid) {
      return report;
    }
    FiniteAbelianGroup const& add = b.additive();
    for (std::size_t a = 0; a < n; ++a) {
      auto const ea = static_cast<elem_t>(a);
      for (std::size_t x = 0; x < n; ++x) {
        auto const ex = static_cast<elem_t>(x);
        elem_t     ax = b.mul(ea, ex);
        for (std::size_t y = 0; y < n; ++y) {
          auto const ey = static_cast<elem_t>(y);
          if (b.mul(ax, ey) != b.mul(ea, b.mul(ex, ey))) {
            return fail("associativity", ea, ex, ey, report.checked);
          }
          if (add.add(b.mul(ea, add.add(ex, ey)), ea) != add.add(ax, b.mul(ea, ey))) {
            return fail("brace law a·(b+c)+a = a·b+a·c", ea, ex, ey, report.checked);
          }
        }
        report.checked += 2 * n;
      }
    }
    return report;
  }

  VerifyReport verify_brace_sampled(BraceTable const& b, std::size_t samples,
                                    std::uint64_t seed) {
    std::mt19937_64                            rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, b.size() - 1);
    FiniteAbelianGroup const&                  add = b.additive();
    VerifyReport                               report;
    for (std::size_t s = 0; s < samples; ++s) {
      auto a = static_cast<elem_t>(pick(rng));
      auto x = static_cast<elem_t>(pick(rng));
      auto y = static_cast<elem_t>(pick(rng));
      if (add.add(b.mul(a, add.add(x, y)), a) != add.add(b.mul(a, x), b.mul(a, y))) {
        return fail("brace law a·(b+c)+a = a·b+a·c", a, x, y, report.checked);
      }
      if (b.mul(b.mul(a, x), y) != b.mul(a, b.mul(x, y))) {
        return fail("associativity", a, x, y, report.checked);
      }
      report.checked += 2;
    }
    return report;
  }

}  // namespace braces
