#include "braces/seed.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "braces/arith.hpp"
#include "braces/morphism.hpp"

namespace braces {

  using arith::i64;
  using arith::mod;

  std::string_view seed_kind_name(SeedKind kind) {
    switch (kind) {
      case SeedKind::CyclicTrivial: return "cyclic-trivial";
      case SeedKind::CyclicNontrivial: return "cyclic-nontrivial";
      case SeedKind::ElementaryTrivial: return "elementary-trivial";
      case SeedKind::ElementaryNontrivial: return "elementary-nontrivial";
    }
    return "?";
  }

  bool seed_is_cyclic(SeedKind kind) {
    return kind == SeedKind::CyclicTrivial || kind == SeedKind::CyclicNontrivial;
  }

  bool seed_is_trivial(SeedKind kind) {
    return kind == SeedKind::CyclicTrivial || kind == SeedKind::ElementaryTrivial;
  }

  namespace {

    void require_odd_prime(i64 p) {
      if (!arith::is_prime(p) || p == 2) {
        throw std::invalid_argument("seed braces need an odd prime, got " + std::to_string(p));
      }
      if (p * p > static_cast<i64>(kVerifyBound)) {
        throw std::invalid_argument("seed braces need p² ≤ " + std::to_string(kVerifyBound));
      }
    }

    std::vector<Mat2> closed_form_automorphisms(i64 p, SeedKind kind) {
      std::vector<Mat2> out;
      i64 const         pp = p * p;
      switch (kind) {
        case SeedKind::CyclicTrivial:
        case SeedKind::CyclicNontrivial:
          for (i64 k = 1; k < pp; ++k) {
            bool unit = k % p != 0;
            if (unit && (kind == SeedKind::CyclicTrivial || k % p == 1)) {
              out.push_back(Mat2{k, 0, 0, 1});
            }
          }
          break;
        case SeedKind::ElementaryTrivial:
          for (i64 a = 0; a < p; ++a) {
            for (i64 b = 0; b < p; ++b) {
              for (i64 c = 0; c < p; ++c) {
                for (i64 d = 0; d < p; ++d) {
                  if (mod(a * d - b * c, p) != 0) {
                    out.push_back(Mat2{a, b, c, d});
                  }
                }
              }
            }
          }
          break;
        case SeedKind::ElementaryNontrivial:
          for (i64 d = 1; d < p; ++d) {
            for (i64 b = 0; b < p; ++b) {
              out.push_back(Mat2{d * d % p, b, 0, d});
            }
          }
          break;
      }
      std::sort(out.begin(), out.end());
      return out;
    }

  }  // namespace

  Perm seed_automorphism_perm(i64 p, SeedKind kind, Mat2 const& m) {
    if (seed_is_cyclic(kind)) {
      i64 const           pp = p * p;
      std::vector<elem_t> img(static_cast<std::size_t>(pp));
      for (i64 x = 0; x < pp; ++x) {
        img[static_cast<std::size_t>(x)] = static_cast<elem_t>(mod(m.a * x, pp));
      }
      return Perm(std::move(img));
    }
    std::vector<elem_t> img(static_cast<std::size_t>(p * p));
    for (i64 y = 0; y < p; ++y) {
      for (i64 x = 0; x < p; ++x) {
        auto v = mat_apply(m, x, y, p);
        img[static_cast<std::size_t>(x + p * y)] = static_cast<elem_t>(v[0] + p * v[1]);
      }
    }
    return Perm(std::move(img));
  }

  SeedBrace make_seed(i64 p, SeedKind kind) {
    require_odd_prime(p);
    i64 const  pp   = p * p;
    i64 const  inv2 = arith::inv_mod(2, pp);
    Meta const meta{{"family", "seed"}, {"kind", seed_kind_name(kind)}, {"p", p}};

    FiniteAbelianGroup  g = seed_is_cyclic(kind) ? make_group({static_cast<std::uint64_t>(pp)})
                                                 : make_group({static_cast<std::uint64_t>(p),
                                                               static_cast<std::uint64_t>(p)});
    std::vector<elem_t> iso(static_cast<std::size_t>(pp));
    auto                brace = [&]() {
      switch (kind) {
        case SeedKind::CyclicTrivial:
        case SeedKind::ElementaryTrivial:
          for (i64 x = 0; x < pp; ++x) {
            iso[static_cast<std::size_t>(x)] = static_cast<elem_t>(x);
          }
          return brace_from_law(g, [&g](elem_t a, elem_t b) { return g.add(a, b); }, meta);
        case SeedKind::CyclicNontrivial:
          for (i64 n = 0; n < pp; ++n) {
            iso[static_cast<std::size_t>(n)]
                = static_cast<elem_t>(mod(n - p * mod(n * (n - 1), pp) * inv2, pp));
          }
          return brace_from_law(
              g,
              [&](elem_t a, elem_t b) {
                return static_cast<elem_t>(mod(i64{a} + b + p * a * b, pp));
              },
              meta);
        case SeedKind::ElementaryNontrivial:
          for (i64 y = 0; y < p; ++y) {
            for (i64 x = 0; x < p; ++x) {
              i64 nx = mod(x - mod(y * (y - 1), p) * inv2, p);
              iso[static_cast<std::size_t>(x + p * y)] = static_cast<elem_t>(nx + p * y);
            }
          }
          return brace_from_law(
              g,
              [&](elem_t a, elem_t b) {
                i64 x1 = a % p, y1 = a / p, x2 = b % p, y2 = b / p;
                return static_cast<elem_t>(mod(x1 + x2 + y1 * y2, p) + p * mod(y1 + y2, p));
              },
              meta);
      }
      throw std::logic_error("unknown seed kind");
    }();
    return SeedBrace{std::move(brace), kind, Perm(std::move(iso)),
                     closed_form_automorphisms(p, kind)};
  }

  std::vector<SeedBrace> seed_braces(i64 p) {
    require_odd_prime(p);
    std::vector<SeedBrace> out;
    for (auto kind : {SeedKind::CyclicTrivial, SeedKind::CyclicNontrivial,
                      SeedKind::ElementaryTrivial, SeedKind::ElementaryNontrivial}) {
      SeedBrace s    = make_seed(p, kind);
      auto      name = std::string(seed_kind_name(kind));
      if (!verify_brace(s.brace).is_brace) {
        throw std::logic_error("seed " + name + " is not a brace");
      }
      auto const& add = s.brace.additive();
      for (std::size_t a = 0; a < s.brace.size(); ++a) {
        for (std::size_t b = 0; b < s.brace.size(); ++b) {
          auto ea = static_cast<elem_t>(a), eb = static_cast<elem_t>(b);
          if (s.mult_to_add_iso[s.brace.mul(ea, eb)]
              != add.add(s.mult_to_add_iso[a], s.mult_to_add_iso[b])) {
            throw std::logic_error("seed " + name + ": (B,·) -> (B,+) map is not a morphism");
          }
        }
      }
      if (!s.mult_to_add_iso.is_bijection()) {
        throw std::logic_error("seed " + name + ": (B,·) -> (B,+) map is not bijective");
      }

      // Closed form against brute force, element by element.
      std::set<Perm> closed;
      for (auto const& m : s.automorphisms) {
        closed.insert(seed_automorphism_perm(p, kind, m));
      }
      std::size_t brute = 0;
      bool        inside = true;
      for_each_brace_isomorphism(s.brace, s.brace, [&](Perm const& f) {
        ++brute;
        inside = inside && closed.count(f) == 1;
        return inside;
      });
      if (!inside || brute != closed.size() || closed.size() != s.automorphisms.size()) {
        throw std::logic_error("seed " + name + ": closed-form automorphism group disagrees "
                               "with brute force");
      }
      out.push_back(std::move(s));
    }
    return out;
  }

}  // namespace braces
