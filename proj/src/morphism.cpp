#include "braces/morphism.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "braces/arith.hpp"
#include "braces/errors.hpp"

namespace braces {

  bool BraceMap::is_additive() const {
    auto const& ga = source->additive();
    auto const& gb = target->additive();
    for (std::size_t x = 0; x < source->size(); ++x) {
      for (std::size_t i = 0; i < ga.rank(); ++i) {
        auto const ex = static_cast<elem_t>(x);
        if (images[ga.add(ex, ga.generator(i))] != gb.add(images[x], images[ga.generator(i)])) {
          return false;
        }
      }
    }
    return true;
  }

  bool BraceMap::is_multiplicative() const {
    std::size_t const n = source->size();
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        auto ex = static_cast<elem_t>(x), ey = static_cast<elem_t>(y);
        if (images[source->mul(ex, ey)] != target->mul(images[x], images[y])) {
          return false;
        }
      }
    }
    return true;
  }

  BraceMap BraceMap::inverse() const {
    return BraceMap{target, source, images.inverse()};
  }

  HallSplit hall_split(BraceTable const& b, std::span<std::uint32_t const> left_primes) {
    ProductLayout layout = ProductLayout::split(b.additive(), left_primes);
    auto          part   = [&](bool left) {
      FiniteAbelianGroup const& g = left ? layout.left() : layout.right();
      auto embed = [&](elem_t x) { return left ? layout.combine(x, 0) : layout.combine(0, x); };
      return brace_from_law(
          g,
          [&](elem_t x, elem_t y) {
            elem_t prod  = b.mul(embed(x), embed(y));
            elem_t other = left ? layout.right_part(prod) : layout.left_part(prod);
            if (other != 0) {
              throw std::logic_error("hall_split: Hall part not closed under multiplication");
            }
            return left ? layout.left_part(prod) : layout.right_part(prod);
          },
          Meta{{"family", "hall-part"}});
    };
    BraceTable left  = part(true);
    BraceTable right = part(false);
    return HallSplit{std::move(layout), std::move(left), std::move(right)};
  }

  BraceInvariants brace_invariants(BraceTable const& b) {
    BraceInvariants inv;
    inv.additive = b.additive().invariant_factors();
    std::map<std::uint32_t, std::size_t> counts;
    for (auto o : element_orders(b.mult_group())) {
      ++counts[o];
    }
    inv.mult_orders.assign(counts.begin(), counts.end());
    for (std::size_t a = 0; a < b.size(); ++a) {
      bool trivial = true;
      for (std::size_t x = 0; x < b.size() && trivial; ++x) {
        trivial = b.lambda(static_cast<elem_t>(a), static_cast<elem_t>(x)) == x;
      }
      inv.socle_size += trivial ? 1 : 0;
    }
    return inv;
  }

  namespace {

    std::vector<std::uint32_t> primes_of(std::size_t n) {
      std::vector<std::uint32_t> out;
      for (auto [r, e] : arith::factorize(static_cast<arith::i64>(n))) {
        out.push_back(static_cast<std::uint32_t>(r));
      }
      return out;
    }

    std::vector<elem_t> additive_generators(FiniteAbelianGroup const& g) {
      std::vector<elem_t> out;
      for (std::size_t i = 0; i < g.rank(); ++i) {
        out.push_back(g.generator(i));
      }
      return out;
    }

    // f is a brace isomorphism iff it is an additive bijection with
    // f(λ_x(y)) = λ_{f(x)}(f(y)) for x in a multiplicative generating set and
    // y in an additive one.
    template <class F>
    bool multiplicative_on_generators(BraceTable const& a, BraceTable const& b,
                                      std::span<elem_t const> mult_gens,
                                      std::span<elem_t const> add_gens, F&& f) {
      for (elem_t x : mult_gens) {
        elem_t fx = f(x);
        for (elem_t y : add_gens) {
          if (f(a.lambda(x, y)) != b.lambda(fx, f(y))) {
            return false;
          }
        }
      }
      return true;
    }

    bool search(BraceTable const& a, BraceTable const& b,
                std::function<bool(Perm const&)> const& visit, std::size_t limit) {
      if (!(a.additive() == b.additive())) {
        return true;
      }
      auto const primes    = primes_of(a.size());
      auto const mult_gens = generating_set(a.mult_group());
      auto const add_gens  = additive_generators(a.additive());

      if (primes.size() <= 1) {
        bool keep_going = true;
        for_each_additive_isomorphism(
            a.additive(), b.additive(),
            [&](std::span<elem_t const> imgs) {
              auto f = [&](elem_t x) { return eval_hom(a.additive(), b.additive(), imgs, x); };
              return multiplicative_on_generators(a, b, mult_gens, add_gens, f);
            },
            [&](std::span<elem_t const> imgs) {
              keep_going = visit(*hom_to_perm(a.additive(), b.additive(), imgs));
              return keep_going;
            },
            limit);
        return keep_going;
      }

      std::uint32_t const r[] = {primes.front()};
      HallSplit const     sa  = hall_split(a, r);
      HallSplit const     sb  = hall_split(b, r);
      auto const          left  = brace_isomorphisms(sa.left, sb.left, limit);
      if (left.empty()) {
        return true;
      }
      auto const right = brace_isomorphisms(sa.right, sb.right, limit);
      for (auto const& h2 : right) {
        for (auto const& h1 : left) {
          auto f = [&](elem_t x) {
            return sb.layout.combine(h1[sa.layout.left_part(x)], h2[sa.layout.right_part(x)]);
          };
          if (!multiplicative_on_generators(a, b, mult_gens, add_gens, f)) {
            continue;
          }
          std::vector<elem_t> img(a.size());
          for (std::size_t x = 0; x < a.size(); ++x) {
            img[x] = f(static_cast<elem_t>(x));
          }
          if (!visit(Perm(std::move(img)))) {
            return false;
          }
        }
      }
      return true;
    }

  }  // namespace

  void for_each_brace_isomorphism(BraceTable const& a, BraceTable const& b,
                                  std::function<bool(Perm const&)> const& visit,
                                  std::size_t candidate_limit) {
    search(a, b, visit, candidate_limit);
  }

  std::vector<Perm> brace_isomorphisms(BraceTable const& a, BraceTable const& b,
                                       std::size_t candidate_limit) {
    std::vector<Perm> out;
    search(
        a, b,
        [&](Perm const& f) {
          out.push_back(f);
          return true;
        },
        candidate_limit);
    return out;
  }

  std::vector<Perm> brace_automorphisms(BraceTable const& b, std::size_t candidate_limit) {
    auto out = brace_isomorphisms(b, b, candidate_limit);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<BraceMap> brace_isomorphic(BraceTable const& a, BraceTable const& b,
                                           IsoOptions const& opts) {
    if (a.size() != b.size() || !(a.additive() == b.additive())) {
      return std::nullopt;
    }
    if (a.size() > opts.size_bound) {
      throw ResourceLimit("brace_isomorphic: size " + std::to_string(a.size())
                          + " exceeds bound " + std::to_string(opts.size_bound));
    }
    if (!(brace_invariants(a) == brace_invariants(b))) {
      return std::nullopt;
    }
    std::optional<BraceMap> found;
    search(
        a, b,
        [&](Perm const& f) {
          found = BraceMap{&a, &b, f};
          return false;
        },
        opts.candidate_limit);
    return found;
  }

}  // namespace braces
