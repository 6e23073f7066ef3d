#include "braces/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "braces/arith.hpp"
#include "braces/errors.hpp"
#include "braces/morphism.hpp"

namespace braces {

  namespace {

    constexpr std::size_t kTableAutBound = 2048;
    constexpr std::size_t kUnset         = static_cast<std::size_t>(-1);

    std::vector<Perm> checked_automorphisms(FiniteAbelianGroup const& g) {
      auto aut = abelian_automorphisms(g);
      if (g.order() * aut.size() > kHolomorphBound) {
        throw ResourceLimit("holomorph of " + g.describe() + " has order "
                            + std::to_string(g.order() * aut.size()) + " > "
                            + std::to_string(kHolomorphBound));
      }
      return aut;
    }

  }  // namespace

  Holomorph::Holomorph(FiniteAbelianGroup base)
      : base_(std::move(base)), aut_(checked_automorphisms(base_)) {
    std::size_t const m = aut_.size();
    if (m <= kTableAutBound) {
      table_.resize(m * m);
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
          table_[a * m + b] = static_cast<std::uint32_t>(aut_.compose(a, b));
        }
      }
    }
  }

  std::size_t Holomorph::compose(std::size_t a, std::size_t b) const {
    return table_.empty() ? aut_.compose(a, b) : table_[a * aut_.size() + b];
  }

  Holomorph::Element Holomorph::mul(Element const& x, Element const& y) const {
    return Element{base_.add(x.g, aut_[x.phi][y.g]), compose(x.phi, y.phi)};
  }

  std::optional<std::vector<Holomorph::Element>> regular_subgroup(BraceTable const& b,
                                                                  Holomorph const&  hol) {
    if (!(b.additive() == hol.base())) {
      return std::nullopt;
    }
    std::vector<Holomorph::Element> out;
    for (std::size_t a = 0; a < b.size(); ++a) {
      try {
        out.push_back({static_cast<elem_t>(a),
                       hol.aut().index(lambda_map(b, static_cast<elem_t>(a)))});
      } catch (std::out_of_range const&) {
        return std::nullopt;
      }
    }
    return out;
  }

  BraceTable brace_from_regular_subgroup(Holomorph const&                       hol,
                                         std::vector<Holomorph::Element> const& subgroup) {
    auto const&              g = hol.base();
    std::vector<std::size_t> lam(g.order(), kUnset);
    for (auto const& e : subgroup) {
      if (lam[e.g] != kUnset) {
        throw PreconditionError("brace_from_regular_subgroup: subgroup is not regular");
      }
      lam[e.g] = e.phi;
    }
    if (std::count(lam.begin(), lam.end(), kUnset) != 0) {
      throw PreconditionError("brace_from_regular_subgroup: subgroup is not regular");
    }
    return brace_from_law(
        g, [&](elem_t a, elem_t b) { return g.add(a, hol.aut()[lam[a]][b]); },
        Meta{{"family", "oracle"}, {"additive", g.describe()}});
  }

  namespace {

    // Lexicographically least λ-vector over the Aut(G) conjugates
    // λ'_{φ(a)} = φ λ_a φ⁻¹.
    std::vector<std::uint32_t> canonical_form(Holomorph const& hol, std::vector<std::size_t> const& lam) {
      std::size_t const          n = lam.size();
      auto const&                aut = hol.aut();
      std::vector<std::uint32_t> best, cur(n);
      for (std::size_t f = 0; f < aut.size(); ++f) {
        std::size_t const finv = aut.inverse(f);
        for (std::size_t a = 0; a < n; ++a) {
          cur[aut[f][a]] = static_cast<std::uint32_t>(hol.compose(hol.compose(f, lam[a]), finv));
        }
        if (best.empty() || cur < best) {
          best = cur;
        }
      }
      return best;
    }

  }  // namespace

  std::vector<BraceTable> braces_on(FiniteAbelianGroup const& g) {
    Holomorph const   hol(g);
    std::size_t const n  = g.order();
    std::size_t const id = hol.aut().identity();

    std::map<std::vector<std::uint32_t>, std::vector<std::size_t>> classes;
    std::vector<std::size_t>                                       lam(n, kUnset);
    lam[0] = id;
    std::vector<Holomorph::Element> gens;

    // Closure of <gens> in Hol(G); false if two elements share a G-component
    // or an element contradicts an assignment made outside this closure.
    std::vector<std::size_t> next(n);
    auto close = [&](std::vector<std::size_t> const& fixed) {
      std::fill(next.begin(), next.end(), kUnset);
      next[0] = id;
      std::vector<Holomorph::Element> queue{{0, id}};
      for (std::size_t head = 0; head < queue.size(); ++head) {
        for (auto const& s : gens) {
          auto y = hol.mul(queue[head], s);
          if (next[y.g] == kUnset) {
            if (fixed[y.g] != kUnset && fixed[y.g] != y.phi) {
              return false;
            }
            next[y.g] = y.phi;
            queue.push_back(y);
          } else if (next[y.g] != y.phi) {
            return false;
          }
        }
      }
      return true;
    };

    std::function<void()> search = [&] {
      auto it = std::find(lam.begin(), lam.end(), kUnset);
      if (it == lam.end()) {
        classes.emplace(canonical_form(hol, lam), lam);
        return;
      }
      auto const a = static_cast<elem_t>(it - lam.begin());
      for (std::size_t phi = 0; phi < hol.aut().size(); ++phi) {
        gens.push_back({a, phi});
        if (close(lam)) {
          std::vector<std::size_t> saved = lam;
          lam                            = next;
          search();
          lam = std::move(saved);
        }
        gens.pop_back();
      }
    };
    search();

    std::vector<BraceTable> out;
    for (auto const& [form, l] : classes) {
      std::vector<Holomorph::Element> sub;
      for (std::size_t a = 0; a < n; ++a) {
        sub.push_back({static_cast<elem_t>(a), l[a]});
      }
      BraceTable b = brace_from_regular_subgroup(hol, sub);
      if (!verify_brace(b).is_brace) {
        throw std::logic_error("braces_on: enumerated table is not a brace");
      }
      out.push_back(std::move(b));
    }
    return out;
  }

  std::string MatchReport::describe() const {
    std::ostringstream os;
    os << pairs.size() << " matched";
    auto list = [&](char const* what, std::vector<std::size_t> const& v) {
      if (!v.empty()) {
        os << "; unmatched " << what << ":";
        for (auto i : v) {
          os << " " << i;
        }
      }
    };
    list("oracle", unmatched_oracle);
    list("catalog", unmatched_catalog);
    return os.str();
  }

  MatchReport oracle_match(std::vector<BraceTable> const& oracle,
                           std::vector<BraceTable> const& catalog) {
    std::vector<std::vector<std::size_t>> adj(oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      for (std::size_t j = 0; j < catalog.size(); ++j) {
        IsoOptions opts;
        opts.size_bound = std::max(oracle[i].size(), catalog[j].size());
        if (brace_isomorphic(oracle[i], catalog[j], opts)) {
          adj[i].push_back(j);
        }
      }
    }
    // Kuhn's augmenting paths
    std::vector<std::size_t>      match_c(catalog.size(), kUnset);
    std::vector<char>             used;
    std::function<bool(std::size_t)> augment = [&](std::size_t i) {
      for (std::size_t j : adj[i]) {
        if (used[j]) {
          continue;
        }
        used[j] = 1;
        if (match_c[j] == kUnset || augment(match_c[j])) {
          match_c[j] = i;
          return true;
        }
      }
      return false;
    };
    MatchReport r;
    std::vector<char> matched_o(oracle.size(), 0);
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      used.assign(catalog.size(), 0);
      augment(i);
    }
    for (std::size_t j = 0; j < catalog.size(); ++j) {
      if (match_c[j] == kUnset) {
        r.unmatched_catalog.push_back(j);
      } else {
        r.pairs.emplace_back(match_c[j], j);
        matched_o[match_c[j]] = 1;
      }
    }
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      if (!matched_o[i]) {
        r.unmatched_oracle.push_back(i);
      }
    }
    std::sort(r.pairs.begin(), r.pairs.end());
    return r;
  }

  std::vector<FiniteAbelianGroup> abelian_groups_of_order(std::size_t n) {
    // partitions of each prime exponent, combined
    std::vector<std::vector<std::vector<std::uint64_t>>> per_prime;
    for (auto [r, e] : arith::factorize(static_cast<arith::i64>(n))) {
      std::vector<std::vector<std::uint64_t>> options;
      std::vector<int>                        part;
      std::function<void(int, int)>           gen = [&](int left, int maxp) {
        if (left == 0) {
          std::vector<std::uint64_t> f;
          for (int k : part) {
            std::uint64_t v = 1;
            for (int i = 0; i < k; ++i) {
              v *= static_cast<std::uint64_t>(r);
            }
            f.push_back(v);
          }
          options.push_back(f);
          return;
        }
        for (int k = std::min(left, maxp); k >= 1; --k) {
          part.push_back(k);
          gen(left - k, k);
          part.pop_back();
        }
      };
      gen(e, e);
      per_prime.push_back(options);
    }
    std::vector<FiniteAbelianGroup> out;
    std::vector<std::uint64_t>      acc;
    std::function<void(std::size_t)> combine = [&](std::size_t i) {
      if (i == per_prime.size()) {
        out.push_back(acc.empty() ? FiniteAbelianGroup() : FiniteAbelianGroup(acc));
        return;
      }
      for (auto const& f : per_prime[i]) {
        auto size = acc.size();
        acc.insert(acc.end(), f.begin(), f.end());
        combine(i + 1);
        acc.resize(size);
      }
    };
    combine(0);
    return out;
  }

}  // namespace braces
