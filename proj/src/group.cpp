#include "braces/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "braces/arith.hpp"
#include "braces/errors.hpp"

namespace braces {

  GroupTable::GroupTable(std::size_t n, std::vector<elem_t> mul)
      : n_(n), mul_(std::move(mul)), inv_(n) {
    if (n == 0 || mul_.size() != n * n) {
      throw std::invalid_argument("GroupTable: table must be n x n with n >= 1");
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (mul_[a] != a || mul_[a * n] != a) {
        throw std::invalid_argument("GroupTable: 0 is not the identity");
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      auto row = std::span<elem_t const>(mul_).subspan(a * n, n);
      auto it  = std::find(row.begin(), row.end(), elem_t{0});
      if (it == row.end()) {
        throw std::invalid_argument("GroupTable: element " + std::to_string(a)
                                    + " has no right inverse");
      }
      inv_[a] = static_cast<elem_t>(it - row.begin());
    }
  }

  std::optional<std::array<elem_t, 3>> find_nonassociative_triple(GroupTable const& g) {
    std::size_t const n = g.size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        elem_t ab = g.mul(static_cast<elem_t>(a), static_cast<elem_t>(b));
        for (std::size_t c = 0; c < n; ++c) {
          elem_t bc = g.mul(static_cast<elem_t>(b), static_cast<elem_t>(c));
          if (g.mul(ab, static_cast<elem_t>(c)) != g.mul(static_cast<elem_t>(a), bc)) {
            return std::array<elem_t, 3>{static_cast<elem_t>(a), static_cast<elem_t>(b),
                                         static_cast<elem_t>(c)};
          }
        }
      }
    }
    return std::nullopt;
  }

  std::vector<std::uint32_t> element_orders(GroupTable const& g) {
    std::vector<std::uint32_t> out(g.size(), 0);
    for (std::size_t a = 0; a < g.size(); ++a) {
      elem_t        x = static_cast<elem_t>(a);
      std::uint32_t k = 1;
      while (x != 0) {
        x = g.mul(x, static_cast<elem_t>(a));
        ++k;
      }
      out[a] = k;
    }
    return out;
  }

  namespace {

    void close_in_place(GroupTable const& g, std::span<elem_t const> gens,
                        std::vector<bool>& member, std::vector<elem_t>& elems) {
      for (std::size_t head = 0; head < elems.size(); ++head) {
        elem_t x = elems[head];
        for (elem_t s : gens) {
          elem_t y = g.mul(x, s);
          if (!member[y]) {
            member[y] = true;
            elems.push_back(y);
          }
        }
      }
    }

  }  // namespace

  std::vector<elem_t> subgroup_closure(GroupTable const& g, std::span<elem_t const> gens) {
    std::vector<bool>   member(g.size(), false);
    std::vector<elem_t> elems{0};
    member[0] = true;
    close_in_place(g, gens, member, elems);
    std::sort(elems.begin(), elems.end());
    return elems;
  }

  std::vector<elem_t> generating_set(GroupTable const& g) {
    auto const          orders = element_orders(g);
    std::vector<elem_t> order_by(g.size());
    std::iota(order_by.begin(), order_by.end(), elem_t{0});
    std::stable_sort(order_by.begin(), order_by.end(), [&](elem_t x, elem_t y) {
      return orders[x] > orders[y];
    });
    std::vector<elem_t> gens;
    std::vector<bool>   member(g.size(), false);
    std::vector<elem_t> elems{0};
    member[0] = true;
    for (elem_t cand : order_by) {
      if (elems.size() == g.size()) {
        break;
      }
      if (member[cand]) {
        continue;
      }
      gens.push_back(cand);
      std::fill(member.begin(), member.end(), false);
      elems.assign(1, 0);
      member[0] = true;
      close_in_place(g, gens, member, elems);
    }
    return gens;
  }

  bool is_abelian(GroupTable const& g) {
    auto const gens = generating_set(g);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        if (g.mul(gens[i], gens[j]) != g.mul(gens[j], gens[i])) {
          return false;
        }
      }
    }
    return true;
  }

  std::string GroupFingerprint::describe() const {
    std::ostringstream os;
    os << "orders{";
    for (std::size_t i = 0; i < order_counts.size(); ++i) {
      os << (i ? "," : "") << order_counts[i].first << ":" << order_counts[i].second;
    }
    os << "} center=" << center_size << " derived=" << derived_size;
    if (abelian) {
      os << " abelian(";
      for (std::size_t i = 0; i < abelian_invariants.size(); ++i) {
        os << (i ? "," : "") << abelian_invariants[i];
      }
      os << ")";
    }
    return os.str();
  }

  GroupFingerprint group_fingerprint(GroupTable const& g) {
    std::size_t const n = g.size();
    GroupFingerprint  fp;
    auto const        orders = element_orders(g);
    std::map<std::uint32_t, std::size_t> counts;
    for (auto o : orders) {
      ++counts[o];
    }
    fp.order_counts.assign(counts.begin(), counts.end());

    auto const gens = generating_set(g);
    for (std::size_t x = 0; x < n; ++x) {
      bool central = std::all_of(gens.begin(), gens.end(), [&](elem_t s) {
        return g.mul(static_cast<elem_t>(x), s) == g.mul(s, static_cast<elem_t>(x));
      });
      fp.center_size += central ? 1 : 0;
    }
    fp.abelian = fp.center_size == n;

    std::vector<bool> is_comm(n, false);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        auto   ea = static_cast<elem_t>(a), eb = static_cast<elem_t>(b);
        elem_t c  = g.mul(g.mul(ea, eb), g.mul(g.inv(ea), g.inv(eb)));
        is_comm[c] = true;
      }
    }
    std::vector<elem_t> comms;
    for (std::size_t c = 1; c < n; ++c) {
      if (is_comm[c]) {
        comms.push_back(static_cast<elem_t>(c));
      }
    }
    fp.derived_size = subgroup_closure(g, comms).size();

    if (fp.abelian) {
      // For each prime r, N_k = #{x : x^(r^k) = 1} = r^(sum_i min(k, e_i)).
      std::vector<std::uint64_t> powers;
      for (auto [r, e] : arith::factorize(static_cast<arith::i64>(n))) {
        std::vector<std::size_t> at_least;  // at_least[k-1] = #factors with e_i >= k
        std::size_t              prev = 1;
        std::uint64_t            rk   = 1;
        for (int k = 1; k <= e; ++k) {
          rk *= static_cast<std::uint64_t>(r);
          std::size_t nk = 0;
          for (auto o : orders) {
            nk += (rk % o == 0) ? 1 : 0;
          }
          std::size_t ratio = nk / prev, c = 0;
          while (ratio > 1) {
            ratio /= static_cast<std::size_t>(r);
            ++c;
          }
          at_least.push_back(c);
          prev = nk;
        }
        std::uint64_t pk = 1;
        for (std::size_t k = 0; k < at_least.size(); ++k) {
          pk *= static_cast<std::uint64_t>(r);
          std::size_t exact = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
          for (std::size_t j = 0; j < exact; ++j) {
            powers.push_back(pk);
          }
        }
      }
      fp.abelian_invariants = FiniteAbelianGroup(powers).invariant_factors();
    }
    return fp;
  }

  namespace {

    std::vector<std::size_t> centralizer_sizes(GroupTable const& g) {
      std::size_t const        n = g.size();
      std::vector<std::size_t> out(n, 0);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          auto ea = static_cast<elem_t>(a), eb = static_cast<elem_t>(b);
          out[a] += g.mul(ea, eb) == g.mul(eb, ea) ? 1 : 0;
        }
      }
      return out;
    }

    constexpr std::uint32_t kUnmapped = 0xFFFFFFFF;

  }  // namespace

  std::optional<Perm> group_isomorphism(GroupTable const& g, GroupTable const& h,
                                        std::size_t node_limit) {
    std::size_t const n = g.size();
    if (h.size() != n) {
      return std::nullopt;
    }
    if (group_fingerprint(g) != group_fingerprint(h)) {
      return std::nullopt;
    }
    auto const og = element_orders(g), oh = element_orders(h);
    auto const cg = centralizer_sizes(g), ch = centralizer_sizes(h);
    auto const gens = generating_set(g);

    std::vector<std::vector<elem_t>> candidates(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (std::size_t y = 0; y < n; ++y) {
        if (oh[y] == og[gens[i]] && ch[y] == cg[gens[i]]) {
          candidates[i].push_back(static_cast<elem_t>(y));
        }
      }
    }

    std::vector<elem_t>        images(gens.size());
    std::vector<std::uint32_t> fmap(n), used(n);
    std::vector<elem_t>        queue;
    std::size_t                nodes = 0;

    // Propagates the map along the Cayley graph of <gens[0..level]>.
    auto consistent = [&](std::size_t level) {
      std::fill(fmap.begin(), fmap.end(), kUnmapped);
      std::fill(used.begin(), used.end(), kUnmapped);
      queue.assign(1, 0);
      fmap[0] = 0;
      used[0] = 0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        elem_t x = queue[head];
        for (std::size_t j = 0; j <= level; ++j) {
          elem_t y  = g.mul(x, gens[j]);
          auto   fy = static_cast<std::uint32_t>(h.mul(static_cast<elem_t>(fmap[x]), images[j]));
          if (fmap[y] == kUnmapped) {
            if (used[fy] != kUnmapped) {
              return false;
            }
            fmap[y]  = fy;
            used[fy] = y;
            queue.push_back(y);
          } else if (fmap[y] != fy) {
            return false;
          }
        }
      }
      return true;
    };

    std::vector<std::size_t> pos(gens.size(), 0);
    std::size_t              level = 0;
    while (true) {
      if (pos[level] == candidates[level].size()) {
        if (level == 0) {
          return std::nullopt;
        }
        pos[level] = 0;
        --level;
        ++pos[level];
        continue;
      }
      if (++nodes > node_limit) {
        throw ResourceLimit("group_isomorphism: node limit exceeded");
      }
      images[level] = candidates[level][pos[level]];
      if (consistent(level)) {
        if (level + 1 == gens.size()) {
          std::vector<elem_t> out(n);
          for (std::size_t x = 0; x < n; ++x) {
            out[x] = static_cast<elem_t>(fmap[x]);
          }
          return Perm(std::move(out));
        }
        ++level;
        continue;
      }
      ++pos[level];
    }
  }

}  // namespace braces
