#include "braces/abelian_group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "braces/arith.hpp"
#include "braces/errors.hpp"

namespace braces {

  ////////////////////////////////////////////////////////////////////////
  // Perm
  ////////////////////////////////////////////////////////////////////////

  Perm Perm::identity(std::size_t n) {
    std::vector<elem_t> v(n);
    std::iota(v.begin(), v.end(), elem_t{0});
    return Perm(std::move(v));
  }

  bool Perm::is_bijection() const {
    std::vector<bool> seen(images_.size(), false);
    for (elem_t x : images_) {
      if (x >= images_.size() || seen[x]) {
        return false;
      }
      seen[x] = true;
    }
    return true;
  }

  bool Perm::is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) {
        return false;
      }
    }
    return true;
  }

  Perm Perm::inverse() const {
    std::vector<elem_t> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) {
      inv[images_[i]] = static_cast<elem_t>(i);
    }
    return Perm(std::move(inv));
  }

  Perm compose(Perm const& f, Perm const& g) {
    std::vector<elem_t> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      out[i] = f[g[i]];
    }
    return Perm(std::move(out));
  }

  std::size_t PermHash::operator()(Perm const& p) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (elem_t x : p.images()) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }

  ////////////////////////////////////////////////////////////////////////
  // FiniteAbelianGroup
  ////////////////////////////////////////////////////////////////////////

  namespace {
    constexpr std::size_t kAddTableBound = 4096;
  }

  FiniteAbelianGroup::FiniteAbelianGroup()
      : FiniteAbelianGroup(std::vector<std::uint64_t>{}) {}

  FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::uint64_t> const& factors) {
    auto impl = std::make_shared<Impl>();

    // prime -> prime powers, one per cyclic summand
    std::map<std::uint64_t, std::vector<std::uint64_t>> powers;
    std::uint64_t                                       order = 1;
    for (std::uint64_t d : factors) {
      if (d < 2) {
        throw std::invalid_argument("make_group: every factor must be >= 2, got "
                                    + std::to_string(d));
      }
      order *= d;
      if (order > kMaxOrder) {
        throw ResourceLimit("make_group: order exceeds the element encoding bound "
                            + std::to_string(kMaxOrder));
      }
      for (auto [prime, e] : arith::factorize(static_cast<arith::i64>(d))) {
        std::uint64_t pp = 1;
        for (int i = 0; i < e; ++i) {
          pp *= static_cast<std::uint64_t>(prime);
        }
        powers[static_cast<std::uint64_t>(prime)].push_back(pp);
      }
    }
    std::size_t k = 0;
    for (auto& [prime, list] : powers) {
      std::sort(list.begin(), list.end(), std::greater<>());
      k = std::max(k, list.size());
    }
    // Largest factor collects the largest power of every prime, and so on.
    std::vector<std::uint64_t> desc(k, 1);
    for (auto const& [prime, list] : powers) {
      for (std::size_t j = 0; j < list.size(); ++j) {
        desc[j] *= list[j];
      }
    }
    impl->factors.assign(desc.rbegin(), desc.rend());
    impl->order = static_cast<std::size_t>(order);

    impl->strides.resize(k);
    std::uint64_t stride = 1;
    for (std::size_t i = 0; i < k; ++i) {
      impl->strides[i] = stride;
      stride *= impl->factors[i];
    }

    for (auto const& [prime, list] : powers) {
      for (std::size_t i = 0; i < k; ++i) {
        std::uint32_t d  = impl->factors[i];
        std::uint32_t pp = 1;
        while (d % prime == 0) {
          d /= static_cast<std::uint32_t>(prime);
          pp *= static_cast<std::uint32_t>(prime);
        }
        if (pp > 1) {
          impl->primary.push_back(
              PrimaryFactor{static_cast<std::uint32_t>(prime), pp, i});
        }
      }
    }
    for (auto const& pf : impl->primary) {
      std::uint32_t const d     = impl->factors[pf.coordinate];
      std::uint32_t const other = d / pf.modulus;
      // c = other * (other^{-1} mod modulus): 1 mod modulus, 0 mod other
      auto c = static_cast<std::uint32_t>(
          (static_cast<arith::i64>(other)
           * arith::inv_mod(static_cast<arith::i64>(other), pf.modulus))
          % d);
      impl->crt_basis.push_back(c);
    }

    std::size_t const n = impl->order;
    impl->coords.resize(n * k);
    for (std::size_t e = 0; e < n; ++e) {
      std::size_t r = e;
      for (std::size_t i = 0; i < k; ++i) {
        impl->coords[e * k + i] = static_cast<std::uint32_t>(r % impl->factors[i]);
        r /= impl->factors[i];
      }
    }
    impl->neg.resize(n);
    for (std::size_t e = 0; e < n; ++e) {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < k; ++i) {
        std::uint32_t c = impl->coords[e * k + i];
        idx += ((impl->factors[i] - c) % impl->factors[i]) * impl->strides[i];
      }
      impl->neg[e] = static_cast<elem_t>(idx);
    }
    impl_ = impl;

    if (n <= kAddTableBound) {
      impl->add_table.resize(n * n);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          impl->add_table[a * n + b]
              = add_slow(static_cast<elem_t>(a), static_cast<elem_t>(b));
        }
      }
    }
  }

  elem_t FiniteAbelianGroup::add_slow(elem_t a, elem_t b) const noexcept {
    std::size_t const k   = rank();
    std::uint64_t     idx = 0;
    for (std::size_t i = 0; i < k; ++i) {
      std::uint32_t s = impl_->coords[a * k + i] + impl_->coords[b * k + i];
      if (s >= impl_->factors[i]) {
        s -= impl_->factors[i];
      }
      idx += s * impl_->strides[i];
    }
    return static_cast<elem_t>(idx);
  }

  std::uint32_t FiniteAbelianGroup::exponent() const noexcept {
    return impl_->factors.empty() ? 1 : impl_->factors.back();
  }

  std::vector<std::uint32_t> FiniteAbelianGroup::decode(elem_t e) const {
    auto first = impl_->coords.begin() + static_cast<std::ptrdiff_t>(e * rank());
    return {first, first + static_cast<std::ptrdiff_t>(rank())};
  }

  elem_t FiniteAbelianGroup::encode(std::span<std::uint32_t const> coords) const {
    if (coords.size() != rank()) {
      throw std::invalid_argument("encode: expected " + std::to_string(rank())
                                  + " coordinates");
    }
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      idx += (coords[i] % impl_->factors[i]) * impl_->strides[i];
    }
    return static_cast<elem_t>(idx);
  }

  elem_t FiniteAbelianGroup::scale(std::int64_t k, elem_t a) const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      auto d = static_cast<std::int64_t>(impl_->factors[i]);
      auto c = arith::mod(arith::mod(k, d) * coord(a, i), d);
      idx += static_cast<std::uint64_t>(c) * impl_->strides[i];
    }
    return static_cast<elem_t>(idx);
  }

  std::uint32_t FiniteAbelianGroup::element_order(elem_t a) const {
    std::uint64_t result = 1;
    for (std::size_t i = 0; i < rank(); ++i) {
      std::uint64_t d = impl_->factors[i];
      std::uint64_t o = d / std::gcd<std::uint64_t>(d, coord(a, i));
      result          = std::lcm(result, o);
    }
    return static_cast<std::uint32_t>(result);
  }

  elem_t FiniteAbelianGroup::generator(std::size_t i) const {
    if (i >= rank()) {
      throw std::out_of_range("generator index out of range");
    }
    return static_cast<elem_t>(impl_->strides[i]);
  }

  std::vector<std::uint32_t> FiniteAbelianGroup::to_primary(elem_t e) const {
    std::vector<std::uint32_t> out;
    out.reserve(impl_->primary.size());
    for (auto const& pf : impl_->primary) {
      out.push_back(coord(e, pf.coordinate) % pf.modulus);
    }
    return out;
  }

  elem_t FiniteAbelianGroup::from_primary(std::span<std::uint32_t const> values) const {
    if (values.size() != impl_->primary.size()) {
      throw std::invalid_argument("from_primary: wrong number of components");
    }
    std::vector<std::uint64_t> c(rank(), 0);
    for (std::size_t j = 0; j < values.size(); ++j) {
      auto const& pf = impl_->primary[j];
      c[pf.coordinate]
          = (c[pf.coordinate]
             + static_cast<std::uint64_t>(values[j] % pf.modulus) * impl_->crt_basis[j])
            % impl_->factors[pf.coordinate];
    }
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      idx += c[i] * impl_->strides[i];
    }
    return static_cast<elem_t>(idx);
  }

  std::span<elem_t const> FiniteAbelianGroup::add_row(elem_t a) const noexcept {
    if (impl_->add_table.empty()) {
      return {};
    }
    return std::span<elem_t const>(impl_->add_table)
        .subspan(static_cast<std::size_t>(a) * order(), order());
  }

  std::string FiniteAbelianGroup::describe() const {
    if (rank() == 0) {
      return "1";
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < rank(); ++i) {
      os << (i ? " x " : "") << "Z/" << impl_->factors[i];
    }
    return os.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // ProductLayout
  ////////////////////////////////////////////////////////////////////////

  ProductLayout::ProductLayout(FiniteAbelianGroup left, FiniteAbelianGroup right)
      : left_(std::move(left)), right_(std::move(right)) {
    std::vector<std::uint64_t> all(left_.invariant_factors().begin(),
                                   left_.invariant_factors().end());
    all.insert(all.end(),
               right_.invariant_factors().begin(),
               right_.invariant_factors().end());
    whole_ = FiniteAbelianGroup(all);

    auto const& wp = whole_.primary_factors();
    auto const& lp = left_.primary_factors();
    auto const& rp = right_.primary_factors();

    // slot[j] = whole primary index receiving left (side 0) or right
    // (side 1) primary component j; both sides in ascending-modulus order
    // per prime, as is the whole group.
    std::vector<std::size_t> left_slot(lp.size()), right_slot(rp.size());
    std::map<std::uint32_t, std::vector<std::size_t>> whole_by_prime;
    for (std::size_t j = 0; j < wp.size(); ++j) {
      whole_by_prime[wp[j].prime].push_back(j);
    }
    for (auto const& [prime, slots] : whole_by_prime) {
      std::vector<std::pair<int, std::size_t>> merged;  // (side, index)
      std::size_t                              i = 0, j = 0;
      std::vector<std::size_t>                 li, ri;
      for (std::size_t t = 0; t < lp.size(); ++t) {
        if (lp[t].prime == prime) {
          li.push_back(t);
        }
      }
      for (std::size_t t = 0; t < rp.size(); ++t) {
        if (rp[t].prime == prime) {
          ri.push_back(t);
        }
      }
      while (i < li.size() || j < ri.size()) {
        if (j == ri.size()
            || (i < li.size() && lp[li[i]].modulus <= rp[ri[j]].modulus)) {
          merged.emplace_back(0, li[i++]);
        } else {
          merged.emplace_back(1, ri[j++]);
        }
      }
      if (merged.size() != slots.size()) {
        throw std::logic_error("ProductLayout: primary decomposition mismatch");
      }
      for (std::size_t t = 0; t < merged.size(); ++t) {
        auto [side, idx]        = merged[t];
        std::uint32_t const mod = side == 0 ? lp[idx].modulus : rp[idx].modulus;
        if (mod != wp[slots[t]].modulus) {
          throw std::logic_error("ProductLayout: primary modulus mismatch");
        }
        (side == 0 ? left_slot : right_slot)[idx] = slots[t];
      }
    }

    std::size_t const nl = left_.order(), nr = right_.order();
    combine_.resize(nl * nr);
    left_part_.assign(whole_.order(), 0);
    right_part_.assign(whole_.order(), 0);
    std::vector<std::uint32_t> values(wp.size());
    for (std::size_t a = 0; a < nl; ++a) {
      auto la = left_.to_primary(static_cast<elem_t>(a));
      for (std::size_t b = 0; b < nr; ++b) {
        auto rb = right_.to_primary(static_cast<elem_t>(b));
        std::fill(values.begin(), values.end(), 0);
        for (std::size_t t = 0; t < la.size(); ++t) {
          values[left_slot[t]] = la[t];
        }
        for (std::size_t t = 0; t < rb.size(); ++t) {
          values[right_slot[t]] = rb[t];
        }
        elem_t w           = whole_.from_primary(values);
        combine_[a * nr + b] = w;
        left_part_[w]      = static_cast<elem_t>(a);
        right_part_[w]     = static_cast<elem_t>(b);
      }
    }
  }

  ProductLayout ProductLayout::split(FiniteAbelianGroup const&         whole,
                                     std::span<std::uint32_t const> left_primes) {
    std::vector<std::uint64_t> lf, rf;
    for (auto const& pf : whole.primary_factors()) {
      bool in_left = std::find(left_primes.begin(), left_primes.end(), pf.prime)
                     != left_primes.end();
      (in_left ? lf : rf).push_back(pf.modulus);
    }
    ProductLayout layout{FiniteAbelianGroup(lf), FiniteAbelianGroup(rf)};
    if (!(layout.whole() == whole)) {
      throw std::logic_error("ProductLayout::split: inconsistent normalization");
    }
    return layout;
  }

  ////////////////////////////////////////////////////////////////////////
  // Homomorphisms
  ////////////////////////////////////////////////////////////////////////

  elem_t eval_hom(FiniteAbelianGroup const&  a,
                  FiniteAbelianGroup const&  b,
                  std::span<elem_t const> gen_images,
                  elem_t                     e) {
    elem_t result = 0;
    for (std::size_t i = 0; i < a.rank(); ++i) {
      std::uint32_t c = a.coord(e, i);
      if (c != 0) {
        result = b.add(result, b.scale(c, gen_images[i]));
      }
    }
    return result;
  }

  std::optional<Perm> hom_to_perm(FiniteAbelianGroup const&  a,
                                  FiniteAbelianGroup const&  b,
                                  std::span<elem_t const> gen_images) {
    std::size_t const n = a.order();
    if (b.order() != n) {
      return std::nullopt;
    }
    std::vector<elem_t> img(n);
    std::vector<bool>   seen(n, false);
    img[0]  = 0;
    seen[0] = true;
    // Walk A in mixed-radix order; each step adds one generator to an
    // already-mapped predecessor.
    std::vector<std::uint64_t> strides(a.rank());
    std::uint64_t              s = 1;
    for (std::size_t i = 0; i < a.rank(); ++i) {
      strides[i] = s;
      s *= a.invariant_factors()[i];
    }
    for (std::size_t e = 1; e < n; ++e) {
      std::size_t j = 0;
      while (a.coord(static_cast<elem_t>(e), j) == 0) {
        ++j;
      }
      elem_t v = b.add(img[e - strides[j]], gen_images[j]);
      if (seen[v]) {
        return std::nullopt;
      }
      seen[v] = true;
      img[e]  = v;
    }
    return Perm(std::move(img));
  }

  void for_each_additive_isomorphism(
      FiniteAbelianGroup const&                               a,
      FiniteAbelianGroup const&                               b,
      std::function<bool(std::span<elem_t const>)> const& filter,
      std::function<bool(std::span<elem_t const>)> const& visit,
      std::size_t                                             limit) {
    if (!(a == b)) {
      return;
    }
    std::size_t const k = a.rank();
    if (k == 0) {
      std::vector<elem_t> none;
      if (!filter || filter(none)) {
        visit(none);
      }
      return;
    }
    std::vector<std::vector<elem_t>> candidates(k);
    double                           space = 1;
    for (std::size_t i = 0; i < k; ++i) {
      std::uint32_t const d = a.invariant_factors()[i];
      for (std::size_t x = 0; x < b.order(); ++x) {
        if (b.element_order(static_cast<elem_t>(x)) == d) {
          candidates[i].push_back(static_cast<elem_t>(x));
        }
      }
      space *= static_cast<double>(candidates[i].size());
    }
    if (space > static_cast<double>(limit)) {
      throw ResourceLimit("additive isomorphism search space "
                          + std::to_string(static_cast<long double>(space))
                          + " exceeds limit " + std::to_string(limit));
    }
    std::vector<std::size_t> pos(k, 0);
    std::vector<elem_t>      images(k);
    while (true) {
      for (std::size_t i = 0; i < k; ++i) {
        images[i] = candidates[i][pos[i]];
      }
      if (!filter || filter(images)) {
        if (hom_to_perm(a, b, images) && !visit(images)) {
          return;
        }
      }
      // odometer, last generator fastest so the order is lexicographic
      std::size_t i = k;
      while (i > 0) {
        --i;
        if (++pos[i] < candidates[i].size()) {
          break;
        }
        pos[i] = 0;
        if (i == 0) {
          return;
        }
      }
    }
  }

  std::vector<Perm> abelian_automorphisms(FiniteAbelianGroup const& g) {
    if (g.order() > kAutomorphismOrderBound) {
      throw ResourceLimit("abelian_automorphisms: order " + std::to_string(g.order())
                          + " exceeds bound "
                          + std::to_string(kAutomorphismOrderBound));
    }
    std::vector<Perm> out;
    for_each_additive_isomorphism(g, g, nullptr, [&](std::span<elem_t const> imgs) {
      out.push_back(*hom_to_perm(g, g, imgs));
      return true;
    });
    std::sort(out.begin(), out.end());
    // identity is the lexicographically least bijection
    return out;
  }

}  // namespace braces
