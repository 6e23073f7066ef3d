#include <doctest.h>

#include <set>

#include "braces/abelian_group.hpp"
#include "braces/arith.hpp"
#include "braces/group.hpp"

using namespace braces;

TEST_CASE("arith basics") {
  CHECK(arith::mod(-1, 9) == 8);
  CHECK(arith::pow_mod(18, 3, 49) == 1);
  CHECK(arith::inv_mod(4, 9) == 7);
  CHECK(arith::mult_order(2, 7) == 3);
  CHECK(arith::is_prime(11));
  CHECK_FALSE(arith::is_prime(21));
  // λ and α by plain search
  for (arith::i64 q : {7, 13, 19}) {
    arith::i64 best = 0;
    for (arith::i64 x = 2; x < q && !best; ++x) {
      if ((x * x * x) % q == 1) {
        best = x;
      }
    }
    CHECK(arith::smallest_of_order(3, q) == best);
  }
  CHECK(arith::smallest_of_order(3, 49) == 18);
  CHECK(arith::smallest_nonresidue(3) == 2);
  CHECK(arith::smallest_nonresidue(5) == 2);
  CHECK(arith::smallest_nonresidue(7) == 3);
}

TEST_CASE("group construction normalizes invariant factors") {
  auto g = make_group({3});
  CHECK(g.order() == 3);
  CHECK(g.invariant_factors() == std::vector<std::uint32_t>{3});

  auto h = make_group({9, 49});
  CHECK(h.order() == 441);
  CHECK(h.invariant_factors() == std::vector<std::uint32_t>{441});

  auto k = make_group({3, 21});
  CHECK(k.order() == 63);
  CHECK(k.invariant_factors() == std::vector<std::uint32_t>{3, 21});
}

TEST_CASE("encode and decode are inverse, addition is componentwise") {
  auto g = make_group({3, 21});
  for (std::size_t e = 0; e < g.order(); ++e) {
    auto c = g.decode(static_cast<elem_t>(e));
    CHECK(g.encode(c) == e);
  }
  for (std::size_t a = 0; a < g.order(); a += 5) {
    for (std::size_t b = 0; b < g.order(); b += 7) {
      auto ca = g.decode(static_cast<elem_t>(a)), cb = g.decode(static_cast<elem_t>(b));
      auto cs = g.decode(g.add(static_cast<elem_t>(a), static_cast<elem_t>(b)));
      for (std::size_t i = 0; i < g.rank(); ++i) {
        CHECK(cs[i] == (ca[i] + cb[i]) % g.invariant_factors()[i]);
      }
    }
  }
}

TEST_CASE("abelian automorphism counts") {
  CHECK(abelian_automorphisms(make_group({9})).size() == 6);
  CHECK(abelian_automorphisms(make_group({3, 3})).size() == 48);
  CHECK(abelian_automorphisms(make_group({2})).size() == 1);
  CHECK(abelian_automorphisms(make_group({49})).size() == 42);
  CHECK(abelian_automorphisms(make_group({7, 7})).size() == 2016);

  // multiplications by the units of Z/9
  std::set<elem_t> ones;
  for (auto const& f : abelian_automorphisms(make_group({9}))) {
    ones.insert(f[1]);
  }
  CHECK(ones == std::set<elem_t>{1, 2, 4, 5, 7, 8});
}

TEST_CASE("product layout splits and recombines") {
  ProductLayout l(make_group({49}), make_group({3, 3}));
  CHECK(l.whole().order() == 441);
  CHECK(l.whole().invariant_factors() == std::vector<std::uint32_t>{3, 147});
  std::set<elem_t> seen;
  for (elem_t a = 0; a < 49; ++a) {
    for (elem_t b = 0; b < 9; ++b) {
      elem_t e = l.combine(a, b);
      CHECK(l.left_part(e) == a);
      CHECK(l.right_part(e) == b);
      seen.insert(e);
    }
  }
  CHECK(seen.size() == 441);
  // combine is additive
  auto const& L = l.left();
  auto const& R = l.right();
  CHECK(l.whole().add(l.combine(5, 2), l.combine(47, 8)) == l.combine(L.add(5, 47), R.add(2, 8)));
}

namespace {

  GroupTable cyclic(std::size_t n) {
    std::vector<elem_t> t(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        t[a * n + b] = static_cast<elem_t>((a + b) % n);
      }
    }
    return GroupTable(n, t);
  }

  // Z/m ⋊ Z/k with generator of Z/k acting by multiplication by u
  GroupTable semidirect(std::size_t m, std::size_t k, std::size_t u) {
    std::size_t         n = m * k;
    std::vector<elem_t> t(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        std::size_t s1 = a % m, u1 = a / m, s2 = b % m, u2 = b / m;
        std::size_t f = 1;
        for (std::size_t i = 0; i < u1; ++i) {
          f = f * u % m;
        }
        t[a * n + b] = static_cast<elem_t>((s1 + f * s2) % m + m * ((u1 + u2) % k));
      }
    }
    return GroupTable(n, t);
  }

}  // namespace

TEST_CASE("group tables: orders, closure, fingerprints") {
  auto c = cyclic(12);
  auto o = element_orders(c);
  CHECK(o[1] == 12);
  CHECK(o[4] == 3);
  CHECK(is_abelian(c));
  elem_t gen[] = {4};
  CHECK(subgroup_closure(c, gen).size() == 3);

  auto s3 = semidirect(3, 2, 2);
  CHECK_FALSE(is_abelian(s3));
  auto fp = group_fingerprint(s3);
  CHECK(fp.center_size == 1);
  CHECK(fp.derived_size == 3);
  CHECK_FALSE(find_nonassociative_triple(s3).has_value());
}

TEST_CASE("fingerprint and isomorphism search agree") {
  // Z/7 ⋊ Z/9 with the generator acting by 2, 4 (isomorphic) and Z/63
  auto a = semidirect(7, 9, 2);
  auto b = semidirect(7, 9, 4);
  auto c = cyclic(63);
  auto d = semidirect(7, 9, 1);
  CHECK(group_fingerprint(a) == group_fingerprint(b));
  auto f = group_isomorphism(a, b);
  REQUIRE(f.has_value());
  for (elem_t x = 0; x < 63; ++x) {
    for (elem_t y = 0; y < 63; ++y) {
      REQUIRE((*f)[a.mul(x, y)] == b.mul((*f)[x], (*f)[y]));
    }
  }
  CHECK_FALSE(group_isomorphism(a, c).has_value());
  CHECK(group_fingerprint(c) == group_fingerprint(d));
  CHECK(group_isomorphism(c, d).has_value());
  CHECK(group_fingerprint(a) != group_fingerprint(c));
}
