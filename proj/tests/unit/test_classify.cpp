#include <doctest.h>

#include <algorithm>
#include <memory>

#include "braces/classify.hpp"
#include "braces/errors.hpp"
#include "braces/morphism.hpp"
#include "braces/oracle.hpp"
#include "braces/seed.hpp"

using namespace braces;

namespace {

  PermGroupPtr aut_of(BraceTable const& b) {
    return std::make_shared<PermGroup>(brace_automorphisms(b));
  }

  PermGroupPtr trivial_group(std::size_t n) {
    return std::make_shared<PermGroup>(std::vector<Perm>{Perm::identity(n)});
  }

  Perm times(std::size_t n, std::size_t k) {
    std::vector<elem_t> img(n);
    for (std::size_t x = 0; x < n; ++x) {
      img[x] = static_cast<elem_t>(x * k % n);
    }
    return Perm(img);
  }

  std::vector<BraceTable> seed_tables(std::int64_t p) {
    std::vector<BraceTable> out;
    for (auto& s : seed_braces(p)) {
      out.push_back(std::move(s.brace));
    }
    return out;
  }

  // τ(b) = multiplication by u^b on Z/49, B2 = trivial Z/9
  TauMorphism power_tau(PermGroupPtr const& aut, std::size_t u) {
    TauMorphism t;
    t.target_aut    = aut;
    std::size_t pow = 1;
    for (std::size_t b = 0; b < 9; ++b) {
      t.images.push_back(aut->index(times(49, pow)));
      pow = pow * u % 49;
    }
    return t;
  }

}  // namespace

TEST_CASE("semidirect product with a multiplication twist") {
  auto b1  = make_trivial_brace(make_group({49}));
  auto b2  = make_trivial_brace(make_group({9}));
  auto aut = aut_of(b1);
  CHECK(aut->size() == 42);
  auto tau = power_tau(aut, 18);
  REQUIRE(validate_tau(b2, tau));
  auto          s = semidirect_brace(b1, b2, tau);
  ProductLayout l(b1.additive(), b2.additive());
  CHECK(s.size() == 441);
  CHECK(s.mul(l.combine(1, 1), l.combine(1, 1)) == l.combine(19, 2));
  // the whole table against the closed formula
  std::size_t pw[9] = {1};
  for (int i = 1; i < 9; ++i) {
    pw[i] = pw[i - 1] * 18 % 49;
  }
  bool all = true;
  for (elem_t a = 0; a < 49; ++a) {
    for (elem_t b = 0; b < 9; ++b) {
      for (elem_t c = 0; c < 49; c += 6) {
        for (elem_t d = 0; d < 9; ++d) {
          auto r = l.combine(static_cast<elem_t>((a + pw[b] * c) % 49), static_cast<elem_t>((b + d) % 9));
          all    = all && s.mul(l.combine(a, b), l.combine(c, d)) == r;
        }
      }
    }
  }
  CHECK(all);
  CHECK(verify_brace(s).is_brace);
  CHECK_FALSE(check_coprime_product_identity(s, l).has_value());

  // u = 2 has order 21, so b -> 2^b is not a morphism from Z/9
  CHECK_FALSE(validate_tau(b2, power_tau(aut, 2)));
  CHECK_THROWS_AS(semidirect_brace(b1, b2, power_tau(aut, 2)), PreconditionError);
}

TEST_CASE("trivial tau gives the direct product") {
  auto b1  = seed_braces(7)[1].brace;
  auto b2  = seed_braces(3)[3].brace;
  auto aut = aut_of(b1);
  TauMorphism t{std::vector<std::size_t>(9, aut->identity()), aut};
  auto          s = semidirect_brace(b1, b2, t);
  ProductLayout l(b1.additive(), b2.additive());
  for (elem_t a = 0; a < 49; a += 3) {
    for (elem_t b = 0; b < 9; ++b) {
      for (elem_t c = 0; c < 49; c += 5) {
        for (elem_t d = 0; d < 9; ++d) {
          CHECK(s.mul(l.combine(a, b), l.combine(c, d)) == l.combine(b1.mul(a, c), b2.mul(b, d)));
        }
      }
    }
  }
}

TEST_CASE("enumerate_taus counts") {
  auto z49 = make_trivial_brace(make_group({49}));
  auto z9  = make_trivial_brace(make_group({9}));
  CHECK(enumerate_taus(z9, aut_of(z49)).size() == 3);

  // autB1 cyclic of order 3: the brace automorphisms {1, 4, 7} of the
  // nontrivial Z/9 brace
  auto c3 = aut_of(seed_braces(3)[1].brace);
  REQUIRE(c3->size() == 3);
  auto e33 = make_trivial_brace(make_group({3, 3}));
  auto taus = enumerate_taus(e33, c3);
  CHECK(taus.size() == 9);
  for (auto const& t : taus) {
    CHECK(validate_tau(e33, t));
  }

  CHECK(enumerate_taus(z9, trivial_group(49)).size() == 1);
  CHECK(enumerate_taus(seed_braces(3)[3].brace, trivial_group(5)).size() == 1);
}

TEST_CASE("tau classes") {
  auto z49  = make_trivial_brace(make_group({49}));
  auto a49  = aut_of(z49);
  auto seed = seed_braces(3);

  auto t1 = enumerate_taus(seed[0].brace, a49);
  auto c1 = tau_classes(t1, *a49, *aut_of(seed[0].brace));
  CHECK(c1.size() == 2);
  std::size_t orbit = 0;
  for (auto const& c : c1) {
    orbit += c.orbit_size;
  }
  CHECK(orbit == 3);

  auto t2 = enumerate_taus(seed[1].brace, a49);
  CHECK(t2.size() == 3);
  CHECK(tau_classes(t2, *a49, *aut_of(seed[1].brace)).size() == 3);

  // trivial acting groups: every tau is its own class
  auto c3   = aut_of(seed[1].brace);
  auto z3   = make_trivial_brace(make_group({3}));
  auto t3   = enumerate_taus(z3, c3);
  auto cls3 = tau_classes(t3, *trivial_group(9), *trivial_group(3));
  CHECK(t3.size() == 3);
  CHECK(cls3.size() == 3);
}

TEST_CASE("equivalent taus give isomorphic braces") {
  auto z49 = make_trivial_brace(make_group({49}));
  auto z9  = make_trivial_brace(make_group({9}));
  auto a49 = aut_of(z49);
  auto taus = enumerate_taus(z9, a49);
  REQUIRE(taus.size() == 3);
  std::vector<BraceTable> b;
  for (auto const& t : taus) {
    b.push_back(semidirect_brace(z49, z9, t));
  }
  auto classes = tau_classes(taus, *a49, *aut_of(z9));
  REQUIRE(classes.size() == 2);
  IsoOptions io;
  io.size_bound = 441;
  // taus[0] is trivial, the other two form one orbit
  CHECK(taus[0].images == std::vector<std::size_t>(9, a49->identity()));
  CHECK(brace_isomorphic(b[1], b[2], io).has_value());
  CHECK_FALSE(brace_isomorphic(b[0], b[1], io).has_value());
}

TEST_CASE("classify_mn small cases") {
  ClassifyOptions o;
  o.normal_subgroup_hypothesis = true;

  auto z49 = make_trivial_brace(make_group({49}));
  auto z9  = make_trivial_brace(make_group({9}));
  CHECK(classify_mn({z49}, {z9}, o).size() == 2);

  auto one = classify_mn({make_trivial_brace(make_group({2}))}, {make_trivial_brace(make_group({3}))}, o);
  REQUIRE(one.size() == 1);
  CHECK(one[0].brace.size() == 6);

  CHECK_THROWS_AS(classify_mn({z9}, {make_trivial_brace(make_group({3}))}, o), PreconditionError);
  ClassifyOptions no;
  CHECK_THROWS_AS(classify_mn({z49}, {z9}, no), PreconditionError);
  CHECK_THROWS_AS(classify_mn({z49, z9}, {make_trivial_brace(make_group({4}))}, o),
                  PreconditionError);
}

TEST_CASE("classify_mn agrees with the holomorph oracle at order 63") {
  // every group of order 63 has a normal 7-Sylow
  ClassifyOptions o;
  o.normal_subgroup_hypothesis = true;
  auto engine = classify_mn({make_trivial_brace(make_group({7}))}, seed_tables(3), o);
  std::vector<BraceTable> eb, oracle;
  for (auto& c : engine) {
    CHECK_FALSE(check_coprime_product_identity(c.brace, *c.layout).has_value());
    eb.push_back(std::move(c.brace));
  }
  for (auto const& g : abelian_groups_of_order(63)) {
    for (auto& b : braces_on(g)) {
      oracle.push_back(std::move(b));
    }
  }
  CHECK(eb.size() == oracle.size());
  CHECK(oracle_match(oracle, eb).perfect());
}

TEST_CASE("classify_mn is invariant under catalog order") {
  ClassifyOptions o;
  o.normal_subgroup_hypothesis = true;
  auto m = seed_tables(7);
  auto n = seed_tables(3);
  auto forward = classify_mn({m[0], m[2]}, n, o);
  std::reverse(n.begin(), n.end());
  auto backward = classify_mn({m[2], m[0]}, n, o);
  REQUIRE(forward.size() == backward.size());
  std::vector<BraceTable> f, b;
  for (auto& c : forward) {
    f.push_back(c.brace);
  }
  for (auto& c : backward) {
    b.push_back(c.brace);
  }
  CHECK(oracle_match(f, b).perfect());

  // jobs does not change the output
  o.jobs    = 3;
  auto par  = classify_mn({m[2], m[0]}, n, o);
  REQUIRE(par.size() == backward.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].brace.mul_table() == backward[i].brace.mul_table());
    CHECK(par[i].tau.representative.images == backward[i].tau.representative.images);
  }
}
