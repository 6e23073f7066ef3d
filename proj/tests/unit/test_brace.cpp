#include <doctest.h>

#include <set>

#include "braces/brace.hpp"
#include "braces/errors.hpp"
#include "braces/json_io.hpp"
#include "braces/morphism.hpp"

using namespace braces;

namespace {

  BraceTable z9_law(int kind) {
    auto g = make_group({9});
    return brace_from_law(g, [kind](elem_t a, elem_t b) {
      int x = a, y = b;
      int v = kind == 0 ? x + y : kind == 1 ? x + y + 3 * x * y : x + y + x * x * y;
      return static_cast<elem_t>(v % 9);
    });
  }

  BraceTable z3z3_nontrivial() {
    auto g = make_group({3, 3});
    return brace_from_law(g, [&g](elem_t a, elem_t b) {
      auto ca = g.decode(a), cb = g.decode(b);
      std::uint32_t r[2] = {(ca[0] + cb[0] + ca[1] * cb[1]) % 3, (ca[1] + cb[1]) % 3};
      return g.encode(r);
    });
  }

  elem_t pt(FiniteAbelianGroup const& g, std::uint32_t x, std::uint32_t y) {
    std::uint32_t c[2] = {x, y};
    return g.encode(c);
  }

}  // namespace

TEST_CASE("trivial braces") {
  auto b = make_trivial_brace(make_group({9}));
  CHECK(b.mul(4, 5) == 0);
  auto e = make_trivial_brace(make_group({3, 3}));
  for (elem_t a = 0; a < 9; ++a) {
    CHECK(lambda_map(e, a).is_identity());
  }
  CHECK(make_trivial_brace(make_group({2})).size() == 2);
  CHECK(verify_brace(b).is_brace);
}

TEST_CASE("verify_brace on Z/9 laws") {
  CHECK(verify_brace(z9_law(0)).is_brace);
  CHECK(verify_brace(z9_law(1)).is_brace);
  auto r = verify_brace(z9_law(2));
  CHECK_FALSE(r.is_brace);
  REQUIRE(r.first_violation.has_value());

  // the raw loops agree
  VerifyOptions paranoid;
  paranoid.paranoid = true;
  CHECK(verify_brace(z9_law(1), paranoid).is_brace);
  CHECK_FALSE(verify_brace(z9_law(2), paranoid).is_brace);
}

TEST_CASE("a reported violation is a real one") {
  auto        b = z9_law(2);
  auto const& g = b.additive();
  auto        r = verify_brace(b);
  REQUIRE(r.first_violation);
  auto [x, y, z] = *r.first_violation;
  bool brace_law = g.add(b.mul(x, g.add(y, z)), x) == g.add(b.mul(x, y), b.mul(x, z));
  bool assoc     = b.mul(b.mul(x, y), z) == b.mul(x, b.mul(y, z));
  bool lambda_bij = true;
  std::set<elem_t> img;
  for (elem_t c = 0; c < 9; ++c) {
    img.insert(b.lambda(x, c));
  }
  lambda_bij = img.size() == 9;
  CHECK_FALSE((brace_law && assoc && lambda_bij));
}

TEST_CASE("sampled verification") {
  CHECK(verify_brace_sampled(z9_law(1), 2000).is_brace);
  CHECK_FALSE(verify_brace_sampled(z9_law(2), 2000).is_brace);
}

TEST_CASE("table must have identity 0") {
  std::vector<elem_t> mul(9 * 9);
  for (elem_t a = 0; a < 9; ++a) {
    for (elem_t b = 0; b < 9; ++b) {
      mul[a * 9 + b] = static_cast<elem_t>((a + b + 1) % 9);
    }
  }
  CHECK_THROWS_AS(BraceTable(make_group({9}), mul), IdentityViolation);
}

TEST_CASE("lambda maps") {
  auto b = z9_law(1);
  auto l = lambda_map(b, 1);
  CHECK(l.images() == std::vector<elem_t>{0, 4, 8, 3, 7, 2, 6, 1, 5});
  CHECK(lambda_map(z9_law(0), 5).is_identity());

  auto        e = z3z3_nontrivial();
  auto const& g = e.additive();
  auto        a = pt(g, 0, 1);
  for (std::uint32_t x = 0; x < 3; ++x) {
    for (std::uint32_t y = 0; y < 3; ++y) {
      CHECK(e.lambda(a, pt(g, x, y)) == pt(g, (x + y) % 3, y));
    }
  }
  CHECK(check_lambda_identities(e).is_brace);
}

TEST_CASE("lambda identities hold for every verified brace") {
  for (auto const& b : {z9_law(0), z9_law(1), z3z3_nontrivial()}) {
    auto const& g = b.additive();
    for (elem_t x = 0; x < b.size(); ++x) {
      for (elem_t y = 0; y < b.size(); ++y) {
        auto lxy = lambda_map(b, b.mul(x, y));
        auto lx = lambda_map(b, x), ly = lambda_map(b, y);
        CHECK(lxy == compose(lx, ly));
        CHECK(lx[g.add(y, 1)] == g.add(lx[y], lx[1]));
      }
    }
  }
}

TEST_CASE("brace automorphisms") {
  auto aut = brace_automorphisms(z9_law(1));
  CHECK(aut.size() == 3);
  std::set<elem_t> mult;
  for (auto const& f : aut) {
    mult.insert(f[1]);
  }
  CHECK(mult == std::set<elem_t>{1, 4, 7});
  CHECK(aut.front().is_identity());
  CHECK(brace_automorphisms(z9_law(0)).size() == 6);

  auto ae = brace_automorphisms(z3z3_nontrivial());
  CHECK(ae.size() == 6);
}

TEST_CASE("brace isomorphism") {
  CHECK_FALSE(brace_isomorphic(z9_law(0), z9_law(1)).has_value());
  CHECK_FALSE(brace_isomorphic(make_trivial_brace(make_group({3, 3})), z3z3_nontrivial()));
  auto const z9  = z9_law(1);
  auto       self = brace_isomorphic(z9, z9);
  REQUIRE(self.has_value());
  CHECK(self->is_brace_morphism());

  // relabel by x -> 2x: x*y = x + y + 3·5·x·y transported
  auto g = make_group({9});
  auto b = brace_from_law(g, [](elem_t a, elem_t c) {
    return static_cast<elem_t>((a + c + 3 * 5 * a * c) % 9);
  });
  auto f = brace_isomorphic(z9, b);
  REQUIRE(f.has_value());
  CHECK(f->is_brace_morphism());
  CHECK(f->inverse().is_brace_morphism());
}

TEST_CASE("mult group fingerprint of Z/9 braces") {
  for (auto const& b : {z9_law(0), z9_law(1)}) {
    auto fp = group_fingerprint(b.mult_group());
    CHECK(fp.abelian);
    CHECK(fp.abelian_invariants == std::vector<std::uint32_t>{9});
  }
}

TEST_CASE("json round trip") {
  auto b = z3z3_nontrivial();
  b.set_meta({{"family", "test"}});
  auto j = brace_to_json(b);
  CHECK(j["size"] == 9);
  auto c = brace_from_json(j);
  CHECK(c.mul_table() == b.mul_table());
  CHECK(c.additive() == b.additive());
  CHECK(c.meta() == b.meta());
  CHECK(brace_to_json(c).dump() == j.dump());

  auto bad = j;
  bad["mul"][0][0] = 3;
  CHECK_THROWS_AS(brace_from_json(bad), IdentityViolation);
  bad = j;
  bad.erase("mul");
  CHECK_THROWS_AS(brace_from_json(bad), FormatError);
  bad           = j;
  bad["size"]   = 10;
  CHECK_THROWS_AS(brace_from_json(bad), FormatError);
}
