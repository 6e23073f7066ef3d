#include <doctest.h>

#include <map>

#include "braces/arith.hpp"
#include "braces/errors.hpp"
#include "braces/morphism.hpp"
#include "braces/p2q2.hpp"

using namespace braces;
namespace pq = braces::p2q2;

namespace {

  elem_t at(FiniteAbelianGroup const& g, std::uint32_t x, std::uint32_t y) {
    std::uint32_t c[2] = {x, y};
    return g.encode(std::span<std::uint32_t const>(c, g.rank()));
  }

  pq::FamilySpec spec(pq::Section s, int n) {
    pq::FamilySpec f;
    f.p       = 3;
    f.q       = 7;
    f.section = s;
    f.number  = n;
    return f;
  }

  // (ℤ/q)² ⋊ (ℤ/p)² with (x,y,z,t)(x',y',z',t') = (x+λ^t x', y+λ^{z+t} y', z+z', t+t')
  GroupTable doubly_twisted(std::int64_t p, std::int64_t q, std::int64_t lambda) {
    std::size_t const n = static_cast<std::size_t>(p * p * q * q);
    auto enc = [&](std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t t) {
      return static_cast<elem_t>(x + q * (y + q * (z + p * t)));
    };
    std::vector<elem_t> mul(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      std::int64_t x = a % q, y = a / q % q, z = a / (q * q) % p, t = a / (q * q * p);
      for (std::size_t b = 0; b < n; ++b) {
        std::int64_t x2 = b % q, y2 = b / q % q, z2 = b / (q * q) % p, t2 = b / (q * q * p);
        mul[a * n + b]  = enc((x + arith::pow_mod(lambda, t, q) * x2) % q,
                              (y + arith::pow_mod(lambda, z + t, q) * y2) % q, (z + z2) % p,
                              (t + t2) % p);
      }
    }
    return GroupTable(n, mul);
  }

}  // namespace

TEST_CASE("canonical constants") {
  auto k = pq::constants(3, 7);
  CHECK(k.lambda == 2);
  CHECK(k.alpha == 18);
  CHECK(k.a == 2);
  CHECK(k.classes.size() == 3);
  CHECK(k.m_c == k.m_d);  // at p = 3, diag(λ,λ²) = diag(λ,λ⁻¹)

  auto k5 = pq::constants(5, 11);
  CHECK(k5.lambda == 3);
  CHECK(k5.a == 2);
  CHECK(k5.classes.size() == 4);
  CHECK(k5.m_c != k5.m_d);
  // α by exhaustive search of order-5 elements of (ℤ/121)*
  std::int64_t alpha = 0;
  for (std::int64_t x = 2; x < 121 && !alpha; ++x) {
    if (x % 11 && arith::pow_mod(x, 5, 121) == 1) {
      alpha = x;
    }
  }
  CHECK(k5.alpha == alpha);
  CHECK_THROWS_AS(pq::constants(3, 5), PreconditionError);
}

TEST_CASE("group identification round trip") {
  for (auto [p, q] : {std::pair<std::int64_t, std::int64_t>{3, 7}, {5, 11}}) {
    auto const k     = pq::constants(p, q);
    auto const specs = pq::all_group_specs(p, q);
    CHECK(specs.size() == 7 + 2 * k.classes.size());
    for (auto const& s : specs) {
      auto g = pq::build_group(s);
      CHECK(g.size() == static_cast<std::size_t>(p * p * q * q));
      CHECK(pq::identify_group(g, k) == s);
    }
  }
}

TEST_CASE("group 2.5 from its displayed law") {
  auto const k = pq::constants(3, 7);
  auto       g = doubly_twisted(3, 7, 2);
  CHECK_FALSE(find_nonassociative_triple(g).has_value());
  CHECK(pq::identify_group(g, k).id == pq::GroupId::G25);
  CHECK(group_fingerprint(g) == group_fingerprint(pq::build_group({pq::GroupId::G25, 3, 7, -1})));
}

TEST_CASE("cyclic group 1.1") {
  auto g  = pq::build_group({pq::GroupId::G11, 3, 7, -1});
  auto fp = group_fingerprint(g);
  CHECK(fp.abelian);
  CHECK(fp.abelian_invariants == std::vector<std::uint32_t>{441});
}

TEST_CASE("family values") {
  auto const k = pq::constants(3, 7);

  auto cc1 = pq::build_family(spec(pq::Section::CC, 1), k);
  CHECK(cc1.mul_table() == make_trivial_brace(cc1.additive()).mul_table());

  auto          cc2 = pq::build_family(spec(pq::Section::CC, 2), k);
  ProductLayout l(make_group({49}), make_group({9}));
  REQUIRE(l.whole() == cc2.additive());
  CHECK(cc2.mul(l.combine(1, 1), l.combine(1, 1)) == l.combine(19, 2));
  auto fp = group_fingerprint(cc2.mult_group());
  CHECK(fp == group_fingerprint(pq::build_group({pq::GroupId::G12, 3, 7, -1})));
  CHECK_FALSE(fp.abelian);

  auto          nn10 = pq::build_family(spec(pq::Section::NN, 10), k);
  auto          g1 = make_group({7, 7}), g2 = make_group({3, 3});
  ProductLayout m(g1, g2);
  REQUIRE(m.whole() == nn10.additive());
  auto u = m.combine(at(g1, 1, 1), at(g2, 1, 0));
  auto v = m.combine(at(g1, 1, 1), at(g2, 0, 0));
  CHECK(nn10.mul(u, v) == m.combine(at(g1, 7 % 7, 3), at(g2, 1, 0)));
}

TEST_CASE("family parameter validation") {
  auto const k = pq::constants(3, 7);
  auto       f = spec(pq::Section::CC, 3);
  CHECK_THROWS_AS(pq::build_family(f, k), PreconditionError);  // i missing
  f.i = 3;
  CHECK_THROWS_AS(pq::build_family(f, k), PreconditionError);
  f.i = 2;
  CHECK_NOTHROW(pq::build_family(f, k));

  auto g = spec(pq::Section::NN, 7);
  g.a    = 0;
  g.c    = 1;
  CHECK_THROWS_AS(pq::build_family(g, k), PreconditionError);

  auto h    = spec(pq::Section::NC, 5);  // adjudicated, needs a variant
  CHECK_THROWS_AS(pq::build_family(h, k), PreconditionError);
  h.variant = pq::LawVariant::Corrected;
  CHECK(verify_brace(pq::build_family(h, k)).is_brace);
}

TEST_CASE("section invariants and closed forms") {
  CHECK(pq::section_invariants(pq::Section::CC, 3, 7) == std::vector<std::uint32_t>{441});
  CHECK(pq::section_invariants(pq::Section::CN, 3, 7) == std::vector<std::uint32_t>{3, 147});
  CHECK(pq::section_invariants(pq::Section::NC, 3, 7) == std::vector<std::uint32_t>{7, 63});
  CHECK(pq::section_invariants(pq::Section::NN, 3, 7) == std::vector<std::uint32_t>{21, 21});
  using S = pq::Section;
  CHECK(pq::expected_section_count(S::CC, 3) + pq::expected_section_count(S::CN, 3)
            + pq::expected_section_count(S::NC, 3) + pq::expected_section_count(S::NN, 3)
        == 55);
  CHECK(pq::expected_section_count(S::CC, 5) == 9);
  CHECK(pq::expected_section_count(S::NC, 5) == 27);
  CHECK(pq::expected_section_count(S::NN, 5) == 39);
  CHECK(pq::catalog_specs(pq::constants(3, 7)).size() == 55);
  CHECK(pq::catalog_specs(pq::constants(5, 11)).size() == 83);
}

TEST_CASE("mulnn7 orbit identification") {
  auto const k = pq::constants(3, 7);
  auto       f = spec(pq::Section::NN, 7);
  f.a        = 1;
  f.c        = 0;
  auto g     = f;
  g.a        = 2;  // (-a, a+c)
  g.c        = 1;
  IsoOptions io;
  io.size_bound = 441;
  CHECK(brace_isomorphic(pq::build_family(f, k), pq::build_family(g, k), io).has_value());

  // catalog keeps the smaller pair of each orbit
  for (auto const& s : pq::catalog_specs(k)) {
    if (s.section == pq::Section::NN && s.number == 7) {
      std::pair<std::int64_t, std::int64_t> mine{*s.a, *s.c}, partner{3 - *s.a, (*s.a + *s.c) % 3};
      CHECK(mine < partner);
    }
  }
}

TEST_CASE("mulnn8: c and -c give one brace, the nonresidue coset another") {
  auto const k = pq::constants(3, 7);
  IsoOptions io;
  io.size_bound = 441;
  auto f        = spec(pq::Section::NN, 8);
  f.variant     = pq::LawVariant::Printed;
  f.c           = 1;
  auto one      = pq::build_family(f, k);
  f.c           = 2;
  auto two      = pq::build_family(f, k);
  f.variant     = pq::LawVariant::Corrected;
  auto fixed    = pq::build_family(f, k);
  CHECK(verify_brace(two).is_brace);
  CHECK(verify_brace(fixed).is_brace);
  CHECK(brace_isomorphic(one, two, io).has_value());
  CHECK_FALSE(brace_isomorphic(one, fixed, io).has_value());
  CHECK(pq::identify_group(fixed.mult_group(), k).id == pq::GroupId::G25);
}

TEST_CASE("count report at (3,7)") {
  auto summary = pq::stream_catalog(3, 7, {}, [](pq::CatalogEntry&&) {});
  auto r       = pq::count_report(summary);
  CHECK(r.total_actual == 55);
  CHECK(r.total_expected == 55);
  CHECK(r.verify_failures == 0);
  CHECK(r.additive_failures == 0);
  CHECK(r.verify_mode == "exhaustive");

  std::map<std::string, std::int64_t> totals;
  for (auto const& l : r.lines) {
    if (l.label == "total") {
      totals[pq::section_name(l.section)] = l.actual;
    }
    if (l.item == "c+d") {
      // M_c = M_d at p = 3; the frozen values are the catalog's (and engine's)
      CHECK(l.actual == (l.section == pq::Section::NC ? 5 : 7));
      CHECK(l.expected == (l.section == pq::Section::NC ? 8 : 11));
    } else {
      CHECK(l.pass());
    }
  }
  CHECK(totals == std::map<std::string, std::int64_t>{{"cc", 7}, {"cn", 8}, {"nc", 15}, {"nn", 25}});

  REQUIRE(r.adjudications.size() == 9);
  for (auto const& a : r.adjudications) {
    if (a.family == "mulnn8" && a.params == "c=1") {
      CHECK(a.chosen == pq::LawVariant::Printed);
    } else {
      CHECK(a.chosen == pq::LawVariant::Corrected);
    }
    if (a.family == "mulnn14" || a.family == "mulnn8") {
      CHECK(a.printed_is_brace);
    }
    if (a.family.rfind("mulnc", 0) == 0 || a.family == "mulnn13") {
      CHECK_FALSE(a.printed_is_brace);
    }
  }
  auto j = r.to_json();
  CHECK(j["total_actual"] == 55);
}

TEST_CASE("csv quoting") {
  CHECK(pq::csv_field("abc") == "abc");
  CHECK(pq::csv_field("M=diag(1,lam)") == "\"M=diag(1,lam)\"");
  CHECK(pq::csv_field("a\"b") == "\"a\"\"b\"");
}
