#include <doctest.h>

#include "braces/errors.hpp"
#include "braces/oracle.hpp"
#include "braces/seed.hpp"

using namespace braces;

namespace {

  std::size_t braces_of_order(std::size_t n) {
    std::size_t total = 0;
    for (auto const& g : abelian_groups_of_order(n)) {
      total += braces_on(g).size();
    }
    return total;
  }

}  // namespace

TEST_CASE("abelian groups of order n") {
  CHECK(abelian_groups_of_order(8).size() == 3);
  CHECK(abelian_groups_of_order(36).size() == 4);
  CHECK(abelian_groups_of_order(7).size() == 1);
}

TEST_CASE("brace counts of small orders") {
  // published enumeration of left braces of order n
  CHECK(braces_of_order(4) == 4);
  CHECK(braces_of_order(6) == 2);
  CHECK(braces_of_order(8) == 27);
  CHECK(braces_of_order(9) == 4);
  CHECK(braces_of_order(10) == 2);
  CHECK(braces_of_order(12) == 10);
  for (std::uint64_t p : {2, 3, 5, 7}) {
    CHECK(braces_on(make_group({p})).size() == 1);
  }
}

TEST_CASE("oracle against the seeds") {
  auto                    seeds = seed_braces(3);
  std::vector<BraceTable> cyc, ele;
  for (auto const& s : seeds) {
    (seed_is_cyclic(s.kind) ? cyc : ele).push_back(s.brace);
  }
  auto oc = braces_on(make_group({9}));
  auto oe = braces_on(make_group({3, 3}));
  CHECK(oc.size() == 2);
  CHECK(oe.size() == 2);
  CHECK(oracle_match(oc, cyc).perfect());
  CHECK(oracle_match(oe, ele).perfect());
  // cross-type never matches
  auto m = oracle_match(oc, ele);
  CHECK(m.pairs.empty());
  CHECK(m.unmatched_oracle.size() == 2);
}

TEST_CASE("a corrupted catalog leaves an entry unmatched") {
  auto seeds = seed_braces(3);
  auto oc    = braces_on(make_group({9}));
  // replace the nontrivial law by one whose cell (1,1) is changed
  auto const&         nt  = seeds[1].brace;
  std::vector<elem_t> mul = nt.mul_table();
  mul[1 * 9 + 1]          = static_cast<elem_t>((mul[1 * 9 + 1] + 1) % 9);
  BraceTable bad(nt.additive(), mul);
  auto       m = oracle_match(oc, {seeds[0].brace, bad});
  CHECK_FALSE(m.perfect());
  CHECK(m.unmatched_catalog == std::vector<std::size_t>{1});
  CHECK(m.describe().find("unmatched") != std::string::npos);
}

TEST_CASE("regular subgroups round trip") {
  auto           seeds = seed_braces(3);
  Holomorph const hol(seeds[3].brace.additive());
  CHECK(hol.order() == 9 * 48);
  auto sub = regular_subgroup(seeds[3].brace, hol);
  REQUIRE(sub.has_value());
  auto back = brace_from_regular_subgroup(hol, *sub);
  CHECK(back.mul_table() == seeds[3].brace.mul_table());
  // the subgroup is closed
  for (auto const& x : *sub) {
    for (auto const& y : *sub) {
      auto z = hol.mul(x, y);
      CHECK((*sub)[z.g].phi == z.phi);
    }
  }
}

TEST_CASE("holomorph size bound") {
  CHECK_THROWS_AS(Holomorph(make_group({11, 11})), ResourceLimit);
  CHECK_NOTHROW(Holomorph(make_group({7, 7})));
}
