#include <doctest.h>

#include "braces/arith.hpp"
#include "braces/errors.hpp"
#include "braces/gl2.hpp"

using namespace braces;

TEST_CASE("hypothesis on (p, q)") {
  CHECK(check_hypothesis(3, 7).ok);
  CHECK(check_hypothesis(5, 11).ok);
  CHECK(check_hypothesis(3, 13).ok);
  auto r = check_hypothesis(3, 5);
  CHECK_FALSE(r.ok);
  CHECK(r.failed == "p ∤ q−1");
  CHECK_FALSE(check_hypothesis(3, 19).ok);  // 9 | 18
  CHECK_FALSE(check_hypothesis(5, 7).ok);
  CHECK_THROWS_AS(require_hypothesis(3, 5), PreconditionError);
}

TEST_CASE("order-p subgroups of GL(2,7)") {
  auto c = gl2_order_p_subgroups(3, 7);
  REQUIRE(c.size() == 3);
  CHECK(c[0].generator == Mat2{1, 0, 0, 2});
  CHECK(c[1].generator == Mat2{2, 0, 0, 2});
  CHECK(c[2].generator == Mat2{2, 0, 0, 4});
  for (auto const& g : c) {
    CHECK(mat_order(g.generator, 7) == 3);
  }
}

TEST_CASE("order-p subgroups of GL(2,11)") {
  CHECK(arith::smallest_of_order(5, 11) == 3);
  CHECK(arith::pow_mod(3, 5, 11) == 1);
  auto c = gl2_order_p_subgroups(5, 11);
  REQUIRE(c.size() == 4);
  // one class for the pair {2, 3}: 2·3 = 6 ≡ 1 mod 5
  int paired = 0;
  for (auto const& g : c) {
    if (g.k == 2 || g.k == 3) {
      ++paired;
    }
  }
  CHECK(paired == 1);
}

TEST_CASE("class lookup is conjugation invariant") {
  std::int64_t const q = 7;
  Mat2 const         h{1, 2, 3, 5};  // det = -1
  REQUIRE(mat_det(h, q) != 0);
  auto const classes = gl2_order_p_subgroups(3, q);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    Mat2 const g = classes[i].generator;
    Mat2 const c = mat_mul(mat_mul(h, g, q), mat_inverse(h, q), q);
    CHECK(gl2_class_of(c, 3, q) == static_cast<int>(i));
    CHECK(gl2_class_of(mat_pow(g, 2, q), 3, q) == static_cast<int>(i));
  }
  CHECK(gl2_class_of(Mat2{}, 3, q) == -1);
}

TEST_CASE("brute-force lemma") {
  struct Case {
    int p, q, n;
  };
  for (auto [p, q, n] : {Case{3, 7, 3}, Case{5, 11, 4}, Case{3, 13, 3}}) {
    auto r = verify_gl2_lemma(p, q);
    CHECK(r.match);
    CHECK(r.classes == static_cast<std::size_t>(n));
    CHECK(r.expected_classes == static_cast<std::size_t>((p + 3) / 2));
  }
  auto r = verify_gl2_lemma(3, 7);
  CHECK(r.group_order == 2016);
  CHECK_THROWS_AS(verify_gl2_lemma(3, 31), ResourceLimit);
}
