#pragma once

// 2x2 matrices over Z/q and the order-p subgroups of GL(2,q).

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace braces {

  struct Mat2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    auto operator<=>(Mat2 const&) const = default;
    bool operator==(Mat2 const&) const  = default;
  };

  Mat2 mat_mul(Mat2 const& x, Mat2 const& y, std::int64_t q);
  // Negative exponents use the inverse.
  Mat2 mat_pow(Mat2 const& m, std::int64_t k, std::int64_t q);
  std::int64_t mat_det(Mat2 const& m, std::int64_t q);
  Mat2 mat_inverse(Mat2 const& m, std::int64_t q);
  std::int64_t mat_order(Mat2 const& m, std::int64_t q);
  std::array<std::int64_t, 2> mat_apply(Mat2 const& m, std::int64_t x, std::int64_t y,
                                        std::int64_t q);
  std::string describe(Mat2 const& m);

  struct HypothesisCheck {
    bool        ok = true;
    std::string failed;  // the first violated condition, e.g. "p ∤ q−1"
  };

  // q>p, p>2, q≥5, p | q−1, p ∤ q+1, p² ∤ q−1, with p and q prime.
  HypothesisCheck check_hypothesis(std::int64_t p, std::int64_t q);
  // Throws PreconditionError naming the failed condition.
  void require_hypothesis(std::int64_t p, std::int64_t q);

  struct Gl2Class {
    Mat2        generator;
    std::string label;  // ASCII, e.g. "diag(lam,lam^-1)"
    int         k = 0;  // exponent for the diag(lam,lam^k) family, 0 otherwise
  };

  // Representatives of the conjugacy classes of order-p subgroups of GL(2,q):
  // diag(1,λ), diag(λ,λ), diag(λ,λ⁻¹) and diag(λ,λᵏ) for the smaller k of
  // each pair {k, k⁻¹} outside {1, −1}.
  std::vector<Gl2Class> gl2_order_p_subgroups(std::int64_t p, std::int64_t q);

  // Index into gl2_order_p_subgroups(p, q) of the class containing <m>, or -1
  // when m does not have order p.
  int gl2_class_of(Mat2 const& m, std::int64_t p, std::int64_t q);

  inline constexpr std::int64_t kGl2BruteForceBound = 13;

  struct Gl2LemmaReport {
    std::int64_t      p = 0, q = 0;
    std::size_t       group_order      = 0;
    std::size_t       order_p_elements = 0;
    std::size_t       subgroups        = 0;
    std::size_t       classes          = 0;
    std::size_t       expected_classes = 0;
    std::vector<std::size_t> class_sizes;  // subgroups per conjugacy class
    bool              match = false;
    std::string       detail;
  };

  // Brute force over all of GL(2,q). Throws ResourceLimit for q above the bound.
  Gl2LemmaReport verify_gl2_lemma(std::int64_t p, std::int64_t q);

}  // namespace braces
