#include "braces/gl2.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "braces/arith.hpp"
#include "braces/errors.hpp"

namespace braces {

  using arith::i64;
  using arith::mod;

  Mat2 mat_mul(Mat2 const& x, Mat2 const& y, i64 q) {
    return Mat2{mod(x.a * y.a + x.b * y.c, q),
                mod(x.a * y.b + x.b * y.d, q),
                mod(x.c * y.a + x.d * y.c, q),
                mod(x.c * y.b + x.d * y.d, q)};
  }

  i64 mat_det(Mat2 const& m, i64 q) {
    return mod(m.a * m.d - m.b * m.c, q);
  }

  Mat2 mat_inverse(Mat2 const& m, i64 q) {
    i64 det = mat_det(m, q);
    if (det == 0) {
      throw std::invalid_argument("singular matrix " + describe(m));
    }
    i64 inv = arith::inv_mod(det, q);
    return Mat2{mod(m.d * inv, q), mod(-m.b * inv, q), mod(-m.c * inv, q), mod(m.a * inv, q)};
  }

  Mat2 mat_pow(Mat2 const& m, i64 k, i64 q) {
    Mat2 base = k < 0 ? mat_inverse(m, q) : Mat2{mod(m.a, q), mod(m.b, q), mod(m.c, q), mod(m.d, q)};
    k         = k < 0 ? -k : k;
    Mat2 result{1, 0, 0, 1};
    while (k > 0) {
      if (k & 1) {
        result = mat_mul(result, base, q);
      }
      base = mat_mul(base, base, q);
      k >>= 1;
    }
    return result;
  }

  i64 mat_order(Mat2 const& m, i64 q) {
    if (mat_det(m, q) == 0) {
      throw std::invalid_argument("singular matrix has no order");
    }
    Mat2 const id{1, 0, 0, 1};
    Mat2       x = Mat2{mod(m.a, q), mod(m.b, q), mod(m.c, q), mod(m.d, q)};
    i64        k = 1;
    while (x != id) {
      x = mat_mul(x, m, q);
      ++k;
    }
    return k;
  }

  std::array<i64, 2> mat_apply(Mat2 const& m, i64 x, i64 y, i64 q) {
    return {mod(m.a * x + m.b * y, q), mod(m.c * x + m.d * y, q)};
  }

  std::string describe(Mat2 const& m) {
    std::ostringstream os;
    os << "[[" << m.a << "," << m.b << "],[" << m.c << "," << m.d << "]]";
    return os.str();
  }

  HypothesisCheck check_hypothesis(i64 p, i64 q) {
    auto fail = [](std::string s) { return HypothesisCheck{false, std::move(s)}; };
    if (!arith::is_prime(p)) {
      return fail("p is not prime");
    }
    if (!arith::is_prime(q)) {
      return fail("q is not prime");
    }
    if (!(q > p)) {
      return fail("q ≤ p");
    }
    if (!(p > 2)) {
      return fail("p ≤ 2");
    }
    if (!(q >= 5)) {
      return fail("q < 5");
    }
    if ((q - 1) % p != 0) {
      return fail("p ∤ q−1");
    }
    if ((q + 1) % p == 0) {
      return fail("p | q+1");
    }
    if ((q - 1) % (p * p) == 0) {
      return fail("p² | q−1");
    }
    return {};
  }

  void require_hypothesis(i64 p, i64 q) {
    auto check = check_hypothesis(p, q);
    if (!check.ok) {
      throw PreconditionError("(p, q) = (" + std::to_string(p) + ", " + std::to_string(q)
                              + ") violates the order hypothesis: " + check.failed);
    }
  }

  std::vector<Gl2Class> gl2_order_p_subgroups(i64 p, i64 q) {
    require_hypothesis(p, q);
    i64 const lam     = arith::smallest_of_order(p, q);
    i64 const lam_inv = arith::inv_mod(lam, q);

    std::vector<Gl2Class> out;
    out.push_back({Mat2{1, 0, 0, lam}, "diag(1,lam)", 0});
    out.push_back({Mat2{lam, 0, 0, lam}, "diag(lam,lam)", 1});
    out.push_back({Mat2{lam, 0, 0, lam_inv}, "diag(lam,lam^-1)", static_cast<int>(p - 1)});
    for (i64 k = 2; k <= p - 2; ++k) {
      i64 const kinv = arith::inv_mod(k, p);
      if (k <= kinv) {
        out.push_back({Mat2{lam, 0, 0, arith::pow_mod(lam, k, q)},
                       "diag(lam,lam^" + std::to_string(k) + ")",
                       static_cast<int>(k)});
      }
    }
    return out;
  }

  namespace {

    // Eigenvalue pairs of every nontrivial power of m. For semisimple
    // elements with eigenvalues in Z/q this determines <m> up to conjugacy.
    std::vector<std::pair<i64, i64>> power_spectrum(Mat2 const& m, i64 p, i64 q) {
      i64 const tr  = mod(m.a + m.d, q);
      i64 const det = mat_det(m, q);
      std::vector<i64> roots;
      for (i64 x = 0; x < q; ++x) {
        if (mod(x * x - tr * x + det, q) == 0) {
          roots.push_back(x);
        }
      }
      if (roots.empty()) {
        return {};
      }
      i64 const r1 = roots.front();
      i64 const r2 = mod(tr - r1, q);
      std::vector<std::pair<i64, i64>> spec;
      for (i64 j = 1; j < p; ++j) {
        i64 u = arith::pow_mod(r1, j, q), v = arith::pow_mod(r2, j, q);
        spec.emplace_back(std::min(u, v), std::max(u, v));
      }
      std::sort(spec.begin(), spec.end());
      return spec;
    }

  }  // namespace

  int gl2_class_of(Mat2 const& m, i64 p, i64 q) {
    if (mat_det(m, q) == 0 || mat_order(m, q) != p) {
      return -1;
    }
    auto const spec = power_spectrum(m, p, q);
    auto const reps = gl2_order_p_subgroups(p, q);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (power_spectrum(reps[i].generator, p, q) == spec) {
        return static_cast<int>(i);
      }
    }
    return -1;
  }

  Gl2LemmaReport verify_gl2_lemma(i64 p, i64 q) {
    if (q > kGl2BruteForceBound) {
      throw ResourceLimit("verify_gl2_lemma: q = " + std::to_string(q)
                          + " exceeds the brute-force bound "
                          + std::to_string(kGl2BruteForceBound));
    }
    if (!arith::is_prime(p) || !arith::is_prime(q)) {
      throw PreconditionError("verify_gl2_lemma: p and q must be prime");
    }
    Gl2LemmaReport report;
    report.p = p;
    report.q = q;

    i64 const  q4 = q * q * q * q;
    auto const index_of = [q](Mat2 const& m) {
      return static_cast<std::size_t>(((m.a * q + m.b) * q + m.c) * q + m.d);
    };
    auto const matrix_of = [q](std::size_t i) {
      auto ii = static_cast<i64>(i);
      return Mat2{ii / (q * q * q), ii / (q * q) % q, ii / q % q, ii % q};
    };
    Mat2 const id{1, 0, 0, 1};

    // key of a cyclic subgroup: smallest index among its generators
    auto const subgroup_key = [&](Mat2 const& m) {
      std::size_t best = index_of(m);
      Mat2        x    = m;
      for (i64 j = 2; j < p; ++j) {
        x    = mat_mul(x, m, q);
        best = std::min(best, index_of(x));
      }
      return best;
    };

    std::vector<std::size_t> keys;
    for (std::size_t i = 0; i < static_cast<std::size_t>(q4); ++i) {
      Mat2 m = matrix_of(i);
      if (mat_det(m, q) == 0) {
        continue;
      }
      ++report.group_order;
      if (m != id && mat_pow(m, p, q) == id) {
        ++report.order_p_elements;
        keys.push_back(subgroup_key(m));
      }
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    report.subgroups = keys.size();

    i64 const            omega = arith::smallest_of_order(q - 1, q);
    std::vector<Mat2> const gens{{1, 1, 0, 1}, {1, 0, 1, 1}, {omega, 0, 0, 1}};
    {
      // the three generators must generate all of GL(2,q)
      std::vector<bool>        seen(static_cast<std::size_t>(q4), false);
      std::vector<std::size_t> queue{index_of(id)};
      seen[index_of(id)] = true;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        Mat2 m = matrix_of(queue[head]);
        for (auto const& g : gens) {
          std::size_t j = index_of(mat_mul(g, m, q));
          if (!seen[j]) {
            seen[j] = true;
            queue.push_back(j);
          }
        }
      }
      if (queue.size() != report.group_order) {
        throw std::logic_error("verify_gl2_lemma: generators do not generate GL(2,q)");
      }
    }

    std::vector<std::size_t> parent(keys.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x         = parent[x];
      }
      return x;
    };
    auto position = [&](std::size_t key) {
      return static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), key)
                                      - keys.begin());
    };
    for (std::size_t s = 0; s < keys.size(); ++s) {
      Mat2 m = matrix_of(keys[s]);
      for (auto const& g : gens) {
        Mat2        conj = mat_mul(mat_mul(g, m, q), mat_inverse(g, q), q);
        std::size_t t    = position(subgroup_key(conj));
        parent[find(s)]  = find(t);
      }
    }
    std::vector<std::size_t> class_of(keys.size());
    std::vector<std::size_t> roots;
    for (std::size_t s = 0; s < keys.size(); ++s) {
      std::size_t r = find(s);
      auto        it = std::find(roots.begin(), roots.end(), r);
      if (it == roots.end()) {
        roots.push_back(r);
        report.class_sizes.push_back(0);
        it = roots.end() - 1;
      }
      class_of[s] = static_cast<std::size_t>(it - roots.begin());
      ++report.class_sizes[class_of[s]];
    }
    report.classes = roots.size();

    auto hyp = check_hypothesis(p, q);
    if (!hyp.ok) {
      report.detail = "no representative list: " + hyp.failed;
      return report;
    }
    auto const reps = gl2_order_p_subgroups(p, q);
    report.expected_classes = static_cast<std::size_t>((p + 3) / 2);
    std::set<std::size_t> hit;
    for (auto const& r : reps) {
      hit.insert(class_of[position(subgroup_key(r.generator))]);
    }
    report.match = reps.size() == report.classes && hit.size() == reps.size()
                   && report.classes == report.expected_classes;
    std::ostringstream os;
    os << report.classes << " classes, " << reps.size() << " representatives hitting "
       << hit.size() << " distinct classes, (p+3)/2 = " << report.expected_classes;
    report.detail = os.str();
    return report;
  }

}  // namespace braces
