#include "braces/classify.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

#include "braces/errors.hpp"
#include "braces/morphism.hpp"
#include "braces/parallel.hpp"

namespace braces {

  PermGroup::PermGroup(std::vector<Perm> elements) : elems_(std::move(elements)) {
    if (elems_.empty()) {
      throw std::invalid_argument("PermGroup: empty element list");
    }
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (!index_.emplace(elems_[i], i).second) {
        throw std::invalid_argument("PermGroup: repeated element");
      }
    }
    identity_ = index(Perm::identity(elems_.front().size()));
    inv_.resize(elems_.size());
    order_.resize(elems_.size());
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      inv_[i]          = index(elems_[i].inverse());
      std::uint32_t k  = 1;
      std::size_t   cur = i;
      while (cur != identity_) {
        cur = compose(cur, i);
        ++k;
      }
      order_[i] = k;
    }

    // greedy generators, largest order first
    std::vector<std::size_t> by_order(elems_.size());
    std::iota(by_order.begin(), by_order.end(), 0);
    std::stable_sort(by_order.begin(), by_order.end(),
                     [&](std::size_t a, std::size_t b) { return order_[a] > order_[b]; });
    std::vector<char> member(elems_.size(), 0);
    member[identity_] = 1;
    std::size_t covered = 1;
    for (std::size_t cand : by_order) {
      if (covered == elems_.size()) {
        break;
      }
      if (member[cand]) {
        continue;
      }
      gens_.push_back(cand);
      std::fill(member.begin(), member.end(), 0);
      member[identity_] = 1;
      std::deque<std::size_t> queue{identity_};
      covered = 1;
      while (!queue.empty()) {
        std::size_t x = queue.front();
        queue.pop_front();
        for (std::size_t g : gens_) {
          std::size_t y = compose(x, g);
          if (!member[y]) {
            member[y] = 1;
            ++covered;
            queue.push_back(y);
          }
        }
      }
    }
  }

  std::size_t PermGroup::index(Perm const& f) const {
    auto it = index_.find(f);
    if (it == index_.end()) {
      throw std::out_of_range("PermGroup: permutation not in group");
    }
    return it->second;
  }

  std::size_t PermGroup::compose(std::size_t i, std::size_t j) const {
    return index(braces::compose(elems_[i], elems_[j]));
  }

  bool validate_tau(BraceTable const& b2, TauMorphism const& tau) {
    if (!tau.target_aut || tau.images.size() != b2.size()) {
      return false;
    }
    auto const& aut = *tau.target_aut;
    for (auto i : tau.images) {
      if (i >= aut.size()) {
        return false;
      }
    }
    if (tau.images[0] != aut.identity()) {
      return false;
    }
    for (std::size_t x = 0; x < b2.size(); ++x) {
      for (std::size_t y = 0; y < b2.size(); ++y) {
        auto xy = b2.mul(static_cast<elem_t>(x), static_cast<elem_t>(y));
        if (tau.images[xy] != aut.compose(tau.images[x], tau.images[y])) {
          return false;
        }
      }
    }
    return true;
  }

  namespace {

    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  }  // namespace

  std::vector<TauMorphism> enumerate_taus(BraceTable const& b2, PermGroupPtr const& autB1) {
    GroupTable const         g      = b2.mult_group();
    auto const               gens   = generating_set(g);
    auto const               orders = element_orders(g);
    PermGroup const&         aut    = *autB1;
    std::vector<TauMorphism> out;

    std::vector<std::vector<std::size_t>> candidates(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
      for (std::size_t i = 0; i < aut.size(); ++i) {
        if (orders[gens[k]] % aut.order(i) == 0) {
          candidates[k].push_back(i);
        }
      }
    }

    std::vector<std::size_t> gen_img(gens.size());
    std::vector<std::size_t> img(g.size());
    // Consistency of the labelling x -> img[x] over <gens[0..depth]>.
    auto consistent = [&](std::size_t depth) {
      std::fill(img.begin(), img.end(), kUnset);
      img[0] = aut.identity();
      std::deque<elem_t> queue{0};
      while (!queue.empty()) {
        elem_t x = queue.front();
        queue.pop_front();
        for (std::size_t k = 0; k <= depth; ++k) {
          elem_t      y = g.mul(x, gens[k]);
          std::size_t v = aut.compose(img[x], gen_img[k]);
          if (img[y] == kUnset) {
            img[y] = v;
            queue.push_back(y);
          } else if (img[y] != v) {
            return false;
          }
        }
      }
      return true;
    };

    auto recurse = [&](auto&& self, std::size_t depth) -> void {
      if (depth == gens.size()) {
        // img already holds the labelling from the last consistent() call
        if (gens.empty()) {
          std::fill(img.begin(), img.end(), aut.identity());
        }
        out.push_back(TauMorphism{img, autB1});
        return;
      }
      for (std::size_t c : candidates[depth]) {
        gen_img[depth] = c;
        if (consistent(depth)) {
          self(self, depth + 1);
        }
      }
    };
    recurse(recurse, 0);
    return out;
  }

  std::vector<TauClass> tau_classes(std::vector<TauMorphism> const& taus,
                                    PermGroup const& autB1_brace, PermGroup const& autB2_brace) {
    std::vector<TauClass> out;
    if (taus.empty()) {
      return out;
    }
    PermGroup const& target = *taus.front().target_aut;
    std::map<std::vector<std::size_t>, std::size_t> where;
    for (std::size_t i = 0; i < taus.size(); ++i) {
      where.emplace(taus[i].images, i);
    }

    std::vector<std::pair<std::size_t, std::size_t>> conj;  // (h, h⁻¹) in target indices
    for (std::size_t h : autB1_brace.generators()) {
      std::size_t t = target.index(autB1_brace[h]);
      conj.emplace_back(t, target.inverse(t));
    }
    std::vector<Perm const*> pre;
    for (std::size_t h : autB2_brace.generators()) {
      pre.push_back(&autB2_brace[h]);
    }

    std::vector<char> seen(taus.size(), 0);
    for (std::size_t start = 0; start < taus.size(); ++start) {
      if (seen[start]) {
        continue;
      }
      seen[start] = 1;
      std::vector<std::size_t> orbit{start};
      for (std::size_t head = 0; head < orbit.size(); ++head) {
        auto const& cur = taus[orbit[head]].images;
        auto        visit = [&](std::vector<std::size_t> const& next) {
          auto it = where.find(next);
          if (it == where.end()) {
            throw std::logic_error("tau_classes: orbit leaves the enumerated morphisms");
          }
          if (!seen[it->second]) {
            seen[it->second] = 1;
            orbit.push_back(it->second);
          }
        };
        for (auto [h, hinv] : conj) {
          std::vector<std::size_t> next(cur.size());
          for (std::size_t b = 0; b < cur.size(); ++b) {
            next[b] = target.compose(target.compose(h, cur[b]), hinv);
          }
          visit(next);
        }
        for (Perm const* h2 : pre) {
          std::vector<std::size_t> next(cur.size());
          for (std::size_t b = 0; b < cur.size(); ++b) {
            next[b] = cur[(*h2)[b]];
          }
          visit(next);
        }
      }
      std::size_t best = *std::min_element(orbit.begin(), orbit.end(), [&](auto a, auto b) {
        return taus[a].images < taus[b].images;
      });
      out.push_back(TauClass{taus[best], orbit.size()});
    }
    std::sort(out.begin(), out.end(), [](TauClass const& a, TauClass const& b) {
      return a.representative.images < b.representative.images;
    });
    return out;
  }

  namespace {

    BraceTable semidirect_on(BraceTable const& b1, BraceTable const& b2, TauMorphism const& tau,
                             ProductLayout const& layout) {
      Meta meta{{"family", "semidirect"},
                {"b1", b1.meta()},
                {"b2", b2.meta()},
                {"tau", tau.images}};
      return brace_from_law(
          layout.whole(),
          [&](elem_t x, elem_t y) {
            elem_t a = layout.left_part(x), b = layout.right_part(x);
            elem_t a2 = layout.left_part(y), b2y = layout.right_part(y);
            return layout.combine(b1.mul(a, tau.at(b)[a2]), b2.mul(b, b2y));
          },
          std::move(meta));
    }

  }  // namespace

  BraceTable semidirect_brace(BraceTable const& b1, BraceTable const& b2, TauMorphism const& tau) {
    if (!validate_tau(b2, tau)) {
      throw PreconditionError("semidirect_brace: tau is not a morphism (B2,·) -> Aut(B1)");
    }
    if (tau.target_aut->elements().front().size() != b1.size()) {
      throw PreconditionError("semidirect_brace: tau acts on a set of the wrong size");
    }
    ProductLayout layout(b1.additive(), b2.additive());
    return semidirect_on(b1, b2, tau, layout);
  }

  std::optional<std::array<elem_t, 2>> check_coprime_product_identity(BraceTable const&    b,
                                                                     ProductLayout const& layout) {
    auto const& g = b.additive();
    for (std::size_t a = 0; a < layout.left().order(); ++a) {
      for (std::size_t c = 0; c < layout.right().order(); ++c) {
        elem_t x = layout.combine(static_cast<elem_t>(a), 0);
        elem_t y = layout.combine(0, static_cast<elem_t>(c));
        if (b.mul(x, y) != g.add(x, y)) {
          return std::array<elem_t, 2>{x, y};
        }
      }
    }
    return std::nullopt;
  }

  std::vector<ClassifiedBrace> classify_mn(std::vector<BraceTable> const& catalog_m,
                                           std::vector<BraceTable> const& catalog_n,
                                           ClassifyOptions const&         opts) {
    if (catalog_m.empty() || catalog_n.empty()) {
      return {};
    }
    std::size_t const m = catalog_m.front().size(), n = catalog_n.front().size();
    for (auto const& b : catalog_m) {
      if (b.size() != m) {
        throw PreconditionError("classify_mn: first catalog mixes sizes");
      }
    }
    for (auto const& b : catalog_n) {
      if (b.size() != n) {
        throw PreconditionError("classify_mn: second catalog mixes sizes");
      }
    }
    if (std::gcd(m, n) != 1) {
      throw PreconditionError("classify_mn: gcd(" + std::to_string(m) + ", " + std::to_string(n)
                              + ") ≠ 1");
    }
    if (!opts.normal_subgroup_hypothesis) {
      throw PreconditionError(
          "classify_mn: the normal-subgroup hypothesis for order " + std::to_string(m * n)
          + " was not asserted");
    }

    std::vector<PermGroupPtr> aut_m(catalog_m.size()), aut_n(catalog_n.size());
    parallel_for(catalog_m.size() + catalog_n.size(), opts.jobs, [&](std::size_t i) {
      if (i < catalog_m.size()) {
        aut_m[i] = std::make_shared<PermGroup>(brace_automorphisms(catalog_m[i]));
      } else {
        std::size_t j = i - catalog_m.size();
        aut_n[j]      = std::make_shared<PermGroup>(brace_automorphisms(catalog_n[j]));
      }
    });

    std::size_t const                         pairs = catalog_m.size() * catalog_n.size();
    std::vector<std::vector<ClassifiedBrace>> per_pair(pairs);
    parallel_for(pairs, opts.jobs, [&](std::size_t k) {
      std::size_t i = k / catalog_n.size(), j = k % catalog_n.size();
      auto const& b1     = catalog_m[i];
      auto const& b2     = catalog_n[j];
      auto        layout = std::make_shared<ProductLayout const>(b1.additive(), b2.additive());
      auto        taus   = enumerate_taus(b2, aut_m[i]);
      for (auto& cls : tau_classes(taus, *aut_m[i], *aut_n[j])) {
        BraceTable brace = semidirect_on(b1, b2, cls.representative, *layout);
        per_pair[k].push_back(ClassifiedBrace{i, j, std::move(cls), std::move(brace), layout});
      }
    });

    std::vector<ClassifiedBrace> out;
    for (auto& v : per_pair) {
      for (auto& c : v) {
        out.push_back(std::move(c));
      }
    }

    if (opts.certify) {
      std::vector<std::pair<std::size_t, std::size_t>> todo;
      for (std::size_t a = 0; a < out.size(); ++a) {
        for (std::size_t b = a + 1; b < out.size(); ++b) {
          todo.emplace_back(a, b);
        }
      }
      IsoOptions iso;
      iso.size_bound = m * n;
      parallel_for(todo.size(), opts.jobs, [&](std::size_t t) {
        auto [a, b] = todo[t];
        if (brace_isomorphic(out[a].brace, out[b].brace, iso)) {
          throw std::logic_error("classify_mn: outputs " + std::to_string(a) + " and "
                                 + std::to_string(b) + " are isomorphic");
        }
      });
    }
    return out;
  }

}  // namespace braces
