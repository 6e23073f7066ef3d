#include "braces/p2q2.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "braces/arith.hpp"
#include "braces/errors.hpp"
#include "braces/json_io.hpp"
#include "braces/morphism.hpp"

namespace braces::p2q2 {

  using arith::mod;
  using arith::pow_mod;

  Constants constants(i64 p, i64 q) {
    require_hypothesis(p, q);
    Constants c;
    c.p       = p;
    c.q       = q;
    c.lambda  = arith::smallest_of_order(p, q);
    c.alpha   = arith::smallest_of_order(p, q * q);
    c.a       = arith::smallest_nonresidue(p);
    c.classes = gl2_order_p_subgroups(p, q);
    for (std::size_t i = 0; i < c.classes.size(); ++i) {
      if (c.classes[i].label == "diag(lam,lam^-1)") {
        c.m_c = static_cast<int>(i);
      }
    }
    c.m_d = gl2_class_of(Mat2{c.lambda, 0, 0, pow_mod(c.lambda, (p + 1) / 2, q)}, p, q);
    if (c.m_c < 0 || c.m_d < 0) {
      throw std::logic_error("constants: diag(lam,lam^-1) or diag(lam,lam^((p+1)/2)) not classified");
    }
    return c;
  }

  // ================================================================ groups

  std::string group_id_name(GroupId id) {
    switch (id) {
      case GroupId::G11: return "1.1";
      case GroupId::G12: return "1.2";
      case GroupId::G13: return "1.3";
      case GroupId::G14: return "1.4";
      case GroupId::G21: return "2.1";
      case GroupId::G22: return "2.2";
      case GroupId::G23: return "2.3";
      case GroupId::G24: return "2.4";
      case GroupId::G25: return "2.5";
    }
    return "?";
  }

  std::string GroupSpec::label(Constants const& c) const {
    std::string s = group_id_name(id);
    if (m_class >= 0) {
      s += "[" + c.classes.at(static_cast<std::size_t>(m_class)).label + "]";
    }
    return s;
  }

  std::vector<GroupSpec> all_group_specs(i64 p, i64 q) {
    auto const             n = static_cast<int>(gl2_order_p_subgroups(p, q).size());
    std::vector<GroupSpec> out;
    for (auto id : {GroupId::G11, GroupId::G12, GroupId::G13, GroupId::G14, GroupId::G21}) {
      out.push_back({id, p, q, -1});
    }
    for (int m = 0; m < n; ++m) {
      out.push_back({GroupId::G22, p, q, m});
    }
    out.push_back({GroupId::G23, p, q, -1});
    for (int m = 0; m < n; ++m) {
      out.push_back({GroupId::G24, p, q, m});
    }
    out.push_back({GroupId::G25, p, q, -1});
    return out;
  }

  namespace {

    bool sylow_q_cyclic(GroupId id) {
      return id == GroupId::G11 || id == GroupId::G12 || id == GroupId::G13 || id == GroupId::G14;
    }
    bool sylow_p_cyclic(GroupId id) {
      return id == GroupId::G11 || id == GroupId::G12 || id == GroupId::G21 || id == GroupId::G22;
    }

  }  // namespace

  GroupTable build_group(GroupSpec const& spec) {
    Constants const k  = constants(spec.p, spec.q);
    i64 const       p  = spec.p, q = spec.q;
    bool const      qc = sylow_q_cyclic(spec.id), pc = sylow_p_cyclic(spec.id);
    i64 const       ns = q * q, n = p * p * q * q;
    if ((spec.id == GroupId::G22 || spec.id == GroupId::G24)
        && (spec.m_class < 0 || spec.m_class >= static_cast<int>(k.classes.size()))) {
      throw PreconditionError("build_group: " + group_id_name(spec.id) + " needs a matrix class");
    }
    Mat2 const M = spec.m_class >= 0 ? k.classes[static_cast<std::size_t>(spec.m_class)].generator
                                     : Mat2{};

    // action of the p-part element (z, t) on the q-Sylow, as a matrix
    auto action = [&](i64 z, i64 t) -> Mat2 {
      switch (spec.id) {
        case GroupId::G12:
        case GroupId::G14: return Mat2{pow_mod(k.alpha, mod(z, p), ns), 0, 0, 1};
        case GroupId::G22:
        case GroupId::G24: return mat_pow(M, mod(z, p), q);
        case GroupId::G25:
          return Mat2{pow_mod(k.lambda, mod(t, p), q), 0, 0, pow_mod(k.lambda, mod(z + t, p), q)};
        default: return Mat2{};
      }
    };

    std::vector<elem_t> mul(static_cast<std::size_t>(n * n));
    for (i64 e1 = 0; e1 < n; ++e1) {
      i64 const s1 = e1 % ns, u1 = e1 / ns;
      i64 const z1 = pc ? u1 : u1 % p, t1 = pc ? 0 : u1 / p;
      Mat2 const A = action(z1, t1);
      for (i64 e2 = 0; e2 < n; ++e2) {
        i64 const s2 = e2 % ns, u2 = e2 / ns;
        i64       s;
        if (qc) {
          s = mod(s1 + A.a * s2, ns);
        } else {
          auto v = mat_apply(A, s2 % q, s2 / q, q);
          s      = mod(s1 % q + v[0], q) + q * mod(s1 / q + v[1], q);
        }
        i64 u;
        if (pc) {
          u = mod(u1 + u2, p * p);
        } else {
          u = mod(u1 % p + u2 % p, p) + p * mod(u1 / p + u2 / p, p);
        }
        mul[static_cast<std::size_t>(e1 * n + e2)] = static_cast<elem_t>(s + ns * u);
      }
    }
    return GroupTable(static_cast<std::size_t>(n), std::move(mul));
  }

  GroupSpec identify_group(GroupTable const& g, Constants const& c) {
    i64 const  p = c.p, q = c.q;
    auto const n = static_cast<i64>(g.size());
    if (n != p * p * q * q) {
      throw std::runtime_error("identify_group: order " + std::to_string(n) + " is not p²q²");
    }
    auto const          orders = element_orders(g);
    std::vector<elem_t> sq;
    bool                q_cyclic = false, p_cyclic = false;
    elem_t              q_gen    = 0;
    for (std::size_t x = 0; x < g.size(); ++x) {
      i64 o = orders[x];
      if ((q * q) % o == 0) {
        sq.push_back(static_cast<elem_t>(x));
        if (o == q * q && !q_cyclic) {
          q_cyclic = true;
          q_gen    = static_cast<elem_t>(x);
        }
      }
      if (o % (p * p) == 0) {
        p_cyclic = true;
      }
    }
    if (static_cast<i64>(sq.size()) != q * q) {
      throw std::runtime_error("identify_group: q-Sylow subgroup is not unique");
    }
    auto const gens = generating_set(g);
    auto conj = [&](elem_t h, elem_t s) { return g.mul(g.mul(h, s), g.inv(h)); };

    GroupSpec out{GroupId::G11, p, q, -1};
    if (q_cyclic) {
      std::vector<i64> dlog(g.size(), -1);
      elem_t           x = 0;
      for (i64 k = 0; k < q * q; ++k) {
        dlog[x] = k;
        x       = g.mul(x, q_gen);
      }
      std::set<i64> units{1};
      std::deque<i64> queue{1};
      std::vector<i64> gen_units;
      for (elem_t h : gens) {
        gen_units.push_back(dlog[conj(h, q_gen)]);
      }
      while (!queue.empty()) {
        i64 u = queue.front();
        queue.pop_front();
        for (i64 v : gen_units) {
          i64 w = mod(u * v, q * q);
          if (units.insert(w).second) {
            queue.push_back(w);
          }
        }
      }
      if (units.size() == 1) {
        out.id = p_cyclic ? GroupId::G11 : GroupId::G13;
      } else if (static_cast<i64>(units.size()) == p) {
        out.id = p_cyclic ? GroupId::G12 : GroupId::G14;
      } else {
        throw std::runtime_error("identify_group: action on the cyclic q-Sylow has order "
                                 + std::to_string(units.size()));
      }
      return out;
    }

    // elementary q-Sylow: coordinates in a basis s1, s2
    elem_t s1 = sq[1];
    std::vector<char> in_s1(g.size(), 0);
    for (elem_t x = 0, k = 0; k < q; ++k, x = g.mul(x, s1)) {
      in_s1[x] = 1;
    }
    elem_t s2 = 0;
    for (elem_t s : sq) {
      if (!in_s1[s]) {
        s2 = s;
        break;
      }
    }
    std::vector<std::pair<i64, i64>> coord(g.size(), {-1, -1});
    {
      elem_t xi = 0;
      for (i64 i = 0; i < q; ++i, xi = g.mul(xi, s1)) {
        elem_t x = xi;
        for (i64 j = 0; j < q; ++j, x = g.mul(x, s2)) {
          coord[x] = {i, j};
        }
      }
    }
    std::vector<Mat2> gen_mats;
    for (elem_t h : gens) {
      auto c1 = coord[conj(h, s1)], c2 = coord[conj(h, s2)];
      gen_mats.push_back(Mat2{c1.first, c2.first, c1.second, c2.second});
    }
    std::set<Mat2>   image{Mat2{}};
    std::deque<Mat2> queue{Mat2{}};
    while (!queue.empty()) {
      Mat2 m = queue.front();
      queue.pop_front();
      for (auto const& gm : gen_mats) {
        Mat2 w = mat_mul(m, gm, q);
        if (image.insert(w).second) {
          queue.push_back(w);
        }
      }
    }
    auto const h = static_cast<i64>(image.size());
    if (h == 1) {
      out.id = p_cyclic ? GroupId::G21 : GroupId::G23;
    } else if (h == p) {
      out.id = p_cyclic ? GroupId::G22 : GroupId::G24;
      for (auto const& m : image) {
        if (!(m == Mat2{})) {
          out.m_class = gl2_class_of(m, p, q);
          break;
        }
      }
      if (out.m_class < 0) {
        throw std::runtime_error("identify_group: unclassified order-p action");
      }
    } else if (h == p * p && !p_cyclic) {
      out.id = GroupId::G25;
    } else {
      throw std::runtime_error("identify_group: action on the q-Sylow has order "
                               + std::to_string(h));
    }
    return out;
  }

  // ================================================================ braces

  std::string section_name(Section s) {
    switch (s) {
      case Section::CC: return "cc";
      case Section::CN: return "cn";
      case Section::NC: return "nc";
      case Section::NN: return "nn";
    }
    return "?";
  }

  std::vector<std::uint32_t> section_invariants(Section s, i64 p, i64 q) {
    auto u = [](i64 v) { return static_cast<std::uint32_t>(v); };
    switch (s) {
      case Section::CC: return {u(p * p * q * q)};
      case Section::CN: return {u(p), u(p * q * q)};
      case Section::NC: return {u(q), u(p * p * q)};
      case Section::NN: return {u(p * q), u(p * q)};
    }
    return {};
  }

  std::string variant_name(LawVariant v) {
    switch (v) {
      case LawVariant::Standard: return "standard";
      case LawVariant::Printed: return "printed";
      case LawVariant::Corrected: return "corrected";
    }
    return "?";
  }

  std::string FamilySpec::name() const {
    return "mul" + section_name(section) + std::to_string(number);
  }

  std::string FamilySpec::params(Constants const& k) const {
    std::vector<std::string> parts;
    if (m) {
      parts.push_back("M=" + k.classes.at(static_cast<std::size_t>(*m)).label);
    }
    if (i) {
      parts.push_back("i=" + std::to_string(*i));
    }
    if (ell) {
      parts.push_back("l=" + std::to_string(*ell));
    }
    if (a) {
      parts.push_back("a=" + std::to_string(*a));
    }
    if (c) {
      parts.push_back("c=" + std::to_string(*c));
    }
    std::string out;
    for (auto const& s : parts) {
      out += (out.empty() ? "" : ";") + s;
    }
    return out;
  }

  namespace {

    // (B1 trivial, B2 trivial) per family number.
    std::pair<bool, bool> family_kinds(Section s, int n) {
      switch (s) {
        case Section::CC:
          if (n <= 2) return {true, true};
          if (n == 3) return {true, false};
          return {false, n == 4};
        case Section::CN:
          if (n <= 2) return {true, true};
          if (n <= 6) return {true, false};
          return {false, n == 7};
        case Section::NC:
          if (n <= 2) return {true, true};
          if (n <= 4) return {true, false};
          return {false, n <= 6};
        case Section::NN:
          if (n <= 3) return {true, true};
          if (n <= 9) return {true, false};
          return {false, n <= 11};
      }
      return {true, true};
    }

    int family_count(Section s) {
      switch (s) {
        case Section::CC: return 5;
        case Section::CN: return 8;
        case Section::NC: return 8;
        case Section::NN: return 15;
      }
      return 0;
    }

    bool b1_cyclic(Section s) {
      return s == Section::CC || s == Section::CN;
    }
    bool b2_cyclic(Section s) {
      return s == Section::CC || s == Section::NC;
    }

    // Coordinates of one element: B1 = x (cyclic) or (x, y); B2 = z (cyclic)
    // or (z, t).
    struct Pt {
      i64 x = 0, y = 0, z = 0, t = 0;
    };

    void need(bool ok, FamilySpec const& s, char const* what) {
      if (!ok) {
        throw PreconditionError(s.name() + ": " + what);
      }
    }

  }  // namespace

  bool FamilySpec::b1_trivial() const {
    return family_kinds(section, number).first;
  }
  bool FamilySpec::b2_trivial() const {
    return family_kinds(section, number).second;
  }
  bool FamilySpec::adjudicated() const {
    return (section == Section::NC && number >= 5)
           || (section == Section::NN && (number == 8 || number == 13 || number == 14));
  }

  BraceTable build_family(FamilySpec const& s, Constants const& k) {
    if (s.p != k.p || s.q != k.q) {
      throw PreconditionError("build_family: spec and constants disagree on (p, q)");
    }
    need(s.number >= 1 && s.number <= family_count(s.section), s, "no such family");
    i64 const p = k.p, q = k.q, qq = q * q, pp = p * p;
    i64 const ncls = static_cast<i64>(k.classes.size());

    // parameter validation
    bool const wants_m = (s.section == Section::NC && (s.number == 1 || s.number == 3))
                         || (s.section == Section::NN && s.number >= 1 && s.number <= 6
                             && s.number != 2 && s.number != 3);
    need(wants_m == s.m.has_value(), s, "matrix selector present iff the family uses M");
    if (s.m) {
      need(*s.m >= 0 && *s.m < ncls, s, "matrix selector out of range");
    }
    bool const wants_i = s.section == Section::CC && s.number == 3;
    need(wants_i == s.i.has_value(), s, "i present iff mulcc3");
    if (s.i) {
      need(*s.i >= 0 && *s.i < p, s, "i must lie in 0..p-1");
    }
    bool const wants_ell = s.section == Section::NC && (s.number == 3 || s.number == 7);
    need(wants_ell == s.ell.has_value(), s, "l present iff mulnc3 or mulnc7");
    if (s.ell) {
      i64 hi = (s.number == 3 && *s.m == k.m_c) ? (p - 1) / 2 : p - 1;
      need(*s.ell >= 1 && *s.ell <= hi, s, "l out of range");
    }
    bool const wants_a = s.section == Section::NN && s.number == 7;
    need(wants_a == s.a.has_value(), s, "a present iff mulnn7");
    if (s.a) {
      need(mod(*s.a, p) != 0 && *s.a > 0 && *s.a < p, s, "a must be a unit mod p in 1..p-1");
    }
    bool const wants_c = s.section == Section::NN && (s.number == 7 || s.number == 8);
    need(wants_c == s.c.has_value(), s, "c present iff mulnn7 or mulnn8");
    if (s.c) {
      i64 lo = s.number == 8 ? 1 : 0;
      need(*s.c >= lo && *s.c < p, s, "c out of range");
    }
    if (s.section == Section::NN && s.number == 5 && p % 4 == 3) {
      need(*s.m != k.m_c, s, "for p = 3 mod 4 and M = diag(lam,lam^-1) this is mulnn4");
    }
    need(s.adjudicated() || s.variant == LawVariant::Standard, s,
         "only adjudicated families take a law variant");
    need(!s.adjudicated() || s.variant != LawVariant::Standard, s,
         "adjudicated families need the printed or corrected variant");

    auto const [t1, t2] = family_kinds(s.section, s.number);
    bool const c1 = b1_cyclic(s.section), c2 = b2_cyclic(s.section);
    Mat2 const M  = s.m ? k.classes[static_cast<std::size_t>(*s.m)].generator : Mat2{};

    auto lam = [&](i64 e) { return pow_mod(k.lambda, mod(e, p), q); };
    auto alp = [&](i64 e) { return pow_mod(k.alpha, mod(e, p), qq); };
    // the coordinate of (B2,·) -> (B2,+) that the twist reads
    auto e_of = [&](Pt const& u) { return mod(u.z - u.t * (u.t - 1) / 2, p); };

    // Twist of B1 by the left factor's B2 part: cyclic B1 uses m.a as a unit
    // mod q², elementary trivial B1 a matrix, nontrivial B1 diag(d², d).
    auto twist = [&](Pt const& u) -> Mat2 {
      auto dd = [&](i64 d) { return Mat2{d * d % q, 0, 0, d}; };
      auto sc = [](i64 x) { return Mat2{x, 0, 0, 1}; };
      switch (s.section) {
        case Section::CC:
          if (s.number == 2) return sc(alp(u.z));
          if (s.number == 3) return sc(alp(*s.i * u.z));
          return Mat2{};
        case Section::CN:
          switch (s.number) {
            case 1: return sc(alp(u.z));
            case 3: return sc(alp(e_of(u)));
            case 4: return sc(alp(k.a * e_of(u)));
            case 5: return sc(alp(u.t));
            default: return Mat2{};
          }
        case Section::NC:
          switch (s.number) {
            case 1: return mat_pow(M, mod(u.z, p), q);
            case 3: return mat_pow(M, mod(*s.ell * u.z, p), q);
            case 5: return dd(lam(u.z));
            case 7: return dd(lam(*s.ell * u.z));
            default: return Mat2{};
          }
        case Section::NN: {
          i64 const e = e_of(u);
          switch (s.number) {
            case 1: return mat_pow(M, mod(u.z, p), q);
            case 2: return Mat2{lam(u.t), 0, 0, lam(u.z + u.t)};
            case 4: return mat_pow(M, e, q);
            case 5: return mat_pow(M, mod(k.a * e, p), q);
            case 6: return mat_pow(M, mod(u.t, p), q);
            case 7: return Mat2{lam(e * (*s.a + *s.c) + u.t), 0, 0, lam(e * *s.c + u.t)};
            case 8: {
              // [[0,c],[1,0]] and [[0,-c],[1,0]] share a coset of Aut B2; the
              // upper half of c moves to the coset of [[0,c],[a,0]]
              i64 g = 1, c = *s.c;
              if (s.variant == LawVariant::Corrected && 2 * c > p) {
                g = k.a;
                c = p - c;
              }
              return Mat2{lam(g * e), 0, 0, lam(g * e + c * u.t)};
            }
            case 10: return dd(lam(u.z));
            case 12: return dd(lam(e));
            case 13: return dd(lam(k.a * e));
            case 14: return dd(lam(u.t));
            default: return Mat2{};
          }
        }
      }
      return Mat2{};
    };

    // B1 coordinates of u·v, the printed laws first
    auto b1_printed = [&](Pt const& u, Pt const& v) -> std::optional<std::pair<i64, i64>> {
      if (s.variant != LawVariant::Printed || (s.section == Section::NN && s.number == 8)) {
        return std::nullopt;
      }
      i64 const e = e_of(u);
      switch (s.section == Section::NC ? s.number : 100 + s.number) {
        case 5:
          return std::pair{mod(u.x + lam(2 * u.z) * v.x + lam(2 * u.z) * u.x * v.x, q),
                           mod(u.y + lam(u.z) * v.y, q)};
        case 6:
        case 8: return std::pair{mod(u.x + v.x + u.x * v.x, q), mod(u.y + v.y, q)};
        case 7:
          return std::pair{
              mod(u.x + lam(2 * *s.ell * u.z) * v.x + lam(2 * *s.ell * u.z) * u.x * v.x, q),
              mod(u.y + lam(*s.ell * u.z) * v.y, q)};
        case 113:
          return std::pair{
              mod(u.x + pow_mod(mod(k.a * k.lambda * k.lambda, q), e, q) * v.x + lam(e) * u.y * v.y,
                  q),
              mod(u.y + lam(e) * v.y, q)};
        case 114:
          return std::pair{mod(u.x + lam(e) * v.x + lam(2 * e) * u.y * v.y, q),
                           mod(u.y + lam(2 * e) * v.y, q)};
        default: throw std::logic_error("no printed law for " + s.name());
      }
    };

    auto law = [&](Pt const& u, Pt const& v) {
      Pt r;
      if (auto pr = b1_printed(u, v)) {
        r.x = pr->first;
        r.y = pr->second;
      } else {
        Mat2 const A = twist(u);
        if (c1) {
          i64 w = mod(A.a * v.x, qq);
          r.x   = t1 ? mod(u.x + w, qq) : mod(u.x + w + q * u.x * w, qq);
        } else {
          auto w = mat_apply(A, v.x, v.y, q);
          r.x    = t1 ? mod(u.x + w[0], q) : mod(u.x + w[0] + u.y * w[1], q);
          r.y    = mod(u.y + w[1], q);
        }
      }
      if (c2) {
        r.z = t2 ? mod(u.z + v.z, pp) : mod(u.z + v.z + p * u.z * v.z, pp);
      } else {
        r.z = t2 ? mod(u.z + v.z, p) : mod(u.z + v.z + u.t * v.t, p);
        r.t = mod(u.t + v.t, p);
      }
      return r;
    };

    FiniteAbelianGroup const g1 = c1 ? make_group({static_cast<std::uint64_t>(qq)})
                                     : make_group({static_cast<std::uint64_t>(q),
                                                   static_cast<std::uint64_t>(q)});
    FiniteAbelianGroup const g2 = c2 ? make_group({static_cast<std::uint64_t>(pp)})
                                     : make_group({static_cast<std::uint64_t>(p),
                                                   static_cast<std::uint64_t>(p)});
    ProductLayout const      layout(g1, g2);
    std::size_t const        n = layout.whole().order();
    std::vector<Pt>          pts(n);
    for (std::size_t e = 0; e < n; ++e) {
      elem_t a = layout.left_part(static_cast<elem_t>(e));
      elem_t b = layout.right_part(static_cast<elem_t>(e));
      Pt&    u = pts[e];
      u.x      = g1.coord(a, 0);
      u.y      = c1 ? 0 : g1.coord(a, 1);
      u.z      = g2.coord(b, 0);
      u.t      = c2 ? 0 : g2.coord(b, 1);
    }
    auto encode = [&](Pt const& r) {
      std::uint32_t ca[2] = {static_cast<std::uint32_t>(r.x), static_cast<std::uint32_t>(r.y)};
      std::uint32_t cb[2] = {static_cast<std::uint32_t>(r.z), static_cast<std::uint32_t>(r.t)};
      elem_t        a     = g1.encode(std::span<std::uint32_t const>(ca, c1 ? 1 : 2));
      elem_t        b     = g2.encode(std::span<std::uint32_t const>(cb, c2 ? 1 : 2));
      return layout.combine(a, b);
    };

    Meta meta{{"family", s.name()}, {"p", p}, {"q", q}};
    Meta params = Meta::object();
    if (s.m) params["M"] = k.classes[static_cast<std::size_t>(*s.m)].label;
    if (s.i) params["i"] = *s.i;
    if (s.ell) params["l"] = *s.ell;
    if (s.a) params["a"] = *s.a;
    if (s.c) params["c"] = *s.c;
    meta["params"] = std::move(params);
    if (s.variant != LawVariant::Standard) {
      meta["variant"] = variant_name(s.variant);
    }
    meta["b1"] = t1 ? "trivial" : "nontrivial";
    meta["b2"] = t2 ? "trivial" : "nontrivial";

    std::vector<elem_t> mul(n * n);
    for (std::size_t e1 = 0; e1 < n; ++e1) {
      for (std::size_t e2 = 0; e2 < n; ++e2) {
        mul[e1 * n + e2] = encode(law(pts[e1], pts[e2]));
      }
    }
    return BraceTable(layout.whole(), std::move(mul), std::move(meta));
  }

  std::vector<FamilySpec> catalog_specs(Constants const& k) {
    i64 const               p = k.p, q = k.q;
    int const               ncls = static_cast<int>(k.classes.size());
    std::vector<FamilySpec> out;
    auto add = [&](Section s, int n, auto&& tweak) {
      FamilySpec f;
      f.p       = p;
      f.q       = q;
      f.section = s;
      f.number  = n;
      tweak(f);
      out.push_back(f);
    };
    auto plain = [](FamilySpec&) {};

    add(Section::CC, 1, plain);
    add(Section::CC, 2, plain);
    for (i64 i = 0; i < p; ++i) {
      add(Section::CC, 3, [&](FamilySpec& f) { f.i = i; });
    }
    add(Section::CC, 4, plain);
    add(Section::CC, 5, plain);

    for (int n = 1; n <= 8; ++n) {
      add(Section::CN, n, plain);
    }

    for (int m = 0; m < ncls; ++m) {
      add(Section::NC, 1, [&](FamilySpec& f) { f.m = m; });
    }
    add(Section::NC, 2, plain);
    for (int m = 0; m < ncls; ++m) {
      i64 hi = m == k.m_c ? (p - 1) / 2 : p - 1;
      for (i64 l = 1; l <= hi; ++l) {
        add(Section::NC, 3, [&](FamilySpec& f) {
          f.m   = m;
          f.ell = l;
        });
      }
    }
    add(Section::NC, 4, plain);
    add(Section::NC, 5, plain);
    add(Section::NC, 6, plain);
    for (i64 l = 1; l < p; ++l) {
      add(Section::NC, 7, [&](FamilySpec& f) { f.ell = l; });
    }
    add(Section::NC, 8, plain);

    for (int m = 0; m < ncls; ++m) {
      add(Section::NN, 1, [&](FamilySpec& f) { f.m = m; });
    }
    add(Section::NN, 2, plain);
    add(Section::NN, 3, plain);
    for (int n : {4, 5, 6}) {
      for (int m = 0; m < ncls; ++m) {
        if (n == 5 && p % 4 == 3 && m == k.m_c) {
          continue;
        }
        add(Section::NN, n, [&](FamilySpec& f) { f.m = m; });
      }
    }
    for (i64 a = 1; a < p; ++a) {
      for (i64 c = 0; c < p; ++c) {
        // (a, c) and (-a, a + c) give isomorphic braces; keep the smaller pair
        std::pair<i64, i64> partner{mod(-a, p), mod(a + c, p)};
        if (std::pair<i64, i64>{a, c} <= partner) {
          add(Section::NN, 7, [&](FamilySpec& f) {
            f.a = a;
            f.c = c;
          });
        }
      }
    }
    for (i64 c = 1; c < p; ++c) {
      add(Section::NN, 8, [&](FamilySpec& f) { f.c = c; });
    }
    for (int n = 9; n <= 15; ++n) {
      add(Section::NN, n, plain);
    }
    for (auto& f : out) {
      if (f.adjudicated()) {
        f.variant = LawVariant::Printed;
      }
    }
    return out;
  }

  // ================================================================ stream

  namespace {

    VerifyReport run_verify(BraceTable const& b, CatalogOptions const& opts, std::string& mode) {
      if (opts.exhaustive_verify && b.size() <= kVerifyBound) {
        mode = "exhaustive";
        return verify_brace(b);
      }
      mode = "sampled(" + std::to_string(opts.samples) + ")";
      return verify_brace_sampled(b, opts.samples, opts.seed);
    }

    // Verification that never throws: a law that is not even a group counts
    // as a failed check.
    std::optional<VerifyReport> try_build_and_verify(FamilySpec const& f, Constants const& k,
                                                     CatalogOptions const& opts,
                                                     std::optional<BraceTable>& out,
                                                     std::string& detail) {
      std::string mode;
      try {
        out.emplace(build_family(f, k));
        VerifyReport r = run_verify(*out, opts, mode);
        if (r.is_brace) {
          (void)out->mult_group();
        }
        detail = r.describe();
        return r;
      } catch (std::exception const& e) {
        detail = e.what();
        return std::nullopt;
      }
    }

  }  // namespace

  CatalogSummary stream_catalog(i64 p, i64 q, CatalogOptions const& opts,
                                std::function<void(CatalogEntry&&)> const& visit) {
    Constants const k = constants(p, q);
    CatalogSummary  sum;
    sum.p = p;
    sum.q = q;

    IsoOptions iso;
    iso.size_bound = static_cast<std::size_t>(p * p * q * q);

    // block = (section, b1 trivial, b2 trivial); history kept only for blocks
    // with adjudicated families
    auto const specs = catalog_specs(k);
    std::set<std::tuple<Section, bool, bool>> watched;
    for (auto const& f : specs) {
      if (f.adjudicated()) {
        watched.insert({f.section, f.b1_trivial(), f.b2_trivial()});
      }
    }
    std::map<std::tuple<Section, bool, bool>, std::vector<BraceTable>> history;

    for (FamilySpec f : specs) {
      auto const block = std::tuple{f.section, f.b1_trivial(), f.b2_trivial()};
      std::optional<BraceTable> brace;
      std::optional<VerifyReport> report;
      std::string detail;

      if (f.adjudicated()) {
        Adjudication adj;
        adj.family = f.name();
        adj.params = f.params(k);
        report     = try_build_and_verify(f, k, opts, brace, detail);
        adj.printed_is_brace = report && report->is_brace;
        adj.printed_detail   = detail;
        if (adj.printed_is_brace) {
          for (auto const& earlier : history[block]) {
            if (brace_isomorphic(earlier, *brace, iso)) {
              adj.printed_duplicates = true;
              break;
            }
          }
        }
        if (adj.printed_is_brace && !adj.printed_duplicates) {
          adj.chosen = LawVariant::Printed;
        } else {
          adj.chosen = LawVariant::Corrected;
          f.variant  = LawVariant::Corrected;
          brace.reset();
          report = try_build_and_verify(f, k, opts, brace, detail);
        }
        sum.adjudications.push_back(adj);
      } else {
        report = try_build_and_verify(f, k, opts, brace, detail);
      }
      if (!brace) {
        throw std::logic_error(f.name() + " " + f.params(k) + ": " + detail);
      }

      std::string mode;
      if (opts.exhaustive_verify && brace->size() <= kVerifyBound) {
        mode = "exhaustive";
      } else {
        mode = "sampled(" + std::to_string(opts.samples) + ")";
      }
      if (sum.verify_mode.empty()) {
        sum.verify_mode = mode;
      } else if (sum.verify_mode != mode) {
        sum.verify_mode = "mixed";
      }

      CatalogEntry entry{f, std::move(*brace), report.value_or(VerifyReport{false, {}, detail, 0}),
                         false, GroupSpec{}};
      entry.additive_ok
          = entry.brace.additive().invariant_factors() == section_invariants(f.section, p, q);
      if (opts.identify && entry.verify.is_brace) {
        entry.group = identify_group(entry.brace.mult_group(), k);
      }
      if (watched.count(block)) {
        history[block].push_back(entry.brace);
      }

      sum.specs.push_back(entry.spec);
      sum.groups.push_back(entry.group);
      sum.verified.push_back(entry.verify.is_brace ? 1 : 0);
      sum.additive_ok.push_back(entry.additive_ok ? 1 : 0);
      sum.verify_detail.push_back(entry.verify.describe());
      visit(std::move(entry));
    }
    return sum;
  }

  std::vector<CatalogEntry> full_catalog(i64 p, i64 q, CatalogOptions const& opts) {
    std::vector<CatalogEntry> out;
    stream_catalog(p, q, opts, [&](CatalogEntry&& e) { out.push_back(std::move(e)); });
    return out;
  }

  // ================================================================ counts

  i64 expected_section_count(Section s, i64 p) {
    switch (s) {
      case Section::CC: return p + 4;
      case Section::CN: return 8;
      case Section::NC: return (p * p + 4 * p + 9) / 2;
      case Section::NN: return (p * p + 5 * p) / 2 + (p % 4 == 1 ? 14 : 13);
    }
    return 0;
  }

  bool CountReport::all_pass() const {
    return verify_failures == 0 && additive_failures == 0
           && std::all_of(lines.begin(), lines.end(), [](CountLine const& l) { return l.pass(); })
           && total_expected == total_actual;
  }

  std::string CountReport::to_text() const {
    std::ostringstream os;
    os << "count report p=" << p << " q=" << q << " (verification " << verify_mode << ")\n";
    for (auto const& l : lines) {
      std::string lab = l.label + (l.item.empty() ? "" : "  item " + l.item);
      os << "  " << section_name(l.section) << "  ";
      os << lab << std::string(lab.size() < 34 ? 34 - lab.size() : 1, ' ');
      os << "expected " << l.expected << "  actual " << l.actual << "  "
         << (l.pass() ? "ok" : "MISMATCH") << "\n";
    }
    os << "  total  expected " << total_expected << "  actual " << total_actual << "\n";
    os << "  verify failures " << verify_failures << ", additive mismatches " << additive_failures
       << "\n";
    for (auto const& a : adjudications) {
      os << "  adjudicated " << a.family << (a.params.empty() ? "" : " " + a.params) << ": "
         << variant_name(a.chosen) << " (printed law "
         << (a.printed_is_brace ? (a.printed_duplicates ? "is a brace but duplicates an earlier entry"
                                                         : "is a brace")
                                : "fails: " + a.printed_detail)
         << ")\n";
    }
    return os.str();
  }

  nlohmann::ordered_json CountReport::to_json() const {
    nlohmann::ordered_json j;
    j["p"] = p;
    j["q"] = q;
    j["verify_mode"] = verify_mode;
    auto& ls = j["lines"] = nlohmann::ordered_json::array();
    for (auto const& l : lines) {
      ls.push_back({{"section", section_name(l.section)},
                    {"group", l.label},
                    {"item", l.item},
                    {"expected", l.expected},
                    {"actual", l.actual},
                    {"pass", l.pass()}});
    }
    j["total_expected"]    = total_expected;
    j["total_actual"]      = total_actual;
    j["verify_failures"]   = verify_failures;
    j["additive_failures"] = additive_failures;
    auto& as = j["adjudications"] = nlohmann::ordered_json::array();
    for (auto const& a : adjudications) {
      as.push_back({{"family", a.family},
                    {"params", a.params},
                    {"printed_is_brace", a.printed_is_brace},
                    {"printed_duplicates", a.printed_duplicates},
                    {"printed_detail", a.printed_detail},
                    {"chosen", variant_name(a.chosen)}});
    }
    j["all_pass"] = all_pass();
    return j;
  }

  CountReport count_report(CatalogSummary const& sum) {
    Constants const k = constants(sum.p, sum.q);
    i64 const       p = sum.p;
    CountReport     r;
    r.p             = sum.p;
    r.q             = sum.q;
    r.adjudications = sum.adjudications;
    r.verify_mode   = sum.verify_mode;

    std::map<std::pair<Section, GroupSpec>, i64> actual;
    std::map<Section, i64>                       per_section;
    for (std::size_t i = 0; i < sum.specs.size(); ++i) {
      ++per_section[sum.specs[i].section];
      r.verify_failures += sum.verified[i] ? 0 : 1;
      r.additive_failures += sum.additive_ok[i] ? 0 : 1;
      if (sum.verified[i]) {
        ++actual[{sum.specs[i].section, sum.groups[i]}];
      }
    }

    auto line = [&](Section s, GroupSpec const& g, std::string item, i64 expected) {
      i64 got = 0;
      if (auto it = actual.find({s, g}); it != actual.end()) {
        got = it->second;
        actual.erase(it);
      }
      r.lines.push_back(CountLine{s, g.label(k), std::move(item), expected, got});
    };
    auto gs = [&](GroupId id, int m = -1) { return GroupSpec{id, sum.p, sum.q, m}; };
    int const ncls = static_cast<int>(k.classes.size());

    line(Section::CC, gs(GroupId::G11), "", 4);
    line(Section::CC, gs(GroupId::G12), "", p);
    line(Section::CN, gs(GroupId::G13), "", 4);
    line(Section::CN, gs(GroupId::G14), "", 4);

    line(Section::NC, gs(GroupId::G21), "a", 4);
    for (int m = 0; m < ncls; ++m) {
      i64         e = 0;
      std::string item;
      if (m != k.m_c && m != k.m_d) {
        e    = p;
        item = "b";
      }
      if (m == k.m_c) {
        e += (p + 1) / 2;
        item = "c";
      }
      if (m == k.m_d) {
        e += 2 * p;
        item = item.empty() ? "d" : item + "+d";
      }
      line(Section::NC, gs(GroupId::G22, m), item, e);
    }

    line(Section::NN, gs(GroupId::G23), "a", 4);
    for (int m = 0; m < ncls; ++m) {
      i64         e = 0;
      std::string item;
      if (m != k.m_c && m != k.m_d) {
        e    = 4;
        item = "b";
      }
      if (m == k.m_c) {
        e += p % 4 == 1 ? 4 : 3;
        item = "c";
      }
      if (m == k.m_d) {
        e += 8;
        item = item.empty() ? "d" : item + "+d";
      }
      line(Section::NN, gs(GroupId::G24, m), item, e);
    }
    line(Section::NN, gs(GroupId::G25), "e", (p * p + p) / 2);

    // anything the theorems do not predict
    for (auto const& [key, n] : actual) {
      r.lines.push_back(CountLine{key.first, key.second.label(k), "unexpected", 0, n});
    }
    for (auto s : {Section::CC, Section::CN, Section::NC, Section::NN}) {
      i64 e = expected_section_count(s, p);
      r.lines.push_back(CountLine{s, "total", "", e, per_section[s]});
      r.total_expected += e;
      r.total_actual += per_section[s];
    }
    std::stable_sort(r.lines.begin(), r.lines.end(),
                     [](CountLine const& a, CountLine const& b) { return a.section < b.section; });
    return r;
  }

  CountReport count_report(i64 p, i64 q, CatalogOptions const& opts) {
    return count_report(stream_catalog(p, q, opts, [](CatalogEntry&&) {}));
  }

  std::string csv_field(std::string const& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
      return s;
    }
    std::string out = "\"";
    for (char c : s) {
      out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
  }

  CatalogWriter::CatalogWriter(std::filesystem::path dir, Constants k)
      : dir_(std::move(dir)), k_(std::move(k)) {
    std::filesystem::create_directories(dir_);
    csv_.open(dir_ / "manifest.csv");
    if (!csv_) {
      throw std::runtime_error("cannot write " + (dir_ / "manifest.csv").string());
    }
    csv_ << "family,params,additive_invariants,mult_group_id,file\n";
  }

  void CatalogWriter::add(CatalogEntry const& e) {
    char name[32];
    std::snprintf(name, sizeof name, "brace_%03zu.json", count_++);
    write_brace_file(dir_ / name, e.brace);
    std::string inv;
    for (auto d : e.brace.additive().invariant_factors()) {
      inv += (inv.empty() ? "" : "x") + std::to_string(d);
    }
    std::string fam = e.spec.name();
    if (e.spec.variant != LawVariant::Standard) {
      fam += "/" + variant_name(e.spec.variant);
    }
    csv_ << csv_field(fam) << "," << csv_field(e.spec.params(k_)) << "," << inv << ","
         << csv_field(e.group.label(k_)) << "," << name << "\n";
    csv_.flush();
  }

  void write_catalog(std::filesystem::path const& dir, std::vector<CatalogEntry> const& entries,
                     Constants const& k) {
    CatalogWriter w(dir, k);
    for (auto const& e : entries) {
      w.add(e);
    }
  }

}  // namespace braces::p2q2
