#pragma once

// Groups and braces of size p²q² for primes with q > p > 2, q ≥ 5, p | q−1,
// p ∤ q+1, p² ∤ q−1.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "braces/brace.hpp"
#include "braces/gl2.hpp"
#include "braces/group.hpp"

namespace braces::p2q2 {

  using i64 = std::int64_t;

  struct Constants {
    i64 p = 0, q = 0;
    i64 lambda = 0;  // smallest element of order p mod q
    i64 alpha  = 0;  // smallest element of order p mod q²
    i64 a      = 0;  // smallest quadratic nonresidue mod p
    std::vector<Gl2Class> classes;  // order-p subgroups of GL(2,q) up to conjugacy
    int m_c = -1;                   // class of diag(λ,λ⁻¹)
    int m_d = -1;                   // class of diag(λ,λ^{(p+1)/2})
  };

  // Throws PreconditionError when (p, q) violates the hypothesis.
  Constants constants(i64 p, i64 q);

  // ---------------------------------------------------------------- groups

  enum class GroupId { G11, G12, G13, G14, G21, G22, G23, G24, G25 };

  std::string group_id_name(GroupId id);  // "1.1" ... "2.5"

  struct GroupSpec {
    GroupId id = GroupId::G11;
    i64     p = 0, q = 0;
    int     m_class = -1;  // 2.2 and 2.4 only

    std::string label(Constants const& c) const;  // e.g. "2.2[diag(lam,lam^-1)]"
    bool        operator==(GroupSpec const&) const = default;
    auto        operator<=>(GroupSpec const&) const = default;
  };

  std::vector<GroupSpec> all_group_specs(i64 p, i64 q);

  // Elements are s + |S_q|·u for s in the q-Sylow (x, or x + q·y) and u in the
  // p-part (z, or z + p·t); law (s₁,u₁)(s₂,u₂) = (s₁ + u₁·s₂, u₁ + u₂).
  GroupTable build_group(GroupSpec const& spec);

  // Structural identification: type of the q-Sylow and p-Sylow, and the
  // image of the conjugation action on the q-Sylow. Throws std::runtime_error
  // when g is not one of the listed groups.
  GroupSpec identify_group(GroupTable const& g, Constants const& c);

  // --------------------------------------------------------------- braces

  enum class Section { CC, CN, NC, NN };
  std::string section_name(Section s);  // "cc" ...

  // Additive invariant factors of each section, CRT normalized.
  std::vector<std::uint32_t> section_invariants(Section s, i64 p, i64 q);

  enum class LawVariant { Standard, Printed, Corrected };
  std::string variant_name(LawVariant v);

  struct FamilySpec {
    i64                p = 0, q = 0;
    Section            section = Section::CC;
    int                number  = 1;
    std::optional<i64> i, ell, a, c;
    std::optional<int> m;  // index into Constants::classes
    LawVariant         variant = LawVariant::Standard;

    std::string name() const;                           // "mulnc3"
    std::string params(Constants const& k) const;       // "M=diag(1,lam);l=2", "" if none
    bool        b1_trivial() const;
    bool        b2_trivial() const;
    bool        adjudicated() const;  // printed law in doubt: nc5..nc8, nn8, nn13, nn14
  };

  // Throws PreconditionError on parameters outside the family's range.
  BraceTable build_family(FamilySpec const& spec, Constants const& k);

  // Every family instance in catalog order (variant Standard for adjudicated
  // families, resolved while streaming).
  std::vector<FamilySpec> catalog_specs(Constants const& k);

  struct Adjudication {
    std::string family;
    std::string params;
    bool        printed_is_brace      = false;
    bool        printed_duplicates    = false;  // isomorphic to an earlier entry in its block
    std::string printed_detail;
    LawVariant  chosen                = LawVariant::Corrected;
  };

  struct CatalogEntry {
    FamilySpec   spec;
    BraceTable   brace;
    VerifyReport verify;
    bool         additive_ok = false;
    GroupSpec    group;
  };

  struct CatalogOptions {
    bool        exhaustive_verify = true;   // exhaustive when size ≤ kVerifyBound
    std::size_t samples           = 1'000'000;
    std::uint64_t seed            = kDefaultSampleSeed;
    bool        identify          = true;
  };

  struct CatalogSummary {
    i64                       p = 0, q = 0;
    std::vector<FamilySpec>   specs;
    std::vector<GroupSpec>    groups;
    std::vector<char>         verified;
    std::vector<char>         additive_ok;
    std::vector<std::string>  verify_detail;
    std::vector<Adjudication> adjudications;
    std::string               verify_mode;  // "exhaustive" or "sampled(N)"
  };

  // Builds every catalog brace in order and hands it to `visit`; only blocks
  // containing adjudicated families are kept in memory.
  CatalogSummary stream_catalog(i64 p, i64 q, CatalogOptions const& opts,
                                std::function<void(CatalogEntry&&)> const& visit);

  std::vector<CatalogEntry> full_catalog(i64 p, i64 q, CatalogOptions const& opts = {});

  // ---------------------------------------------------------------- counts

  struct CountLine {
    Section     section;
    std::string label;  // group label, or "total"
    std::string item;   // theorem item: "a".."e", "c+d", "" for totals
    i64         expected = 0;
    i64         actual   = 0;
    bool        pass() const {
      return expected == actual;
    }
  };

  struct CountReport {
    i64                       p = 0, q = 0;
    std::vector<CountLine>    lines;
    std::vector<Adjudication> adjudications;
    i64                       total_expected = 0, total_actual = 0;
    std::size_t               verify_failures   = 0;
    std::size_t               additive_failures = 0;
    std::string               verify_mode;
    bool                      all_pass() const;
    std::string               to_text() const;
    nlohmann::ordered_json    to_json() const;
  };

  // Closed-form counts: p+4, 8, (p²+4p+9)/2, (p²+5p)/2 + 14 or 13.
  i64 expected_section_count(Section s, i64 p);

  CountReport count_report(CatalogSummary const& summary);
  CountReport count_report(i64 p, i64 q, CatalogOptions const& opts = {});

  // One JSON per brace plus manifest.csv (family, params, additive_invariants,
  // mult_group_id, file).
  void write_catalog(std::filesystem::path const& dir, std::vector<CatalogEntry> const& entries,
                     Constants const& k);

  // Same layout, one entry at a time.
  class CatalogWriter {
   public:
    CatalogWriter(std::filesystem::path dir, Constants k);
    void        add(CatalogEntry const& e);
    std::size_t size() const noexcept {
      return count_;
    }

   private:
    std::filesystem::path dir_;
    Constants             k_;
    std::ofstream         csv_;
    std::size_t           count_ = 0;
  };

  // RFC 4180 quoting when the field holds a comma, quote or newline.
  std::string csv_field(std::string const& s);

}  // namespace braces::p2q2
