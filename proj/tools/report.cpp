#include "report.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include "braces/classify.hpp"
#include "braces/errors.hpp"
#include "braces/morphism.hpp"
#include "braces/oracle.hpp"
#include "braces/seed.hpp"
#include "braces/ybe.hpp"

namespace braces::cli {

  namespace {

    constexpr std::size_t kDefaultSamples = 1'000'000;

    Check make(std::string name, bool ok, std::string detail) {
      return Check{std::move(name), ok ? Status::Pass : Status::Fail, std::move(detail)};
    }

    Check skip(std::string name, std::string detail) {
      return Check{std::move(name), Status::Skip, std::move(detail)};
    }

    std::vector<BraceTable> seed_tables(std::int64_t p) {
      std::vector<BraceTable> out;
      for (auto& s : seed_braces(p)) {
        out.push_back(std::move(s.brace));
      }
      return out;
    }

    // braces_on each abelian group of order p² against the seeds.
    Check oracle_seeds(std::int64_t p) {
      std::string             name = "oracle-seeds-" + std::to_string(p * p);
      std::vector<BraceTable> seeds, oracle;
      try {
        seeds = seed_tables(p);
        for (auto const& g : abelian_groups_of_order(static_cast<std::size_t>(p * p))) {
          auto found = braces_on(g);
          oracle.insert(oracle.end(), std::make_move_iterator(found.begin()),
                        std::make_move_iterator(found.end()));
        }
      } catch (ResourceLimit const& e) {
        return skip(name, e.what());
      } catch (std::invalid_argument const& e) {
        return skip(name, e.what());
      }
      auto m = oracle_match(oracle, seeds);
      return make(name, m.perfect() && oracle.size() == 4, std::to_string(oracle.size())
                                                               + " oracle classes; " + m.describe());
    }

  }  // namespace

  char const* status_name(Status s) {
    switch (s) {
      case Status::Pass: return "PASS";
      case Status::Fail: return "FAIL";
      case Status::Skip: return "SKIP";
    }
    return "?";
  }

  bool Report::all_pass() const {
    for (auto const& c : checks) {
      if (c.status == Status::Fail) {
        return false;
      }
    }
    return true;
  }

  std::string Report::to_text() const {
    std::ostringstream os;
    os << "report p=" << p << " q=" << q << "\n";
    for (auto const& c : checks) {
      os << "  " << std::left << std::setw(22) << c.name << status_name(c.status) << "  "
         << c.detail << "\n";
    }
    os << "\n" << counts.to_text();
    os << "\nresult: " << (all_pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
  }

  nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json j;
    j["p"]      = p;
    j["q"]      = q;
    j["checks"] = nlohmann::ordered_json::array();
    for (auto const& c : checks) {
      j["checks"].push_back({{"name", c.name}, {"status", status_name(c.status)}, {"detail", c.detail}});
    }
    j["counts"] = counts.to_json();
    j["pass"]   = all_pass();
    return j;
  }

  Report run_report(std::int64_t p, std::int64_t q, ReportOptions const& opts, std::ostream* log) {
    auto note = [&](std::string const& s) {
      if (log) {
        *log << s << std::endl;
      }
    };
    require_hypothesis(p, q);
    Report r;
    r.p = p;
    r.q = q;
    r.checks.push_back(make("hypothesis", true, "p=" + std::to_string(p) + " q=" + std::to_string(q)));

    std::size_t const n     = static_cast<std::size_t>(p * p * q * q);
    bool const        small = n <= kVerifyBound && opts.samples == 0;
    std::size_t const samples = opts.samples ? opts.samples : kDefaultSamples;

    p2q2::CatalogOptions copts;
    copts.exhaustive_verify = small;
    copts.samples           = samples;

    // YBE checks run per entry so large catalogs are never held in memory.
    std::vector<BraceTable> kept;
    std::size_t             ybe_bad = 0, ybe_count = 0;
    std::string             ybe_first;
    std::size_t             lambda_bad = 0;
    std::string             lambda_first;
    note("building catalog");
    auto summary = p2q2::stream_catalog(p, q, copts, [&](p2q2::CatalogEntry&& e) {
      auto const  s  = brace_to_ybe(e.brace);
      BraidReport br = small ? verify_braid(s, opts.jobs) : verify_braid_sampled(s, samples);
      bool ok = is_involutive(s) && is_nondegenerate(s) && br.ok;
      ++ybe_count;
      if (!ok && ybe_bad++ == 0) {
        ybe_first = e.spec.name() + ": " + br.describe();
      }
      if (small) {
        auto lr = check_lambda_identities(e.brace);
        if (!lr.is_brace && lambda_bad++ == 0) {
          lambda_first = e.spec.name() + ": " + lr.describe();
        }
        kept.push_back(std::move(e.brace));
      }
    });
    r.counts = p2q2::count_report(summary);
    auto const& c = r.counts;

    std::size_t const total = summary.specs.size();
    r.checks.push_back(make("verify", c.verify_failures == 0,
                            std::to_string(total - c.verify_failures) + "/" + std::to_string(total)
                                + " braces, " + summary.verify_mode));
    r.checks.push_back(make("additive-groups", c.additive_failures == 0,
                            std::to_string(c.additive_failures) + " mismatches"));
    {
      std::string bad;
      for (auto const& l : c.lines) {
        if (!l.pass()) {
          bad += (bad.empty() ? "" : "; ") + p2q2::section_name(l.section) + " " + l.label
                 + (l.item.empty() ? "" : " (" + l.item + ")") + " expected "
                 + std::to_string(l.expected) + " got " + std::to_string(l.actual);
        }
      }
      r.checks.push_back(make("counts", c.all_pass(),
                              "total " + std::to_string(c.total_actual) + "/"
                                  + std::to_string(c.total_expected)
                                  + (bad.empty() ? "" : "; " + bad)));
    }
    {
      std::size_t printed = 0;
      for (auto const& a : c.adjudications) {
        printed += a.chosen == p2q2::LawVariant::Printed;
      }
      r.checks.push_back(make("adjudication", !c.adjudications.empty(),
                              std::to_string(c.adjudications.size()) + " recorded, "
                                  + std::to_string(printed) + " printed kept"));
    }
    if (small) {
      r.checks.push_back(make("lambda-identities", lambda_bad == 0,
                              lambda_bad ? lambda_first : std::to_string(kept.size()) + " braces"));
    } else {
      r.checks.push_back(skip("lambda-identities", "size " + std::to_string(n) + " > "
                                                       + std::to_string(kVerifyBound)));
    }
    r.checks.push_back(make("ybe", ybe_bad == 0,
                            std::to_string(ybe_count - ybe_bad) + "/" + std::to_string(ybe_count)
                                + (small ? " exhaustive" : " sampled(" + std::to_string(samples) + ")")
                                + (ybe_first.empty() ? "" : "; " + ybe_first)));

    if (small) {
      note("pairwise non-isomorphism");
      std::size_t iso_pairs = 0;
      std::string first;
      IsoOptions  io;
      io.size_bound = n;
      for (std::size_t i = 0; i < kept.size(); ++i) {
        for (std::size_t j = i + 1; j < kept.size(); ++j) {
          if (brace_isomorphic(kept[i], kept[j], io) && iso_pairs++ == 0) {
            first = "first pair " + std::to_string(i) + "," + std::to_string(j);
          }
        }
      }
      r.checks.push_back(make("non-isomorphism", iso_pairs == 0,
                              std::to_string(iso_pairs) + " isomorphic pairs"
                                  + (first.empty() ? "" : "; " + first)));

      note("semidirect engine");
      ClassifyOptions eo;
      eo.normal_subgroup_hypothesis = true;  // holds under the (p, q) hypothesis
      eo.certify                    = false;
      eo.jobs                       = opts.jobs;
      auto engine = classify_mn(seed_tables(q), seed_tables(p), eo);
      std::vector<BraceTable> eb;
      std::size_t             coprime_bad = 0;
      for (auto& e : engine) {
        coprime_bad += check_coprime_product_identity(e.brace, *e.layout).has_value();
        eb.push_back(std::move(e.brace));
      }
      auto m = oracle_match(eb, kept);
      r.checks.push_back(make("engine-match", m.perfect() && eb.size() == kept.size(),
                              std::to_string(eb.size()) + " engine braces; " + m.describe()));
      r.checks.push_back(make("coprime-identity", coprime_bad == 0,
                              std::to_string(coprime_bad) + " failures"));
    } else {
      std::string why = "size " + std::to_string(n) + " > " + std::to_string(kVerifyBound);
      r.checks.push_back(skip("non-isomorphism", why));
      r.checks.push_back(skip("engine-match", why));
      r.checks.push_back(skip("coprime-identity", why));
    }

    note("oracle on seeds");
    r.checks.push_back(oracle_seeds(p));
    r.checks.push_back(oracle_seeds(q));
    return r;
  }

}  // namespace braces::cli
