#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "braces/arith.hpp"
#include "braces/classify.hpp"
#include "braces/errors.hpp"
#include "braces/gl2.hpp"
#include "braces/json_io.hpp"
#include "braces/morphism.hpp"
#include "braces/oracle.hpp"
#include "braces/p2q2.hpp"
#include "braces/parallel.hpp"
#include "braces/ybe.hpp"
#include "report.hpp"

namespace braces::cli {

  namespace fs = std::filesystem;

  namespace {

    constexpr int kOk      = 0;
    constexpr int kFailed  = 1;
    constexpr int kUsage   = 2;
    constexpr std::size_t kDefaultSamples = 1'000'000;

    std::vector<fs::path> json_files(fs::path const& dir) {
      if (!fs::is_directory(dir)) {
        throw FormatError("not a directory: " + dir.string());
      }
      std::vector<fs::path> out;
      for (auto const& e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".json") {
          out.push_back(e.path());
        }
      }
      std::sort(out.begin(), out.end());
      return out;
    }

    std::vector<BraceTable> read_dir(fs::path const& dir, std::vector<fs::path>& files) {
      files = json_files(dir);
      std::vector<BraceTable> out;
      for (auto const& f : files) {
        out.push_back(read_brace_file(f));
      }
      return out;
    }

    std::string pad3(std::size_t i) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%03zu", i);
      return buf;
    }

    // ------------------------------------------------------------ verify

    int cmd_verify(std::string const& path, bool paranoid, std::size_t sample, std::ostream& out,
                   std::ostream& err) {
      BraceTable b = [&] {
        try {
          return read_brace_file(path);
        } catch (IdentityViolation const& e) {
          err << path << ": identity violated at (" << e.a << ", " << e.b << "): " << e.what()
              << "\n";
          throw;
        }
      }();
      VerifyReport r;
      if (sample == 0 && b.size() <= kVerifyBound) {
        VerifyOptions o;
        o.paranoid = paranoid;
        r          = verify_brace(b, o);
      } else {
        r = verify_brace_sampled(b, sample ? sample : kDefaultSamples);
      }
      out << path << ": " << r.describe() << "\n";
      return r.is_brace ? kOk : kFailed;
    }

    // ----------------------------------------------------------- catalog

    int cmd_catalog(std::int64_t p, std::int64_t q, std::string const& dir, std::size_t sample,
                    std::ostream& out) {
      auto const           k = p2q2::constants(p, q);
      p2q2::CatalogOptions o;
      if (sample) {
        o.exhaustive_verify = false;
        o.samples           = sample;
      }
      p2q2::CatalogWriter w(dir, k);
      auto summary = p2q2::stream_catalog(p, q, o, [&](p2q2::CatalogEntry&& e) { w.add(e); });
      auto report  = p2q2::count_report(summary);
      out << "wrote " << w.size() << " braces to " << dir << "\n" << report.to_text();
      return report.verify_failures == 0 && report.additive_failures == 0 ? kOk : kFailed;
    }

    // ---------------------------------------------------------- classify

    bool is_prime_square(std::size_t n, std::int64_t& r) {
      for (std::int64_t d = 2; d * d <= static_cast<std::int64_t>(n); ++d) {
        if (static_cast<std::size_t>(d * d) == n) {
          r = d;
          return arith::is_prime(d);
        }
      }
      return false;
    }

    int cmd_classify(std::string const& m_dir, std::string const& n_dir, std::string const& out_dir,
                     bool assume, bool certify, std::size_t jobs, std::ostream& out,
                     std::ostream& err) {
      std::vector<fs::path> mf, nf;
      auto                  cm = read_dir(m_dir, mf);
      auto                  cn = read_dir(n_dir, nf);
      if (cm.empty() || cn.empty()) {
        err << "error: empty input directory\n";
        return kUsage;
      }
      std::size_t const m = cm.front().size(), n = cn.front().size();
      if (std::gcd(m, n) != 1) {
        err << "error: gcd(" << m << ", " << n << ") ≠ 1\n";
        return kUsage;
      }
      std::int64_t q = 0, p = 0;
      bool         known = is_prime_square(m, q) && is_prime_square(n, p) && check_hypothesis(p, q).ok;
      if (!known && !assume) {
        err << "error: order " << m * n << " is not p²q² under the hypothesis; pass "
            << "--assume-hypothesis if every group of order " << m * n
            << " has a normal subgroup of order " << m << "\n";
        return kUsage;
      }
      ClassifyOptions o;
      o.normal_subgroup_hypothesis = true;
      o.certify                    = certify;
      o.jobs                       = jobs;
      auto result                  = classify_mn(cm, cn, o);

      fs::create_directories(out_dir);
      std::ofstream csv(fs::path(out_dir) / "manifest.csv");
      csv << "file,b1,b2,tau,mult_fingerprint\n";
      for (std::size_t i = 0; i < result.size(); ++i) {
        auto const& c    = result[i];
        std::string name = "brace_" + pad3(i) + ".json";
        write_brace_file(fs::path(out_dir) / name, c.brace);
        std::string tau;
        for (auto t : c.tau.representative.images) {
          tau += (tau.empty() ? "" : " ") + std::to_string(t);
        }
        csv << name << "," << p2q2::csv_field(mf[c.m_index].filename().string()) << ","
            << p2q2::csv_field(nf[c.n_index].filename().string()) << "," << tau << ","
            << p2q2::csv_field(group_fingerprint(c.brace.mult_group()).describe()) << "\n";
      }
      out << result.size() << " braces of size " << m * n << " written to " << out_dir << "\n";
      return kOk;
    }

    // --------------------------------------------------------------- iso

    int cmd_iso(std::string const& a, std::string const& b, std::ostream& out) {
      auto       x = read_brace_file(a);
      auto       y = read_brace_file(b);
      IsoOptions o;
      o.size_bound = std::max(x.size(), y.size());
      auto f       = brace_isomorphic(x, y, o);
      if (!f) {
        out << "not isomorphic\n";
        return kFailed;
      }
      out << "isomorphic\n";
      return kOk;
    }

    // ------------------------------------------------------------ oracle

    std::vector<std::uint64_t> parse_factors(std::string const& s) {
      std::vector<std::uint64_t> out;
      std::stringstream          ss(s);
      std::string                tok;
      while (std::getline(ss, tok, ',')) {
        try {
          std::size_t used = 0;
          auto        v    = std::stoull(tok, &used);
          if (used != tok.size() || v < 2) {
            throw std::invalid_argument(tok);
          }
          out.push_back(v);
        } catch (std::exception const&) {
          throw PreconditionError("bad factor list: " + s);
        }
      }
      if (out.empty()) {
        throw PreconditionError("bad factor list: " + s);
      }
      return out;
    }

    int cmd_oracle(std::size_t order, std::string const& factors, std::string const& match_dir,
                   std::string const& out_dir, std::ostream& out) {
      std::vector<FiniteAbelianGroup> groups;
      if (!factors.empty()) {
        groups.push_back(make_group(parse_factors(factors)));
      } else if (order >= 1) {
        groups = abelian_groups_of_order(order);
      } else {
        throw PreconditionError("oracle: give --order or --factors");
      }
      std::vector<BraceTable> all;
      for (auto const& g : groups) {
        auto found = braces_on(g);
        out << g.describe() << ": " << found.size() << " braces\n";
        for (auto& b : found) {
          all.push_back(std::move(b));
        }
      }
      if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        for (std::size_t i = 0; i < all.size(); ++i) {
          write_brace_file(fs::path(out_dir) / ("oracle_" + pad3(i) + ".json"), all[i]);
        }
      }
      if (!match_dir.empty()) {
        std::vector<fs::path> files;
        auto                  cat = read_dir(match_dir, files);
        auto                  m   = oracle_match(all, cat);
        out << "match: " << m.describe() << "\n";
        return m.perfect() ? kOk : kFailed;
      }
      return kOk;
    }

    // --------------------------------------------------------------- gl2

    int cmd_gl2(std::int64_t p, std::int64_t q, std::ostream& out) {
      require_hypothesis(p, q);
      auto classes = gl2_order_p_subgroups(p, q);
      out << "order-" << p << " subgroups of GL(2," << q << "): " << classes.size()
          << " classes\n";
      for (auto const& c : classes) {
        out << "  " << c.label << "  " << describe(c.generator) << "\n";
      }
      auto r = verify_gl2_lemma(p, q);
      out << "brute force: " << r.detail << "\n";
      return r.match ? kOk : kFailed;
    }

    // --------------------------------------------------------------- ybe

    int cmd_ybe(std::string const& path, std::size_t sample, std::string const& out_file,
                std::size_t jobs, std::ostream& out) {
      auto b   = read_brace_file(path);
      auto s   = brace_to_ybe(b);
      bool inv = is_involutive(s), nd = is_nondegenerate(s);
      auto br  = sample ? verify_braid_sampled(s, sample) : verify_braid(s, jobs);
      out << "involutive: " << (inv ? "yes" : "no") << "\n"
          << "non-degenerate: " << (nd ? "yes" : "no") << "\n"
          << "braid: " << br.describe() << "\n";
      if (!out_file.empty()) {
        std::ofstream f(out_file);
        if (!f) {
          throw FormatError("cannot write " + out_file);
        }
        f << ybe_to_json(s).dump() << "\n";
      }
      return inv && nd && br.ok ? kOk : kFailed;
    }

  }  // namespace

  int run_cli(int argc, char const* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite left braces of size p²q²", "braces"};
    app.require_subcommand(1);

    std::string path, path2, dir, m_dir, n_dir, factors, match_dir;
    bool        paranoid = false, assume = false, no_certify = false, json = false;
    std::size_t sample = 0, jobs = default_jobs(), order = 0;
    std::int64_t p = 0, q = 0;

    auto* verify = app.add_subcommand("verify", "check the brace axioms of a JSON brace");
    verify->add_option("path", path, "brace file")->required();
    verify->add_flag("--paranoid", paranoid, "also run the raw triple loops");
    verify->add_option("--sample", sample, "random triples instead of exhaustive");

    auto* catalog = app.add_subcommand("catalog", "write the p²q² catalog");
    catalog->add_option("--p", p)->required();
    catalog->add_option("--q", q)->required();
    catalog->add_option("--out", dir)->required();
    catalog->add_option("--sample", sample, "sampled verification");
    catalog->add_option("--jobs", jobs);

    auto* classify = app.add_subcommand("classify", "semidirect products of two catalogs");
    classify->add_option("m_dir", m_dir)->required();
    classify->add_option("n_dir", n_dir)->required();
    classify->add_option("out_dir", dir)->required();
    classify->add_flag("--assume-hypothesis", assume,
                       "every group of order mn has a normal subgroup of order m");
    classify->add_flag("--no-certify", no_certify, "skip the pairwise isomorphism check");
    classify->add_option("--jobs", jobs);

    auto* iso = app.add_subcommand("iso", "brace isomorphism test");
    iso->add_option("a", path)->required();
    iso->add_option("b", path2)->required();

    auto* oracle = app.add_subcommand("oracle", "braces via regular subgroups of the holomorph");
    auto* o_order = oracle->add_option("--order", order, "all abelian groups of this order");
    oracle->add_option("--factors", factors, "one group, e.g. 3,3")->excludes(o_order);
    oracle->add_option("--match", match_dir, "directory of braces to match against");
    oracle->add_option("--out", dir, "write representatives here");

    auto* gl2 = app.add_subcommand("gl2", "order-p subgroups of GL(2,q)");
    gl2->add_option("--p", p)->required();
    gl2->add_option("--q", q)->required();

    auto* ybe = app.add_subcommand("ybe", "Yang-Baxter solution of a brace");
    ybe->add_option("path", path)->required();
    ybe->add_option("--sample", sample);
    ybe->add_option("--out", dir, "r-table JSON");
    ybe->add_option("--jobs", jobs);

    auto* report = app.add_subcommand("report", "full check matrix for (p, q)");
    report->add_option("--p", p)->required();
    report->add_option("--q", q)->required();
    report->add_option("--jobs", jobs);
    report->add_option("--sample", sample);
    report->add_flag("--json", json);

    try {
      app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
      int code = app.exit(e, out, err);
      return code == 0 ? kOk : kUsage;
    }

    try {
      if (verify->parsed()) {
        try {
          return cmd_verify(path, paranoid, sample, out, err);
        } catch (IdentityViolation const&) {
          return kFailed;
        }
      }
      if (catalog->parsed()) {
        return cmd_catalog(p, q, dir, sample, out);
      }
      if (classify->parsed()) {
        return cmd_classify(m_dir, n_dir, dir, assume, !no_certify, jobs, out, err);
      }
      if (iso->parsed()) {
        return cmd_iso(path, path2, out);
      }
      if (oracle->parsed()) {
        return cmd_oracle(order, factors, match_dir, dir, out);
      }
      if (gl2->parsed()) {
        return cmd_gl2(p, q, out);
      }
      if (ybe->parsed()) {
        return cmd_ybe(path, sample, dir, jobs, out);
      }
      if (report->parsed()) {
        ReportOptions o;
        o.jobs    = jobs;
        o.samples = sample;
        auto r    = run_report(p, q, o, &err);
        if (json) {
          out << r.to_json().dump(2) << "\n";
        } else {
          out << r.to_text();
        }
        return r.all_pass() ? kOk : kFailed;
      }
    } catch (PreconditionError const& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    } catch (FormatError const& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    } catch (ResourceLimit const& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    } catch (std::invalid_argument const& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    } catch (std::exception const& e) {
      err << "failure: " << e.what() << "\n";
      return kFailed;
    }
    return kUsage;
  }

}  // namespace braces::cli
