#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "braces/json_io.hpp"
#include "braces/seed.hpp"
#include "cli.hpp"

using namespace braces;
namespace fs = std::filesystem;

namespace {

  struct Run {
    int         code;
    std::string out, err;
  };

  Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "braces");
    std::vector<char const*> argv;
    for (auto const& a : args) {
      argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
  }

  fs::path scratch(std::string const& name) {
    auto p = fs::temp_directory_path() / ("braces_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }

  std::size_t lines_in(fs::path const& f) {
    std::ifstream in(f);
    std::string   s;
    std::size_t   n = 0;
    while (std::getline(in, s)) {
      ++n;
    }
    return n;
  }

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({"gl2", "--p", "3"}).code == 2);
}

TEST_CASE("verify") {
  auto dir = scratch("verify");
  write_brace_file(dir / "z9.json", make_trivial_brace(make_group({9})));
  CHECK(run({"verify", (dir / "z9.json").string()}).code == 0);
  CHECK(run({"verify", "--paranoid", (dir / "z9.json").string()}).code == 0);
  CHECK(run({"verify", "--sample", "1000", (dir / "z9.json").string()}).code == 0);

  auto j       = brace_to_json(make_trivial_brace(make_group({9})));
  j["mul"][3][4] = 0;
  std::ofstream(dir / "bad.json") << j.dump();
  auto r = run({"verify", (dir / "bad.json").string()});
  CHECK(r.code == 1);
  CHECK(r.out.find("at (") != std::string::npos);

  j              = brace_to_json(make_trivial_brace(make_group({9})));
  j["mul"][0][4] = 5;
  std::ofstream(dir / "id.json") << j.dump();
  CHECK(run({"verify", (dir / "id.json").string()}).code == 1);

  std::ofstream(dir / "junk.json") << "{\"size\": 9, \"mul\": [";
  CHECK(run({"verify", (dir / "junk.json").string()}).code == 2);
  CHECK(run({"verify", (dir / "missing.json").string()}).code == 2);
}

TEST_CASE("iso and ybe") {
  auto dir   = scratch("iso");
  auto seeds = seed_braces(3);
  write_brace_file(dir / "a.json", seeds[1].brace);
  write_brace_file(dir / "b.json", seeds[0].brace);
  CHECK(run({"iso", (dir / "a.json").string(), (dir / "a.json").string()}).code == 0);
  CHECK(run({"iso", (dir / "a.json").string(), (dir / "b.json").string()}).code == 1);

  auto r = run({"ybe", (dir / "a.json").string(), "--out", (dir / "r.json").string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "r.json"));
  CHECK(run({"ybe", "--sample", "500", (dir / "a.json").string()}).code == 0);
}

TEST_CASE("gl2 and report preconditions") {
  auto r = run({"gl2", "--p", "3", "--q", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("diag(lam,lam^-1)") != std::string::npos);
  CHECK(run({"gl2", "--p", "3", "--q", "7"}).out == r.out);

  auto bad = run({"report", "--p", "3", "--q", "5"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("p ∤ q−1") != std::string::npos);
  CHECK(run({"catalog", "--p", "3", "--q", "5", "--out", scratch("nope").string()}).code == 2);
}

TEST_CASE("oracle") {
  auto dir   = scratch("oracle");
  auto seeds = seed_braces(3);
  fs::create_directories(dir / "ele");
  fs::create_directories(dir / "cyc");
  write_brace_file(dir / "ele" / "0.json", seeds[2].brace);
  write_brace_file(dir / "ele" / "1.json", seeds[3].brace);
  write_brace_file(dir / "cyc" / "0.json", seeds[0].brace);
  write_brace_file(dir / "cyc" / "1.json", seeds[1].brace);

  auto r = run({"oracle", "--order", "9", "--out", (dir / "out").string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "out" / "oracle_003.json"));
  CHECK(run({"oracle", "--factors", "3,3", "--match", (dir / "ele").string()}).code == 0);
  CHECK(run({"oracle", "--factors", "3,3", "--match", (dir / "cyc").string()}).code == 1);
  CHECK(run({"oracle", "--factors", "x"}).code == 2);
  CHECK(run({"oracle", "--factors", "11,11"}).code == 2);
  CHECK(run({"oracle"}).code == 2);
}

TEST_CASE("classify") {
  auto dir = scratch("classify");
  for (auto const* d : {"m", "n", "two", "three", "nine"}) {
    fs::create_directories(dir / d);
  }
  auto s7 = seed_braces(7);
  auto s3 = seed_braces(3);
  for (std::size_t i = 0; i < 4; ++i) {
    write_brace_file(dir / "m" / ("q" + std::to_string(i) + ".json"), s7[i].brace);
    write_brace_file(dir / "n" / ("p" + std::to_string(i) + ".json"), s3[i].brace);
  }
  write_brace_file(dir / "two" / "t.json", make_trivial_brace(make_group({2})));
  write_brace_file(dir / "three" / "t.json", make_trivial_brace(make_group({3})));
  write_brace_file(dir / "nine" / "t.json", make_trivial_brace(make_group({9})));

  auto r = run({"classify", (dir / "m").string(), (dir / "n").string(), (dir / "out").string(),
                "--no-certify"});
  CHECK(r.code == 0);
  CHECK(lines_in(dir / "out" / "manifest.csv") == 56);

  // order 6 is not p²q², so the caller has to vouch for the hypothesis
  CHECK(run({"classify", (dir / "two").string(), (dir / "three").string(),
             (dir / "o6").string()})
            .code
        == 2);
  CHECK(run({"classify", (dir / "two").string(), (dir / "three").string(), (dir / "o6").string(),
             "--assume-hypothesis"})
            .code
        == 0);
  CHECK(lines_in(dir / "o6" / "manifest.csv") == 2);

  CHECK(run({"classify", (dir / "nine").string(), (dir / "three").string(),
             (dir / "bad").string(), "--assume-hypothesis"})
            .code
        == 2);
}

TEST_CASE("catalog") {
  auto dir = scratch("catalog");
  auto r   = run({"catalog", "--p", "3", "--q", "7", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(lines_in(dir / "manifest.csv") == 56);
  std::ifstream in(dir / "manifest.csv");
  std::string   header;
  std::getline(in, header);
  CHECK(header == "family,params,additive_invariants,mult_group_id,file");
  auto b = read_brace_file(dir / "brace_054.json");
  CHECK(b.size() == 441);
  CHECK(b.meta()["family"] == "mulnn15");
}
