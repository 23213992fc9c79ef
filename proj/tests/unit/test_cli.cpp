#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "hylab/cli.hpp"
#include "hylab/common/errors.hpp"
#include "json.hpp"
#include "schema_validator.hpp"

using namespace hylab;
using namespace hylab::cli;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hylab_test_" + name)).string();
}

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "hylab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

// Report body without the timing fields.
std::string checks_body(const VerificationReport& r) {
  auto j = nlohmann::json::parse(report_json(r));
  j.erase("criterion_seconds");
  j.erase("wall_seconds");
  return j.dump();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("config parsing") {
    const RunConfig c = parse_config("# comment\nscatter.strength = 4\nthermo.q=3\nrun.seed=18446744073709551615\n");
    CHECK(c.strength == 4.0);
    CHECK(c.q == 3);
    CHECK(c.seed == 18446744073709551615ull);
    CHECK_THROWS_AS(parse_config("thermo.temperature=1\n"), Error);
    CHECK_THROWS_AS(parse_config("thermo.beta=fast\n"), Error);
    CHECK_THROWS_AS(parse_config("thermo.beta\n"), Error);
    const auto keys = config_keys();
    CHECK(std::find(keys.begin(), keys.end(), "exp.d") != keys.end());
    CHECK(std::find(keys.begin(), keys.end(), "lattice.kmax") != keys.end());
  }

  TEST_CASE("numbers round-trip") {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-300.0, 300.0);
    for (int i = 0; i < 2000; ++i) {
      const double x = std::pow(10.0, u(gen) / 10.0) * (i % 2 ? -1.0 : 1.0) * 1.2345678901234567;
      CHECK(std::stod(format_number(x)) == x);
    }
    CHECK(format_number(0.1) == "0.1");
  }

  TEST_CASE("csv round-trip with quoting") {
    Table t;
    t.header = {"name", "value", "count"};
    t.rows.push_back({std::string("a,b"), 1.0 / 3.0, std::int64_t{7}});
    t.rows.push_back({std::string("say \"hi\"\nthere"), -2.5e-300, std::int64_t{-1}});
    const Table back = parse_csv(to_csv(t));
    REQUIRE(back.rows.size() == 2);
    CHECK(back.header == t.header);
    CHECK(std::get<std::string>(back.rows[0][0]) == "a,b");
    CHECK(std::get<std::string>(back.rows[1][0]) == "say \"hi\"\nthere");
    CHECK(std::stod(std::get<std::string>(back.rows[0][1])) == 1.0 / 3.0);
    CHECK(std::stod(std::get<std::string>(back.rows[1][1])) == -2.5e-300);
  }

  TEST_CASE("empty table gives a header-only csv") {
    Table t;
    t.header = {"x", "y"};
    CHECK(to_csv(t) == "x,y\n");
  }

  TEST_CASE("json keeps column order") {
    Table t;
    t.header = {"zeta", "alpha"};
    t.rows.push_back({1.0, 2.0});
    const std::string s = to_json(t);
    CHECK(s.find("zeta") < s.find("alpha"));
  }

  TEST_CASE("unwritable path is an io error") {
    Table t;
    t.header = {"x"};
    try {
      emit(t, Format::csv, "/nonexistent-dir/x.csv");
      FAIL("expected an exception");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::IoError);
    }
  }

  TEST_CASE("suite is deterministic and matches the schema") {
    const RunConfig cfg;
    const auto a = run_suite(cfg, {"c2", "5", "c4"});
    const auto b = run_suite(cfg, {"c2", "5", "c4"});
    CHECK(checks_body(a) == checks_body(b));
    CHECK(a.all_pass());
    CHECK(a.criterion_seconds.size() == 3);

    const auto schema = nlohmann::json::parse(slurp(std::string(HYLAB_SOURCE_DIR) + "/schema/report.schema.json"));
    std::vector<std::string> errors;
    schema_check::validate(nlohmann::json::parse(report_json(a)), schema, "", errors);
    CHECK(errors.empty());

    auto broken = nlohmann::json::parse(report_json(a));
    broken["checks"][0]["semantics"] = "approximately";
    broken["extra"] = 1;
    errors.clear();
    schema_check::validate(broken, schema, "", errors);
    CHECK(errors.size() == 2);
  }

  TEST_CASE("fock filter passes on the default config") {
    const auto r = run_suite(RunConfig{}, {"fock"});
    CHECK(r.all_pass());
    CHECK(r.criterion_seconds.size() == 3);
  }

  TEST_CASE("module errors become failed checks") {
    RunConfig cfg;
    cfg.fock_modes = 7;  // not a multiple of q
    const auto r = run_suite(cfg, {"c7", "c2"});
    CHECK_FALSE(r.criterion_pass(7));
    CHECK(r.criterion_pass(2));
    CHECK(r.checks.front().check_id == "c2.kinetic_coefficient");
    CHECK(r.checks.back().check_id == "c7.error");
  }

  TEST_CASE("command line exit codes") {
    const std::string out = temp_path("fg.json");
    CHECK(run({"--out", out, "free-gas", "--beta", "2", "--mu", "0.5", "--q", "2"}) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j.contains("P0"));
    CHECK(j.contains("mu_tilde"));
    CHECK(run({"free-gas", "--nonsense"}) == 2);
    CHECK(run({"--set", "thermo.nonsense=1", "free-gas"}) == 2);
    CHECK(run({"--out", temp_path("lat.csv"), "lattice", "--L", "5000", "--kmax", "8"}) == 3);
    CHECK(run({"--out", temp_path("v.json"), "verify", "--filter", "c5"}) == 0);
    std::remove(out.c_str());
  }

  TEST_CASE("scatter sweep writes the documented columns") {
    const std::string out = temp_path("sc.csv");
    REQUIRE(run({"--out", out, "scatter", "--sweep", "10:20:3"}) == 0);
    const Table t = parse_csv(slurp(out));
    CHECK(t.header == std::vector<std::string>{"ellL", "lambda", "a0", "residual", "int_vf", "int_w"});
    CHECK(t.rows.size() == 3);
    std::remove(out.c_str());
  }
}
