#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "injrad/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "injrad");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = injrad::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parse(const Outcome& o) { return nlohmann::json::parse(o.out); }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "injrad_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("radius report") {
  const auto o = run({"radius", "--q", "logpow:1,2", "--n", "3"});
  REQUIRE(o.code == 0);
  const auto j = parse(o);
  CHECK(j["schema"] == 1);
  CHECK(j["n"] == 3);
  CHECK(j["psi"] == "canonical");
  CHECK(j["divergence"]["verdict"] == "divergent");
  CHECK(j["delta"].get<double>() > 0.0);
  for (const char* key : {"params", "I_target", "method", "caveats", "witnesses", "ring_checks", "config"})
    CHECK(j.contains(key));
}

TEST_CASE("exit codes") {
  CHECK(run({"radius", "--q", "logpow:1,4", "--n", "3"}).code == injrad::cli::kNotApplicable);
  CHECK(run({"radius", "--q", "logpow:1,3", "--n", "3", "--method", "log_growth"}).code ==
        injrad::cli::kNotApplicable);
  CHECK(run({"radius", "--q", "nonsense", "--n", "3"}).code == injrad::cli::kUsage);
  CHECK(run({"radius", "--n", "3"}).code == injrad::cli::kUsage);
  CHECK(run({"radius", "--q", "const:1", "--n", "3", "--r-cap", "2"}).code == injrad::cli::kUsage);
  CHECK(run({"frobnicate"}).code == injrad::cli::kUsage);
  CHECK(run({"sharp", "--q", "const:1", "--n", "3", "--delta", "0.3"}).code == injrad::cli::kNotApplicable);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("not-applicable reports still carry a status") {
  const auto o = run({"radius", "--q", "logpow:1,4", "--n", "3"});
  const auto j = parse(o);
  CHECK(j["status"] == "not_applicable");
  CHECK(j["delta"] == 0.0);
  CHECK(j["log_delta"] == "-inf");
}

TEST_CASE("sharp report") {
  const auto o = run({"sharp", "--q", "logpow:1,4", "--n", "3", "--delta", "0.3"});
  REQUIRE(o.code == 0);
  const auto j = parse(o);
  REQUIRE(j["witnesses"].size() == 1);
  CHECK(j["witnesses"][0]["image_gap"].get<double>() < 1e-9);
  CHECK(j["witnesses"][0]["containment_radius"].get<double>() < 0.3);
  for (const auto& rc : j["ring_checks"]) CHECK(rc["passed"] == true);
}

TEST_CASE("csv output") {
  const auto k = run({"kor", "--a", "1,0,0", "--b=-1,0,0", "--r", "1", "--format", "csv"});
  REQUIRE(k.code == 0);
  CHECK(k.out.rfind("t,branch\n", 0) == 0);
  const auto v = run({"verify", "--map", "stretch:const:4", "--q", "const:4", "--n", "3", "--r1", "0.1",
                      "--r2", "0.5", "--format", "csv"});
  REQUIRE(v.code == 0);
  CHECK(v.out.rfind("r1,r2,lhs_modulus,rhs_bound,passed,slack\n", 0) == 0);
  CHECK(v.out.find(",true,") != std::string::npos);
}

TEST_CASE("kor report") {
  const auto o = run({"kor", "--a", "1,0,0", "--b=-1,0,0", "--r", "1"});
  REQUIRE(o.code == 0);
  const auto j = parse(o);
  CHECK(j["all_pass"] == true);
  CHECK(j["p"][0].get<double>() == doctest::Approx(-0.5));
}

TEST_CASE("probe family splitting") {
  const auto o = run({"probe", "--family", "stretch:const:4,winding:3,0.5", "--radii", "0.1,0.2", "--n", "3"});
  REQUIRE(o.code == 0);
  const auto j = parse(o);
  CHECK(j["family"].size() == 2);
  CHECK(j["table"].size() == 2);
}

TEST_CASE("output file and config file") {
  const auto out = scratch("report.json");
  std::filesystem::remove(out);
  const auto o = run({"radius", "--q", "const:1", "--n", "3", "--out", out.string()});
  REQUIRE(o.code == 0);
  CHECK(o.out.empty());
  REQUIRE(std::filesystem::exists(out));
  CHECK_FALSE(std::filesystem::exists(out.string() + ".tmp"));
  std::ifstream f(out);
  const auto j = nlohmann::json::parse(f);
  CHECK(j["n"] == 3);

  const auto cfg = scratch("config.json");
  {
    std::ofstream c(cfg);
    c << R"({"cap_constant": 0.5, "seed": 9})";
  }
  const auto a = run({"radius", "--q", "const:1", "--n", "3", "--config", cfg.string()});
  REQUIRE(a.code == 0);
  CHECK(parse(a)["params"]["cap_constant"] == 0.5);
  CHECK(parse(a)["config"]["seed"] == 9);

  setenv("INJRAD_CONFIG", cfg.string().c_str(), 1);
  const auto e = run({"radius", "--q", "const:1", "--n", "3"});
  unsetenv("INJRAD_CONFIG");
  CHECK(parse(e)["params"]["cap_constant"] == 0.5);

  {
    std::ofstream c(cfg);
    c << R"({"bogus": 1})";
  }
  CHECK(run({"radius", "--q", "const:1", "--n", "3", "--config", cfg.string()}).code == injrad::cli::kUsage);
  CHECK(run({"radius", "--q", "const:1", "--n", "3", "--config", "/nonexistent/c.json"}).code ==
        injrad::cli::kUsage);
}

TEST_CASE("repeated runs are byte identical") {
  const std::vector<std::string> args{"analyze", "--q", "powr:-0.5", "--n", "3", "--seed", "3"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> probe{"probe", "--family", "winding:3,0.4", "--radii", "0.1,0.3", "--n", "3"};
  CHECK(run(probe).out == run(probe).out);
}

TEST_CASE("binary exit status") {
  const std::string bin = INJRAD_BINARY;
  const auto sink = scratch("sink.txt").string();
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " > " + sink + " 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("radius --q const:1 --n 3") == 0);
  CHECK(status("radius --q logpow:1,4 --n 3") == 3);
  CHECK(status("radius --q oops --n 3") == 2);
}
