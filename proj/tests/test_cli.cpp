#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using bohr::cli::main_with_args;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Outcome outcome;
  outcome.code = main_with_args(args, out, err);
  outcome.out = out.str();
  outcome.err = err.str();
  return outcome;
}

// Restores the environment variable on scope exit.
class EnvGuard {
 public:
  explicit EnvGuard(const char* value) {
    if (const char* old = std::getenv(bohr::cli::kTolEnvVar)) previous_ = old;
    if (value) {
      ::setenv(bohr::cli::kTolEnvVar, value, 1);
    } else {
      ::unsetenv(bohr::cli::kTolEnvVar);
    }
  }
  ~EnvGuard() {
    if (previous_.empty()) {
      ::unsetenv(bohr::cli::kTolEnvVar);
    } else {
      ::setenv(bohr::cli::kTolEnvVar, previous_.c_str(), 1);
    }
  }

 private:
  std::string previous_;
};

}  // namespace

TEST_CASE("radius json report") {
  EnvGuard env(nullptr);
  const auto result = invoke({"radius", "--class", "ph0", "--family", "poly:1", "--M", "0.431"});
  REQUIRE(result.code == 0);
  const auto doc = nlohmann::json::parse(result.out);
  CHECK(doc["schema"] == 1);
  CHECK(doc["command"] == "radius");
  CHECK(std::abs(doc["root"].get<double>() - 0.443) <= 0.002);
  CHECK(doc["monotone_certificate"] == true);
  CHECK(doc["sign_changes"] == 1);
}

TEST_CASE("reruns are byte identical") {
  EnvGuard env(nullptr);
  const std::vector<std::vector<std::string>> commands = {
      {"radius", "--class", "wh0", "--alpha", "0.5"},
      {"table", "--id", "2", "--format", "csv"},
      {"verify", "--claim", "thm22", "--grid-a", "20", "--grid-r", "20"},
      {"specfun", "--fn", "hyp2f1", "--a", "3", "--b", "3", "--c", "4", "--z", "0.25"},
  };
  for (const auto& args : commands) {
    CAPTURE(args.front());
    const auto first = invoke(args);
    const auto second = invoke(args);
    CHECK(first.out == second.out);
    CHECK(first.code == second.code);
  }
}

TEST_CASE("table csv") {
  EnvGuard env(nullptr);
  const auto result = invoke({"table", "--id", "1", "--format", "csv"});
  CHECK(result.code == 0);
  std::istringstream lines(result.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "M,weight,root,residual,paper_value,abs_diff,flag");
  int rows = 0;
  int mismatches = 0;
  for (std::string line; std::getline(lines, line);) {
    ++rows;
    if (line.ends_with(",mismatch")) ++mismatches;
  }
  CHECK(rows == 27);
  CHECK(mismatches == 1);

  // The second table has mismatching cells, which is not a failure of the run.
  CHECK(invoke({"table", "--id", "2", "--format", "csv"}).code == 0);
}

TEST_CASE("exit codes") {
  EnvGuard env(nullptr);
  CHECK(invoke({"verify", "--claim", "thm22", "--grid-a", "10", "--grid-r", "10"}).code == 0);
  CHECK(invoke({"sharpness", "--epsilon", "0.01"}).code == 0);
  CHECK(invoke({"sharpness", "--epsilon", "0"}).code == 2);
  // Inadmissible M is a domain error, reported with exit code 1.
  const auto inadmissible = invoke({"radius", "--class", "ph0", "--M", "2"});
  CHECK(inadmissible.code == 1);
  CHECK_FALSE(inadmissible.err.empty());
  CHECK(invoke({"radius", "--class", "nope"}).code == 1);
  CHECK(invoke({"radius", "--family", "gauss:1"}).code == 1);
  CHECK(invoke({"table", "--id", "3"}).code == 1);
  CHECK(invoke({"radius", "--format", "xml"}).code == 1);
  CHECK(invoke({}).code == 1);
}

TEST_CASE("tolerance validation and environment override") {
  SUBCASE("flag") {
    EnvGuard env(nullptr);
    CHECK(invoke({"radius", "--tol", "0"}).code == 1);
    CHECK(invoke({"radius", "--tol", "1e-2"}).code == 1);
    CHECK(invoke({"radius", "--tol", "abc"}).code == 1);
    CHECK(invoke({"radius", "--tol", "1e-10"}).code == 0);
  }
  SUBCASE("valid environment value") {
    EnvGuard env("1e-9");
    const auto result = invoke({"verify", "--claim", "thm22", "--grid-a", "5", "--grid-r", "5"});
    CHECK(result.code == 0);
    CHECK(nlohmann::json::parse(result.out)["tolerance"] == 1e-9);
    // An explicit flag wins over the environment.
    const auto flagged = invoke({"verify", "--claim", "thm22", "--grid-a", "5", "--grid-r", "5", "--tol", "1e-8"});
    CHECK(nlohmann::json::parse(flagged.out)["tolerance"] == 1e-8);
  }
  SUBCASE("invalid environment value") {
    EnvGuard env("-1");
    CHECK(invoke({"radius"}).code == 1);
  }
}

TEST_CASE("output file") {
  EnvGuard env(nullptr);
  const auto path = std::filesystem::temp_directory_path() / "bohr_cli_output_test.json";
  std::filesystem::remove(path);
  const auto result = invoke({"radius", "--class", "wh0", "--alpha", "0", "--output", path.string()});
  CHECK(result.code == 0);
  CHECK(result.out.empty());
  std::ifstream in(path);
  REQUIRE(in);
  const auto doc = nlohmann::json::parse(in);
  CHECK(std::abs(doc["root"].get<double>() - 0.285194) < 1e-5);
  std::filesystem::remove(path);
}

TEST_CASE("classical and special function subcommands") {
  EnvGuard env(nullptr);
  auto root_of = [](const std::vector<std::string>& args) {
    const auto result = invoke(args);
    REQUIRE(result.code == 0);
    return nlohmann::json::parse(result.out)["root"].get<double>();
  };
  CHECK(std::abs(root_of({"radius", "--class", "classical", "--kind", "rogosinski", "--N", "1"}) - 1.0 / 3) < 1e-12);
  CHECK(std::abs(root_of({"radius", "--class", "classical", "--kind", "rogosinski-doubled", "--N", "1"}) -
                 (std::sqrt(5.0) - 2)) < 1e-12);
  CHECK(std::abs(root_of({"radius", "--class", "classical", "--kind", "generalized", "--p", "2"}) - 0.5) < 1e-12);

  const auto digamma = invoke({"specfun", "--fn", "digamma", "--x", "1"});
  REQUIRE(digamma.code == 0);
  CHECK(std::abs(nlohmann::json::parse(digamma.out)["value"].get<double>() + 0.5772156649015329) < 1e-14);
  const auto lerch = invoke({"specfun", "--fn", "lerch", "--z", "0.5", "--a", "3", "--format", "csv"});
  REQUIRE(lerch.code == 0);
  CHECK(lerch.out.starts_with("function,value,tail_bound,terms_used\nlerch,0.54517744447"));
  CHECK(invoke({"specfun", "--fn", "lerch", "--z", "1.5", "--a", "3"}).code == 1);
}
