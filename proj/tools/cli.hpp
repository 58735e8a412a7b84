#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bohr::cli {

enum class Command { Radius, Table, Verify, Sharpness, Specfun };
enum class Format { Csv, Json };

inline constexpr double kDefaultTol = 1e-12;
inline constexpr double kMaxTol = 1e-3;
/// Overrides the default --tol when set.
inline constexpr const char* kTolEnvVar = "BOHR_TOL";

struct RunConfig {
  Command command = Command::Radius;
  Format format = Format::Json;
  std::optional<std::string> output_path;
  double tol = kDefaultTol;

  // radius / verify
  std::string model_class = "ph0";  ///< ph0, wh0, moebius or classical
  std::string family = "power";
  double M = 0.5;
  double alpha = 0.0;
  std::optional<double> a;
  std::optional<double> r;

  // classical radii
  std::string classical_kind = "rogosinski";
  int N = 1;
  double p = 2.0;
  double b = 1.0;
  double c = 2.0;

  // table
  int table_id = 1;

  // verify / sharpness
  std::string claim = "thm22";
  int grid_a = 99;
  int grid_r = 100;
  double epsilon = 0.01;

  // specfun
  std::string function = "digamma";
  double x = 1.0;
  double z = 0.0;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailed = 2;

/// Executes a parsed configuration, writing the report to `out` (or to the
/// configured file) and diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs. Usage errors print help to `err` and return 1.
int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bohr::cli
