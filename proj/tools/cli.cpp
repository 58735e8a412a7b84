#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "bohr/errors.hpp"
#include "bohr/function_classes.hpp"
#include "bohr/phi_family.hpp"
#include "bohr/radius_solver.hpp"
#include "bohr/specfun.hpp"
#include "bohr/verifier.hpp"

namespace bohr::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

// Non-finite values have no JSON literal; they are written as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// Shortest round-trip representation.
std::string csv_number(double v) { return fmt::format("{}", v); }

struct Output {
  int status = kExitOk;
  std::string text;
};

json header(const char* command) {
  json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

Output run_radius(const RunConfig& cfg) {
  json j = header("radius");
  j["class"] = cfg.model_class;

  if (cfg.model_class == "moebius") {
    const double radius = sharp_radius();
    const double lambda = sharp_lambda();
    j["root"] = radius;
    j["lambda"] = lambda;
    std::string csv = "class,a,root,lambda,functional,majorant\n";
    if (cfg.a) {
      const double L1 = eval_L1(*cfg.a, radius, lambda);
      const double A1 = eval_A1_majorant(*cfg.a, radius, lambda);
      j["a"] = *cfg.a;
      j["functional"] = L1;
      j["majorant"] = A1;
      csv += fmt::format("moebius,{},{},{},{},{}\n", csv_number(*cfg.a), csv_number(radius),
                         csv_number(lambda), csv_number(L1), csv_number(A1));
    } else {
      csv += fmt::format("moebius,,{},{},,\n", csv_number(radius), csv_number(lambda));
    }
    return {kExitOk, cfg.format == Format::Json ? render(j) : csv};
  }

  if (cfg.model_class == "classical") {
    double root = 0.0;
    const auto& kind = cfg.classical_kind;
    j["kind"] = kind;
    if (kind == "rogosinski" || kind == "rogosinski-doubled") {
      root = classical_radius(kind == "rogosinski" ? ClassicalKind::Rogosinski
                                                   : ClassicalKind::RogosinskiDoubled,
                              cfg.N);
      j["N"] = cfg.N;
    } else if (kind == "hypergeometric") {
      const double a = cfg.a.value_or(1.0);
      root = hypergeometric_radius(a, cfg.b, cfg.c, cfg.p);
      j["a"] = a;
      j["b"] = cfg.b;
      j["c"] = cfg.c;
      j["p"] = cfg.p;
    } else {
      root = generalized_power_radius(cfg.p);
      j["p"] = cfg.p;
    }
    j["root"] = root;
    const std::string csv = fmt::format("class,kind,root\nclassical,{},{}\n", kind, csv_number(root));
    return {kExitOk, cfg.format == Format::Json ? render(j) : csv};
  }

  const auto family = PhiFamily::parse(cfg.family);
  const bool ph0 = cfg.model_class == "ph0";
  const double parameter = ph0 ? cfg.M : cfg.alpha;
  const auto eq = ph0 ? build_PH0_equation(family, cfg.M) : build_WH0_equation(family, cfg.alpha);
  const auto result = solve_radius(eq, cfg.tol);
  const int changes = count_sign_changes(eq);

  j["family"] = family.description();
  j[ph0 ? "M" : "alpha"] = parameter;
  j["rhs"] = eq.rhs;
  j["root"] = result.root;
  j["bracket"] = {result.bracket.first, result.bracket.second};
  j["residual"] = result.residual;
  j["iterations"] = result.iterations;
  j["monotone_certificate"] = result.monotone_certificate;
  j["sign_changes"] = changes;
  j["unit_boundary_hypothesis"] = eq.info.unit_boundary_hypothesis;
  if (ph0) j["admissible_M_bound"] = number(admissible_M_bound(family));

  const std::string csv = fmt::format(
      "class,family,parameter,root,residual,iterations,monotone_certificate,sign_changes\n"
      "{},{},{},{},{},{},{},{}\n",
      cfg.model_class, family.description(), csv_number(parameter), csv_number(result.root),
      csv_number(result.residual), result.iterations, result.monotone_certificate, changes);
  return {kExitOk, cfg.format == Format::Json ? render(j) : csv};
}

std::string cell_flag(const TableCell& cell) {
  if (!cell.result) return "error";
  if (cell.order_violation) return "order";
  return cell.matches ? "ok" : "mismatch";
}

Output run_table(const RunConfig& cfg) {
  const auto table = table_generate(cfg.table_id, cfg.tol);
  const int status = table.failures > 0 || table.order_violations > 0 ? kExitFailed : kExitOk;

  if (cfg.format == Format::Csv) {
    std::string csv = "M,weight,root,residual,paper_value,abs_diff,flag\n";
    for (const auto& cell : table.cells) {
      const bool ok = cell.result.has_value();
      csv += fmt::format("{},{},{},{},{},{},{}\n", csv_number(cell.M), cell.weight,
                         ok ? csv_number(cell.result->root) : "",
                         ok ? csv_number(cell.result->residual) : "", csv_number(cell.published),
                         ok ? csv_number(cell.abs_diff) : "", cell_flag(cell));
    }
    return {status, csv};
  }

  json j = header("table");
  j["id"] = table.id;
  j["weight"] = table.id == 1 ? "n^k" : "(n+1)^k";
  j["agreement"] = kTableAgreement;
  j["matched"] = table.matched;
  j["cells_total"] = table.cells.size();
  j["order_violations"] = table.order_violations;
  j["failures"] = table.failures;
  json cells = json::array();
  for (const auto& cell : table.cells) {
    json c;
    c["M"] = cell.M;
    c["weight"] = cell.weight;
    if (cell.result) {
      c["root"] = cell.result->root;
      c["residual"] = cell.result->residual;
      c["monotone_certificate"] = cell.result->monotone_certificate;
      c["abs_diff"] = cell.abs_diff;
    } else {
      c["error"] = cell.error;
    }
    c["paper_value"] = cell.published;
    c["source"] = cell.source;
    c["flag"] = cell_flag(cell);
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  return {status, render(j)};
}

Output render_report(const VerificationReport& report, Format format) {
  const int status = report.passed ? kExitOk : kExitFailed;
  if (format == Format::Csv) {
    std::string csv = "claim,passed,worst_margin,tolerance,witness_value,witness_params\n";
    for (const auto& w : report.witnesses) {
      std::string params;
      for (const auto& [key, value] : w.params) {
        if (!params.empty()) params += ';';
        params += fmt::format("{}={}", key, csv_number(value));
      }
      csv += fmt::format("{},{},{},{},{},{}\n", report.claim_id, report.passed,
                         csv_number(report.worst_margin), csv_number(report.tolerance),
                         csv_number(w.value), params);
    }
    return {status, csv};
  }
  json j = header("verify");
  j["claim"] = report.claim_id;
  j["grid"] = report.grid;
  j["worst_margin"] = number(report.worst_margin);
  j["tolerance"] = report.tolerance;
  json witnesses = json::array();
  for (const auto& w : report.witnesses) {
    json wj;
    for (const auto& [key, value] : w.params) wj[key] = number(value);
    wj["value"] = number(w.value);
    witnesses.push_back(std::move(wj));
  }
  j["witnesses"] = std::move(witnesses);
  j["passed"] = report.passed;
  return {status, render(j)};
}

Output run_verify(const RunConfig& cfg) {
  if (cfg.claim == "thm22") {
    return render_report(verify_thm22(cfg.grid_a, cfg.grid_r, cfg.tol), cfg.format);
  }
  // harmonic
  if (!cfg.r) throw ParameterError("verify --claim harmonic needs --r");
  HarmonicClaim claim;
  if (cfg.model_class == "ph0") {
    claim.kind = HarmonicClaim::Kind::PH0;
    claim.parameter = cfg.M;
  } else if (cfg.model_class == "wh0") {
    claim.kind = HarmonicClaim::Kind::WH0;
    claim.parameter = cfg.alpha;
  } else {
    throw ParameterError("verify --claim harmonic needs --class ph0 or wh0");
  }
  claim.family = PhiFamily::parse(cfg.family);
  return render_report(verify_harmonic_bohr(claim, *cfg.r, cfg.tol), cfg.format);
}

Output run_sharpness(const RunConfig& cfg) {
  auto out = render_report(sharpness_probe_thm22(cfg.epsilon, cfg.grid_a), cfg.format);
  if (cfg.format == Format::Json) {
    // render_report labels every report as "verify".
    auto j = json::parse(out.text);
    j["command"] = "sharpness";
    out.text = render(j);
  }
  return out;
}

Output run_specfun(const RunConfig& cfg) {
  json j = header("specfun");
  j["function"] = cfg.function;
  SeriesValue value;
  if (cfg.function == "digamma") {
    j["x"] = cfg.x;
    value = {specfun::digamma(cfg.x), 0.0, 0};
  } else if (cfg.function == "lerch") {
    const double a = cfg.a.value_or(1.0);
    j["z"] = cfg.z;
    j["a"] = a;
    value = specfun::lerch_phi({cfg.z, a}, cfg.tol);
  } else if (cfg.function == "h") {
    j["alpha"] = cfg.alpha;
    value = {specfun::h_alpha(cfg.alpha), 0.0, 0};
  } else {
    const double a = cfg.a.value_or(1.0);
    j["a"] = a;
    j["b"] = cfg.b;
    j["c"] = cfg.c;
    j["z"] = cfg.z;
    value = specfun::gauss_2f1(a, cfg.b, cfg.c, cfg.z, cfg.tol);
  }
  j["value"] = number(value.value);
  j["tail_bound"] = number(value.tail_bound);
  j["terms_used"] = value.terms_used;
  const std::string csv =
      fmt::format("function,value,tail_bound,terms_used\n{},{},{},{}\n", cfg.function,
                  csv_number(value.value), csv_number(value.tail_bound), value.terms_used);
  return {kExitOk, cfg.format == Format::Json ? render(j) : csv};
}

Output dispatch(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Radius:
      return run_radius(cfg);
    case Command::Table:
      return run_table(cfg);
    case Command::Verify:
      return run_verify(cfg);
    case Command::Sharpness:
      return run_sharpness(cfg);
    case Command::Specfun:
      return run_specfun(cfg);
  }
  throw ParameterError("unknown command");
}

std::optional<double> tol_from_env() {
  const char* raw = std::getenv(kTolEnvVar);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string text(raw);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw CLI::ValidationError(kTolEnvVar, "not a number: " + text);
  }
  return value;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!(config.tol > 0.0 && config.tol <= kMaxTol)) {
    err << fmt::format("error: tol = {} outside (0, {}]\n", config.tol, kMaxTol);
    return kExitUsage;
  }
  Output result;
  try {
    result = dispatch(config);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (config.output_path) {
    std::ofstream file(*config.output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << *config.output_path << " for writing\n";
      return kExitUsage;
    }
    file << result.text;
  } else {
    out << result.text;
  }
  return result.status;
}

int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bohr-type radii, reference tables and inequality checks", "bohr"};
  app.require_subcommand(1);
  RunConfig cfg;

  const std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}};
  const auto tol_range = CLI::Range(std::numeric_limits<double>::min(), kMaxTol);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--output", cfg.output_path, "Write the report to this file");
    sub->add_option("--tol", cfg.tol, fmt::format("Tolerance in (0, {}]; env {}", kMaxTol, kTolEnvVar))
        ->check(tol_range);
  };
  auto add_model = [&](CLI::App* sub, std::vector<std::string> classes) {
    sub->add_option("--class", cfg.model_class, "Function class")->check(CLI::IsMember(classes));
    sub->add_option("--family", cfg.family, "power | poly:k | shift:k");
    sub->add_option("--M", cfg.M, "PH0 class parameter");
    sub->add_option("--alpha", cfg.alpha, "WH0 class parameter");
  };

  auto* radius = app.add_subcommand("radius", "Solve a radius equation");
  add_common(radius);
  add_model(radius, {"ph0", "wh0", "moebius", "classical"});
  radius->add_option("--a", cfg.a, "Moebius parameter, or hypergeometric a");
  radius->add_option("--kind", cfg.classical_kind, "Classical equation")
      ->check(CLI::IsMember({"rogosinski", "rogosinski-doubled", "hypergeometric", "generalized"}));
  radius->add_option("--N", cfg.N, "Classical polynomial degree")->check(CLI::PositiveNumber);
  radius->add_option("--p", cfg.p, "Right-hand side parameter p");
  radius->add_option("--b", cfg.b, "Hypergeometric b");
  radius->add_option("--c", cfg.c, "Hypergeometric c");

  auto* table = app.add_subcommand("table", "Reproduce a reference table of radii");
  add_common(table);
  table->add_option("--id", cfg.table_id, "Table id")->check(CLI::IsMember({1, 2}));

  auto* verify = app.add_subcommand("verify", "Check an inequality on a grid");
  add_common(verify);
  add_model(verify, {"ph0", "wh0"});
  verify->add_option("--claim", cfg.claim, "Claim id")->check(CLI::IsMember({"thm22", "harmonic"}));
  verify->add_option("--grid-a", cfg.grid_a, "Samples of a")->check(CLI::Range(2, 100000));
  verify->add_option("--grid-r", cfg.grid_r, "Samples of r")->check(CLI::Range(2, 100000));
  verify->add_option("--r", cfg.r, "Radius for the harmonic claim");

  auto* sharpness = app.add_subcommand("sharpness", "Search for a counterexample above the sharp constant");
  add_common(sharpness);
  sharpness->add_option("--epsilon", cfg.epsilon, "Increment of the area constant")
      ->check(CLI::NonNegativeNumber);
  sharpness->add_option("--grid-a", cfg.grid_a, "Uniform samples of a")->check(CLI::Range(1, 100000));

  auto* specfun_cmd = app.add_subcommand("specfun", "Evaluate a special function");
  add_common(specfun_cmd);
  specfun_cmd->add_option("--fn", cfg.function, "Function")
      ->check(CLI::IsMember({"digamma", "lerch", "h", "hyp2f1"}));
  specfun_cmd->add_option("--x", cfg.x, "Digamma argument");
  specfun_cmd->add_option("--z", cfg.z, "Series variable");
  specfun_cmd->add_option("--a", cfg.a, "Lerch shift or hypergeometric a");
  specfun_cmd->add_option("--b", cfg.b, "Hypergeometric b");
  specfun_cmd->add_option("--c", cfg.c, "Hypergeometric c");
  specfun_cmd->add_option("--alpha", cfg.alpha, "Parameter of H");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    const auto* sub = app.get_subcommands().front();
    if (sub->count("--tol") == 0) {
      if (const auto env = tol_from_env()) {
        if (!(*env > 0.0 && *env <= kMaxTol)) {
          throw CLI::ValidationError(kTolEnvVar, fmt::format("{} outside (0, {}]", *env, kMaxTol));
        }
        cfg.tol = *env;
      }
    }
    if (sub == radius) cfg.command = Command::Radius;
    if (sub == table) cfg.command = Command::Table;
    if (sub == verify) cfg.command = Command::Verify;
    if (sub == sharpness) cfg.command = Command::Sharpness;
    if (sub == specfun_cmd) cfg.command = Command::Specfun;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  return run(cfg, out, err);
}

}  // namespace bohr::cli
