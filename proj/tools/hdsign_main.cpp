// Command-line front end: one-sample location test on CSV data, the
// simulation study, condition diagnostics, and the efficiency calculators.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hdsign/errors.hpp"
#include "hdsign/power.hpp"
#include "hdsign/report.hpp"
#include "hdsign/sign_test.hpp"
#include "hdsign/simulation.hpp"

namespace {

using nlohmann::json;

Eigen::MatrixXd read_csv(const std::string& path, bool header) {
  std::ifstream in(path);
  if (!in) throw hdsign::invalid_input("cannot open input file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first && header) {
      first = false;
      continue;
    }
    first = false;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      try {
        size_t pos = 0;
        row.push_back(std::stod(field, &pos));
        while (pos < field.size() && std::isspace(field[pos])) ++pos;
        if (pos != field.size())
          throw hdsign::invalid_input("trailing characters in field");
      } catch (const hdsign::invalid_input&) {
        throw;
      } catch (const std::exception&) {
        throw hdsign::invalid_input("not a number in " + path + ": '" +
                                    field + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw hdsign::invalid_input("ragged rows in " + path);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw hdsign::invalid_input("empty input: " + path);
  Eigen::MatrixXd X(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      X(i, j) = rows[i][j];
  return X;
}

hdsign::MuPattern parse_pattern(const std::string& s) {
  if (s == "null") return hdsign::MuPattern::null_location;
  if (s == "dense") return hdsign::MuPattern::dense;
  if (s == "sparse") return hdsign::MuPattern::sparse;
  throw hdsign::invalid_parameter("pattern must be null|dense|sparse");
}

int parse_scenario(const std::string& s) {
  static const std::map<std::string, int> roman{
      {"I", 1}, {"II", 2}, {"III", 3}, {"IV", 4}, {"V", 5},
      {"1", 1}, {"2", 2},  {"3", 3},   {"4", 4},  {"5", 5}};
  auto it = roman.find(s);
  if (it == roman.end())
    throw hdsign::invalid_parameter("scenario must be I..V");
  return it->second;
}

std::map<std::string, double> parse_params(
    const std::vector<std::string>& kvs) {
  std::map<std::string, double> params;
  for (const auto& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw hdsign::invalid_parameter("expected key=value, got '" + kv + "'");
    try {
      params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw hdsign::invalid_parameter("bad value in '" + kv + "'");
    }
  }
  return params;
}

double need(const std::map<std::string, double>& params,
            const std::string& key) {
  auto it = params.find(key);
  if (it == params.end())
    throw hdsign::invalid_parameter("missing parameter: " + key);
  return it->second;
}

double get_or(const std::map<std::string, double>& params,
              const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

int run_test(const std::string& input, bool header, double alpha,
             const std::string& mode, double tol, int max_iter,
             const std::string& output) {
  hdsign::EstimationConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  cfg.mode = mode == "plugin" ? hdsign::TestMode::plugin
                              : hdsign::TestMode::exact;
  const hdsign::DataMatrix X(read_csv(input, header));
  const auto outcome = hdsign::spatial_sign_test(X, alpha, cfg);
  if (outcome.nonconverged_fits > 0)
    std::cerr << "warning: " << outcome.nonconverged_fits
              << " scale fit(s) stopped at max_iter before reaching tol\n";
  if (output == "json") {
    json j{{"n", X.n()},
           {"p", X.p()},
           {"statistic", outcome.statistic},
           {"trace_r2", outcome.trace_r2},
           {"sigma2", outcome.sigma2},
           {"z", outcome.z},
           {"p_value", outcome.p_value},
           {"alpha", outcome.alpha},
           {"reject", outcome.reject},
           {"mode", mode},
           {"nonconverged_fits", outcome.nonconverged_fits}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "n            " << X.n() << "\n"
              << "p            " << X.p() << "\n"
              << "mode         " << mode << "\n"
              << "statistic    " << outcome.statistic << "\n"
              << "trace_r2     " << outcome.trace_r2 << "\n"
              << "sigma2       " << outcome.sigma2 << "\n"
              << "z            " << outcome.z << "\n"
              << "p_value      " << outcome.p_value << "\n"
              << "reject at " << alpha << ": "
              << (outcome.reject ? "yes" : "no") << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scalar-invariant spatial-sign location test and its "
               "simulation study"};
  app.require_subcommand(1);

  // test
  std::string test_input, test_mode = "exact", test_output = "text";
  bool test_header = false;
  double test_alpha = 0.05, test_tol = 1e-8;
  int test_max_iter = 200;
  auto* test_cmd =
      app.add_subcommand("test", "Run the location test on CSV data "
                                 "(one observation per row)");
  test_cmd->add_option("--input", test_input, "CSV file")->required();
  test_cmd->add_flag("--header", test_header, "skip the first line");
  test_cmd->add_option("--alpha", test_alpha, "significance level");
  test_cmd->add_option("--mode", test_mode, "exact|plugin")
      ->check(CLI::IsMember({"exact", "plugin"}));
  test_cmd->add_option("--tol", test_tol, "fixed-point tolerance");
  test_cmd->add_option("--max-iter", test_max_iter, "fixed-point iteration cap");
  test_cmd->add_option("--output", test_output, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  // simulate
  std::string sim_scenario = "I", sim_pattern = "null", sim_mode = "plugin",
              sim_format = "table";
  int sim_n = 50, sim_p = 200, sim_reps = 500, sim_threads = 1;
  double sim_eta = 0.03, sim_alpha = 0.05;
  std::uint64_t sim_seed = 20230415;
  bool sim_full_grid = false;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Empirical size/power of the test under scenarios I..V");
  sim_cmd->add_option("--scenario", sim_scenario, "I..V");
  sim_cmd->add_option("--n", sim_n, "sample size");
  sim_cmd->add_option("--p", sim_p, "dimension");
  sim_cmd->add_option("--pattern", sim_pattern, "null|dense|sparse");
  sim_cmd->add_option("--eta", sim_eta, "signal calibration level");
  sim_cmd->add_option("--alpha", sim_alpha, "significance level");
  sim_cmd->add_option("--reps", sim_reps, "replications per cell");
  sim_cmd->add_option("--seed", sim_seed, "RNG seed");
  sim_cmd->add_option("--mode", sim_mode, "exact|plugin")
      ->check(CLI::IsMember({"exact", "plugin"}));
  sim_cmd->add_option("--threads", sim_threads,
                      "worker threads (0 = hardware)");
  sim_cmd->add_option("--format", sim_format, "csv|json|table")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  sim_cmd->add_flag("--full-grid", sim_full_grid,
                    "run the whole scenario grid (I..V, n in {50,100}, "
                    "p in {200,400,1000}, all patterns) at --reps");

  // diag
  int diag_p = 200, diag_n = 50;
  double diag_rho = 0.5;
  auto* diag_cmd = app.add_subcommand(
      "diag", "Asymptotic-regime diagnostics for the AR(1) family");
  diag_cmd->add_option("--p", diag_p, "dimension")->required();
  diag_cmd->add_option("--rho", diag_rho, "AR(1) parameter")->required();
  diag_cmd->add_option("--n", diag_n, "sample size")->required();

  // are
  int are_nu = 0, are_p = 400, are_draws = 100000;
  std::string are_family;
  std::uint64_t are_seed = 1;
  auto* are_cmd = app.add_subcommand(
      "are", "Asymptotic relative efficiency vs the moment-based test");
  are_cmd->add_option("--nu", are_nu, "t degrees of freedom (closed form)");
  are_cmd->add_option("--family", are_family, "normal|mvt4 (Monte Carlo)")
      ->check(CLI::IsMember({"normal", "mvt4"}));
  are_cmd->add_option("--p", are_p, "dimension for Monte Carlo");
  are_cmd->add_option("--draws", are_draws, "Monte Carlo draws");
  are_cmd->add_option("--seed", are_seed, "RNG seed");

  // power
  std::string power_formula;
  std::vector<std::string> power_params;
  auto* power_cmd =
      app.add_subcommand("power", "Asymptotic power formulas");
  power_cmd->add_option("--formula", power_formula, "ss|pa|wpl")
      ->required()
      ->check(CLI::IsMember({"ss", "pa", "wpl"}));
  power_cmd->add_option("--params", power_params,
                        "key=value pairs; ss/pa: n p alpha c0 mdm tr_r2 "
                        "[e2]; wpl: n p alpha c0 zeta tau1_sq tau2_sq "
                        "regime (1 or 2)");

  try {
    app.parse(argc, argv);

    if (test_cmd->parsed())
      return run_test(test_input, test_header, test_alpha, test_mode,
                      test_tol, test_max_iter, test_output);

    if (sim_cmd->parsed()) {
      const auto mode = sim_mode == "exact" ? hdsign::TestMode::exact
                                            : hdsign::TestMode::plugin;
      std::vector<hdsign::SimulationCell> cells;
      if (sim_full_grid) {
        cells = hdsign::table_grid(sim_reps, sim_alpha, mode, sim_seed,
                                   sim_eta);
      } else {
        hdsign::SimulationCell cell;
        cell.scenario = hdsign::ScenarioSpec::preset(
            parse_scenario(sim_scenario), sim_n, sim_p,
            parse_pattern(sim_pattern), sim_eta);
        cell.reps = sim_reps;
        cell.alpha = sim_alpha;
        cell.mode = mode;
        cell.seed = sim_seed;
        cells.push_back(cell);
      }
      const auto report = hdsign::run_suite(cells, sim_threads);
      const auto format = sim_format == "csv"    ? hdsign::ReportFormat::csv
                          : sim_format == "json" ? hdsign::ReportFormat::json
                                                 : hdsign::ReportFormat::table;
      std::cout << hdsign::render_report(report, format);
      return 0;
    }

    if (diag_cmd->parsed()) {
      const auto d = hdsign::condition_diagnostics(diag_p, diag_rho, diag_n);
      std::cout << "c1_ratio (tr(R^4)/tr^2(R^2))   " << d.c1_ratio << "\n"
                << "c2_ratio (p^2/(n^2 tr(R^2)))   " << d.c2_ratio << "\n"
                << "c3_ratio ((tr(R^2)-p) n/p^2)   " << d.c3_ratio << "\n";
      if (d.c2_ratio > 1.0)
        std::cout << "note: c2_ratio > 1 — the dimension outruns n^2; the "
                     "normal approximation may be strained\n";
      if (static_cast<double>(diag_p) / diag_n < 5.0)
        std::cout << "note: p/n < 5 — the diagonal-scale consistency "
                     "argument wants p to diverge faster than n\n";
      return 0;
    }

    if (are_cmd->parsed()) {
      json j;
      if (!are_family.empty()) {
        hdsign::ScenarioSpec family;
        family.scatter.d_scheme = hdsign::DScheme::identity;
        family.scatter.rho = 0.0;
        family.family = are_family == "mvt4" ? hdsign::Family::mvt
                                             : hdsign::Family::normal;
        family.n = 1;
        family.p = are_p;
        family.scatter.p = are_p;
        const double est = hdsign::are_ss_pa_mc(
            family, are_p, are_draws, hdsign::RngStream{are_seed, 0});
        j = json{{"family", are_family},
                 {"p", are_p},
                 {"draws", are_draws},
                 {"seed", are_seed},
                 {"are", est}};
      } else if (are_nu >= 3) {
        j = json{{"nu", are_nu}, {"are", hdsign::are_ss_pa_t(are_nu)}};
      } else {
        throw hdsign::invalid_parameter(
            "are: give --nu >= 3 or --family normal|mvt4");
      }
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (power_cmd->parsed()) {
      const auto params = parse_params(power_params);
      hdsign::PowerSpec spec;
      spec.n = static_cast<int>(need(params, "n"));
      spec.p = static_cast<int>(need(params, "p"));
      spec.alpha = get_or(params, "alpha", 0.05);
      spec.mean_inv_norm = need(params, "c0");
      json j{{"formula", power_formula}};
      if (power_formula == "wpl") {
        spec.zeta = need(params, "zeta");
        spec.tau1_sq = need(params, "tau1_sq");
        spec.tau2_sq = need(params, "tau2_sq");
        const auto regime = get_or(params, "regime", 1) == 2
                                ? hdsign::WplRegime::tau2_dominant
                                : hdsign::WplRegime::tau1_dominant;
        j["power"] = hdsign::asymptotic_power_wpl(spec, regime);
        j["power_ss_block"] = hdsign::asymptotic_power_ss_block(spec);
        j["are_ss_wpl"] = hdsign::are_ss_wpl(spec, regime);
      } else {
        // mdm = mu' D^-1 mu enters through a one-coordinate surrogate.
        const double mdm = need(params, "mdm");
        spec.trace_r2 = need(params, "tr_r2");
        spec.mu = Eigen::VectorXd::Zero(spec.p);
        spec.d = Eigen::VectorXd::Ones(spec.p);
        spec.mu[0] = std::sqrt(mdm);
        if (power_formula == "ss") {
          j["power"] = hdsign::asymptotic_power_ss(spec);
        } else {
          spec.mean_sq_norm = get_or(params, "e2", 0.0);
          j["power"] = hdsign::asymptotic_power_pa(spec);
        }
      }
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const hdsign::numerical_failure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
