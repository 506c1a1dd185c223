#include "hdsign/simulation.hpp"

#include <chrono>
#include <cmath>
#include <thread>

#include "hdsign/ar1.hpp"
#include "hdsign/errors.hpp"
#include "hdsign/sign_test.hpp"

namespace hdsign {

namespace {

std::string pattern_label(MuPattern pattern) {
  switch (pattern) {
    case MuPattern::null_location:
      return "null";
    case MuPattern::dense:
      return "dense";
    case MuPattern::sparse:
      return "sparse";
  }
  return "?";
}

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

CellResult run_cell(const SimulationCell& cell, int threads) {
  if (cell.reps < 1) throw invalid_parameter("run_cell: reps must be >= 1");
  cell.scenario.validate();
  const auto start = std::chrono::steady_clock::now();

  const ScenarioSampler sampler(cell.scenario);
  EstimationConfig cfg;
  cfg.mode = cell.mode;

  const int nthreads = std::min(resolve_threads(threads), cell.reps);
  std::vector<long> rejections(nthreads, 0);
  std::vector<long> failures(nthreads, 0);

  auto worker = [&](int t, int begin, int end) {
    for (int r = begin; r < end; ++r) {
      try {
        const DataMatrix X(
            sampler.sample_matrix(RngStream{cell.seed,
                                            static_cast<std::uint64_t>(r)}));
        const TestOutcome outcome = spatial_sign_test(X, cell.alpha, cfg);
        if (outcome.reject) ++rejections[t];
      } catch (const std::invalid_argument&) {
        ++failures[t];
      } catch (const numerical_failure&) {
        ++failures[t];
      }
    }
  };

  if (nthreads == 1) {
    worker(0, 0, cell.reps);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    const int chunk = (cell.reps + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(cell.reps, begin + chunk);
      pool.emplace_back(worker, t, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  long total_rej = 0;
  long total_fail = 0;
  for (int t = 0; t < nthreads; ++t) {
    total_rej += rejections[t];
    total_fail += failures[t];
  }

  CellResult result;
  result.scenario = scenario_label(cell.scenario);
  result.n = cell.scenario.n;
  result.p = cell.scenario.p;
  result.pattern = pattern_label(cell.scenario.mu_pattern);
  result.mode = cell.mode == TestMode::exact ? "exact" : "plugin";
  result.reps = cell.reps;
  result.seed = cell.seed;
  result.failures = static_cast<int>(total_fail);
  const long denom = cell.reps - total_fail;
  result.rate = denom > 0 ? static_cast<double>(total_rej) / denom : 0.0;
  result.stderr_ = std::sqrt(result.rate * (1.0 - result.rate) / cell.reps);
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

SimulationReport run_suite(const std::vector<SimulationCell>& cells,
                           int parallelism) {
  SimulationReport report;
  report.records.reserve(cells.size());
  for (const auto& cell : cells)
    report.records.push_back(run_cell(cell, parallelism));
  return report;
}

ConditionDiagnostics condition_diagnostics(int p, double rho, int n) {
  if (n < 1) throw invalid_parameter("condition_diagnostics: n must be >= 1");
  const double tr2 = ar1_trace_r2(p, rho);
  const double tr4 = ar1_trace_r4(p, rho);
  ConditionDiagnostics diag;
  diag.c1_ratio = tr4 / (tr2 * tr2);
  diag.c2_ratio = static_cast<double>(p) * p /
                  (static_cast<double>(n) * n * tr2);
  diag.c3_ratio = (tr2 - p) * n / (static_cast<double>(p) * p);
  return diag;
}

std::vector<SimulationCell> table_grid(int reps, double alpha, TestMode mode,
                                       std::uint64_t seed, double eta) {
  std::vector<SimulationCell> cells;
  for (int scenario = 1; scenario <= 5; ++scenario) {
    for (int n : {50, 100}) {
      for (int p : {200, 400, 1000}) {
        for (MuPattern pattern : {MuPattern::null_location, MuPattern::dense,
                                  MuPattern::sparse}) {
          SimulationCell cell;
          cell.scenario = ScenarioSpec::preset(scenario, n, p, pattern, eta);
          cell.reps = reps;
          cell.alpha = alpha;
          cell.mode = mode;
          cell.seed = seed;
          cells.push_back(cell);
        }
      }
    }
  }
  return cells;
}

}  // namespace hdsign
