#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hdsign/scenarios.hpp"
#include "hdsign/types.hpp"

namespace hdsign {

struct SimulationCell {
  ScenarioSpec scenario;
  int reps = 500;
  double alpha = 0.05;
  TestMode mode = TestMode::plugin;
  std::uint64_t seed = 0;
};

struct CellResult {
  std::string scenario;
  int n = 0;
  int p = 0;
  std::string pattern;
  std::string mode;
  int reps = 0;
  std::uint64_t seed = 0;
  double rate = 0.0;      // rejections / (reps - failures)
  double stderr_ = 0.0;   // sqrt(rate (1 - rate) / reps)
  int failures = 0;       // replications that raised an error
  double wall_time_s = 0.0;
};

struct SimulationReport {
  std::vector<CellResult> records;
};

// tr(R^4)/tr^2(R^2), p^2/(n^2 tr(R^2)) and (tr(R^2) - p) n / p^2 for the
// AR(1) family; small c1 and bounded c2 are what the null limit needs.
struct ConditionDiagnostics {
  double c1_ratio = 0.0;
  double c2_ratio = 0.0;
  double c3_ratio = 0.0;
};

// Runs one cell: replication r draws from stream {seed, r} and feeds the
// test; rejections are counted, erroring replications are counted apart and
// excluded from the rate denominator. Deterministic for fixed (seed, cell)
// whatever the thread count.
CellResult run_cell(const SimulationCell& cell, int threads = 1);

// Runs the cells in order with replication-level parallelism inside each.
SimulationReport run_suite(const std::vector<SimulationCell>& cells,
                           int parallelism = 1);

ConditionDiagnostics condition_diagnostics(int p, double rho, int n);

// The full scenario grid of the study: scenarios I..V, n in {50, 100},
// p in {200, 400, 1000}, patterns null/dense/sparse.
std::vector<SimulationCell> table_grid(int reps, double alpha, TestMode mode,
                                       std::uint64_t seed, double eta = 0.03);

}  // namespace hdsign
