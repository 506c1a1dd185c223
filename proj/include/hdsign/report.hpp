#pragma once

#include <string>

#include "hdsign/simulation.hpp"

namespace hdsign {

enum class ReportFormat { csv, json, table };

// csv: scenario,n,p,pattern,mode,reps,seed,rate,stderr,failures (one row per
// record; no timing column, so equal reports render byte-identically).
// json: the same fields plus wall_time_s.
// table: records grouped by scenario and (n, p), with one percentage column
// per pattern (Size / Dense / Sparse).
std::string render_report(const SimulationReport& report, ReportFormat format);

}  // namespace hdsign
