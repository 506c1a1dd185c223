#include "hdsign/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace hdsign {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.8g", v);
  return buf;
}

std::string render_csv(const SimulationReport& report) {
  std::ostringstream out;
  out << "scenario,n,p,pattern,mode,reps,seed,rate,stderr,failures\n";
  for (const auto& r : report.records) {
    out << r.scenario << ',' << r.n << ',' << r.p << ',' << r.pattern << ','
        << r.mode << ',' << r.reps << ',' << r.seed << ',' << num(r.rate)
        << ',' << num(r.stderr_) << ',' << r.failures << '\n';
  }
  return out.str();
}

std::string render_json(const SimulationReport& report) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : report.records) {
    records.push_back({{"scenario", r.scenario},
                       {"n", r.n},
                       {"p", r.p},
                       {"pattern", r.pattern},
                       {"mode", r.mode},
                       {"reps", r.reps},
                       {"seed", r.seed},
                       {"rate", r.rate},
                       {"stderr", r.stderr_},
                       {"failures", r.failures},
                       {"wall_time_s", r.wall_time_s}});
  }
  return nlohmann::json{{"records", records}}.dump(2) + "\n";
}

std::string percent(double rate) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.1f", 100.0 * rate);
  return buf;
}

std::string render_table(const SimulationReport& report) {
  // scenario -> (n, p, mode) -> pattern -> rate
  std::map<std::string, std::map<std::tuple<int, int, std::string>,
                                 std::map<std::string, double>>>
      grouped;
  for (const auto& r : report.records)
    grouped[r.scenario][{r.n, r.p, r.mode}][r.pattern] = r.rate;

  std::ostringstream out;
  out << "Empirical rejection rates (%)\n";
  for (const auto& [scenario, rows] : grouped) {
    out << "Scenario " << scenario << "\n";
    char header[96];
    std::snprintf(header, sizeof(header), "  %5s %6s %8s %8s %8s %8s\n", "n",
                  "p", "mode", "Size", "Dense", "Sparse");
    out << header;
    for (const auto& [key, by_pattern] : rows) {
      const auto& [n, p, mode] = key;
      auto cell = [&](const char* pattern) {
        auto it = by_pattern.find(pattern);
        return it == by_pattern.end() ? std::string("-")
                                      : percent(it->second);
      };
      char line[96];
      std::snprintf(line, sizeof(line), "  %5d %6d %8s %8s %8s %8s\n", n, p,
                    mode.c_str(), cell("null").c_str(), cell("dense").c_str(),
                    cell("sparse").c_str());
      out << line;
    }
  }
  return out.str();
}

}  // namespace

std::string render_report(const SimulationReport& report,
                          ReportFormat format) {
  switch (format) {
    case ReportFormat::csv:
      return render_csv(report);
    case ReportFormat::json:
      return render_json(report);
    case ReportFormat::table:
      return render_table(report);
  }
  return {};
}

}  // namespace hdsign
