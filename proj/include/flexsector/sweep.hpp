// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLEXSECTOR_SWEEP_HPP
#define FLEXSECTOR_SWEEP_HPP

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "flexsector/channel.hpp"
#include "flexsector/errors.hpp"
#include "flexsector/planner.hpp"
#include "flexsector/scenario.hpp"

namespace flexsector {

constexpr int kSweepSchemaVersion = 1;
inline const char* kBuildId = "flexsector-0.1.0";

/// One table of sweep results, plot-ready as CSV.
struct SweepResult {
  struct Row {
    double axis_value = 0.0;
    std::string policy;
    double rate = 0.0;
    bool feasible = false;
    int z0_star = 1;
    std::vector<int> allocation;
  };
  std::string axis;  // "z0" | "N" | "B" | "policy"
  std::vector<Row> rows;
  std::uint64_t seed = 0;
};

/// Flexible-policy rate versus rotation index, one curve per sector count.
inline SweepResult sweep_rotation(const Scenario& scenario,
                                  const std::vector<int>& sector_counts) {
  SweepResult result;
  result.axis = "z0";
  result.seed = scenario.seed;
  for (int b : sector_counts) {
    CellConfig cfg = scenario.cell;
    cfg.sectors = b;
    cfg.validate();
    const Plan plan = optimize_flexible(cfg, scenario.profile);
    const int c = cfg.zones_per_sector();
    for (int z0 = 1; z0 <= c; ++z0) {
      SweepResult::Row row;
      row.axis_value = z0;
      row.policy = std::string("flexible@B=") + std::to_string(b);
      row.rate = plan.rate_trace[z0 - 1];
      row.feasible = plan.rate_trace[z0 - 1] > 0.0;
      row.z0_star = plan.rotation_index;
      row.allocation = plan.allocation;
      result.rows.push_back(row);
    }
  }
  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const auto& a, const auto& b) { return a.axis_value < b.axis_value; });
  return result;
}

/// Rate per policy versus total antenna count.
inline SweepResult sweep_antennas(const Scenario& scenario,
                                  const std::vector<Policy>& policies,
                                  const std::vector<int>& antenna_counts) {
  SweepResult result;
  result.axis = "N";
  result.seed = scenario.seed;
  for (int n : antenna_counts) {
    CellConfig cfg = scenario.cell;
    cfg.total_antennas = n;
    for (Policy p : policies) {
      SweepResult::Row row;
      row.axis_value = n;
      row.policy = policy_name(p);
      try {
        const Plan plan = make_plan(p, cfg, scenario.profile);
        row.rate = plan.report.total;
        row.feasible = plan.feasible;
        row.z0_star = plan.rotation_index;
        row.allocation = plan.allocation;
      } catch (const infeasible_error&) {
        row.rate = 0.0;
        row.feasible = false;
      }
      result.rows.push_back(row);
    }
  }
  return result;
}

inline void save_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "# flexsector-sweep schema_version=" << kSweepSchemaVersion
      << " axis=" << result.axis << " seed=" << result.seed
      << " build=" << kBuildId << '\n';
  out << "axis,policy,R_bps_hz,feasible,z0_star,n_vector\n";
  for (const auto& row : result.rows) {
    out << row.axis_value << ',' << row.policy << ',' << row.rate << ','
        << (row.feasible ? 1 : 0) << ',' << row.z0_star << ',';
    for (std::size_t i = 0; i < row.allocation.size(); ++i) {
      if (i) out << ';';
      out << row.allocation[i];
    }
    out << '\n';
  }
}

inline SweepResult load_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      line.find("schema_version=" + std::to_string(kSweepSchemaVersion)) ==
          std::string::npos)
    throw config_error("unknown or missing sweep schema version");
  SweepResult result;
  const auto axis_pos = line.find("axis=");
  if (axis_pos != std::string::npos) {
    std::istringstream tok(line.substr(axis_pos + 5));
    tok >> result.axis;
  }
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    SweepResult::Row row;
    std::string field;
    std::getline(ls, field, ',');
    row.axis_value = std::stod(field);
    std::getline(ls, row.policy, ',');
    std::getline(ls, field, ',');
    row.rate = std::stod(field);
    std::getline(ls, field, ',');
    row.feasible = field == "1";
    std::getline(ls, field, ',');
    row.z0_star = std::stoi(field);
    std::getline(ls, field, ',');
    std::istringstream ns(field);
    std::string part;
    while (std::getline(ns, part, ';'))
      if (!part.empty()) row.allocation.push_back(std::stoi(part));
    result.rows.push_back(row);
  }
  return result;
}

/// One grid point of the bound-validation run.
struct BoundsRow {
  int n_b = 0;
  int q_b = 0;
  int sectors = 1;
  double gamma0 = 1.0;
  double lower = 0.0;
  McEstimate estimate;
  double upper = 0.0;
  bool pass = false;  // lower <= mc +/- 3 SE <= upper
};

struct BoundsGridPoint {
  int n_b = 0;
  int q_b = 0;
  int sectors = 1;
  double gamma0 = 1.0;
};

/// Monte-Carlo sandwich check of the closed-form rate bounds.
inline std::vector<BoundsRow> validate_bounds(const std::vector<BoundsGridPoint>& grid,
                                              int trials, std::uint64_t seed) {
  std::vector<BoundsRow> rows;
  rows.reserve(grid.size());
  for (const auto& p : grid) {
    BoundsRow row;
    row.n_b = p.n_b;
    row.q_b = p.q_b;
    row.sectors = p.sectors;
    row.gamma0 = p.gamma0;
    row.lower = rate_lower(p.n_b, p.q_b, p.sectors, p.gamma0);
    row.upper = rate_upper(p.n_b, p.q_b, p.sectors, p.gamma0);
    row.estimate = mc_ergodic_rate(p.n_b, p.q_b, p.sectors, p.gamma0, trials, seed);
    const double margin = 3.0 * row.estimate.std_error;
    row.pass = row.estimate.mean + margin >= row.lower &&
               row.estimate.mean - margin <= row.upper;
    rows.push_back(row);
  }
  return rows;
}

inline void save_bounds_csv(std::ostream& out, const std::vector<BoundsRow>& rows,
                            std::uint64_t seed) {
  out << "# flexsector-bounds schema_version=" << kSweepSchemaVersion
      << " seed=" << seed << " build=" << kBuildId << '\n';
  out << "N_b,Q_b,B,gamma0,lower,mc_mean,mc_se,upper,pass\n";
  for (const auto& r : rows)
    out << r.n_b << ',' << r.q_b << ',' << r.sectors << ',' << r.gamma0 << ','
        << r.lower << ',' << r.estimate.mean << ',' << r.estimate.std_error << ','
        << r.upper << ',' << (r.pass ? 1 : 0) << '\n';
}

}  // namespace flexsector

#endif  // FLEXSECTOR_SWEEP_HPP
