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

#ifndef FLEXSECTOR_SCENARIO_HPP
#define FLEXSECTOR_SCENARIO_HPP

#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "flexsector/angular.hpp"
#include "flexsector/errors.hpp"
#include "flexsector/planner.hpp"

namespace flexsector {

constexpr int kScenarioSchemaVersion = 1;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// A named, reproducible experiment setup. SNR lives in dB on disk and
/// linear in CellConfig.
struct Scenario {
  std::string name;
  CellConfig cell;
  ZoneProfile profile;
  std::uint64_t seed = 1;
  std::string notes;
};

inline nlohmann::json to_json(const Scenario& s) {
  return nlohmann::json{
      {"schema_version", kScenarioSchemaVersion},
      {"name", s.name},
      {"N", s.cell.total_antennas},
      {"B", s.cell.sectors},
      {"Z", s.cell.zones},
      {"D", s.cell.cell_radius},
      {"d", s.cell.track_radius},
      {"gamma0_db", linear_to_db(s.cell.snr0)},
      {"min_rate", s.cell.min_rate},
      {"zones", s.profile.expected_users},
      {"seed", s.seed},
      {"notes", s.notes},
  };
}

inline Scenario scenario_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("schema_version") &&
        j.at("schema_version").get<int>() != kScenarioSchemaVersion)
      throw config_error("unsupported scenario schema version");
    Scenario s;
    s.name = j.value("name", "scenario");
    s.cell.total_antennas = j.at("N").get<int>();
    s.cell.sectors = j.at("B").get<int>();
    s.cell.zones = j.at("Z").get<int>();
    s.cell.cell_radius = j.at("D").get<double>();
    s.cell.track_radius = j.value("d", 0.0);
    s.cell.snr0 = db_to_linear(j.at("gamma0_db").get<double>());
    s.cell.min_rate = j.value("min_rate", 0.0);
    s.profile.expected_users = j.at("zones").get<std::vector<double>>();
    s.seed = j.value("seed", std::uint64_t{1});
    s.notes = j.value("notes", "");
    s.cell.validate();
    s.profile.validate();
    if (s.profile.zone_count() != s.cell.zones)
      throw config_error("zones array length does not match Z");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("malformed scenario: ") + e.what());
  }
}

inline Scenario load_scenario(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("scenario is not valid JSON: ") + e.what());
  }
  return scenario_from_json(j);
}

inline void save_scenario(std::ostream& out, const Scenario& s) {
  out << to_json(s).dump(2) << '\n';
}

/// Distribution-I, quasi-uniform: zones 16-25 hold 3 expected users each,
/// every other zone holds 1 (K = 50).
inline Scenario scenario_distribution_I() {
  Scenario s;
  s.name = "dist1";
  s.notes = "quasi-uniform angular distribution";
  s.cell.total_antennas = 90;
  s.cell.sectors = 3;
  s.cell.zones = 30;
  s.cell.cell_radius = 100.0;
  s.cell.track_radius = 1.0;
  s.cell.snr0 = 1.0;  // 0 dB
  s.cell.min_rate = 5.0;
  s.profile.expected_users.assign(30, 1.0);
  for (int z = 16; z <= 25; ++z) s.profile.expected_users[z - 1] = 3.0;
  return s;
}

/// Distribution-II, clustered: a configurable fraction of the 50 users
/// sits in zones 16-25; the rest spread one per alternate remaining zone,
/// leaving some zones empty.
inline Scenario scenario_distribution_II(double cluster_weight = 0.8) {
  if (!(cluster_weight > 0.0 && cluster_weight <= 1.0))
    throw config_error("cluster weight must be in (0, 1]");
  Scenario s = scenario_distribution_I();
  s.name = "dist2";
  s.notes = "clustered random angular distribution";
  const double total = 50.0;
  const double clustered = cluster_weight * total;
  s.profile.expected_users.assign(30, 0.0);
  for (int z = 16; z <= 25; ++z) s.profile.expected_users[z - 1] = clustered / 10.0;
  // scatter the remainder over every other zone outside the cluster
  std::vector<int> outside;
  for (int z = 1; z <= 30; ++z)
    if (z < 16 || z > 25) outside.push_back(z);
  const int scatter_zones = static_cast<int>(outside.size()) / 2;
  for (int i = 0; i < scatter_zones; ++i)
    s.profile.expected_users[outside[2 * i] - 1] =
        (total - clustered) / scatter_zones;
  return s;
}

inline nlohmann::json plan_to_json(const Plan& plan, const Scenario& scenario) {
  nlohmann::json j{
      {"schema_version", kScenarioSchemaVersion},
      {"scenario", scenario.name},
      {"policy", policy_name(plan.policy)},
      {"z0", plan.rotation_index},
      {"n", plan.allocation},
      {"sum_rate_bps_hz", plan.report.total},
      {"feasible", plan.feasible},
      {"per_user_rate_lower", plan.report.per_user_lower},
      {"per_user_rate_upper", plan.report.per_user_upper},
      {"sector_sum_rate", plan.report.sector_sum},
  };
  if (!plan.rate_trace.empty()) j["rate_by_z0"] = plan.rate_trace;
  return j;
}

}  // namespace flexsector

#endif  // FLEXSECTOR_SCENARIO_HPP
