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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flexsector/flexsector.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNumerical = 4;

flexsector::Scenario read_scenario(const std::string& path) {
  if (path == "-") return flexsector::load_scenario(std::cin);
  std::ifstream in(path);
  if (!in) throw flexsector::config_error("cannot open scenario file '" + path + "'");
  return flexsector::load_scenario(in);
}

/// Writes to the given file, or stdout when path is empty.
class OutputSink {
public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_)
        throw flexsector::config_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

int run(int argc, char** argv) {
  CLI::App app{"Flexible-sector base station planner"};
  app.require_subcommand(1);

  // gen-scenario
  std::string gen_kind;
  double cluster_weight = 0.8;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-scenario", "Emit a built-in scenario as JSON");
  gen->add_option("kind", gen_kind, "dist1 (quasi-uniform) or dist2 (clustered)")
      ->required()
      ->check(CLI::IsMember({"dist1", "dist2"}));
  gen->add_option("--dist2-cluster-weight", cluster_weight,
                  "fraction of users in the dist2 cluster zones");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // optimize
  std::string opt_scenario;
  std::string opt_policy = "flexible";
  std::string opt_out;
  auto* opt = app.add_subcommand("optimize", "Plan rotation and antenna allocation");
  opt->add_option("scenario", opt_scenario, "scenario JSON file, or - for stdin")
      ->required();
  opt->add_option("--policy", opt_policy,
                  "flexible | alloc-only | rotation-only | fixed");
  opt->add_option("--out", opt_out, "output file (default stdout)");

  // sweep-z0
  std::string z0_scenario;
  std::vector<int> z0_sectors{2, 3, 5, 30};
  std::string z0_out;
  auto* z0 = app.add_subcommand("sweep-z0", "Sum rate versus rotation index");
  z0->add_option("scenario", z0_scenario, "scenario JSON file, or - for stdin")
      ->required();
  z0->add_option("--sectors", z0_sectors, "sector counts to sweep");
  z0->add_option("--out", z0_out, "output CSV (default stdout)");

  // sweep-n
  std::string n_scenario;
  std::vector<int> n_values{60, 70, 80, 90, 100, 110, 120};
  std::string n_out;
  auto* swn = app.add_subcommand("sweep-n", "Sum rate versus total antennas, all policies");
  swn->add_option("scenario", n_scenario, "scenario JSON file, or - for stdin")
      ->required();
  swn->add_option("--antennas", n_values, "antenna counts to sweep");
  swn->add_option("--out", n_out, "output CSV (default stdout)");

  // validate-bounds
  int vb_trials = 100000;
  std::uint64_t vb_seed = 1;
  std::string vb_out;
  auto* vb = app.add_subcommand("validate-bounds",
                                "Monte-Carlo sandwich check of the rate bounds");
  vb->add_option("--trials", vb_trials, "Monte-Carlo trials per grid point");
  vb->add_option("--seed", vb_seed, "RNG seed");
  vb->add_option("--out", vb_out, "output CSV (default stdout)");

  // analyze-extremal
  double ae_users = 50;
  int ae_sectors = 3;
  double ae_antennas = 90;
  double ae_gamma0_db = 0.0;
  std::string ae_out;
  auto* ae = app.add_subcommand("analyze-extremal",
                                "Closed-form extremal distributions and rate gap");
  ae->add_option("--users", ae_users, "total users K");
  ae->add_option("--sectors", ae_sectors, "sector count B");
  ae->add_option("--antennas", ae_antennas, "total antennas N");
  ae->add_option("--gamma0-db", ae_gamma0_db, "SNR gamma0 in dB");
  ae->add_option("--out", ae_out, "output JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (gen->parsed()) {
    const flexsector::Scenario s =
        gen_kind == "dist1" ? flexsector::scenario_distribution_I()
                            : flexsector::scenario_distribution_II(cluster_weight);
    OutputSink out(gen_out);
    flexsector::save_scenario(out.stream(), s);
    return kExitOk;
  }

  if (opt->parsed()) {
    const flexsector::Scenario s = read_scenario(opt_scenario);
    const flexsector::Policy policy = flexsector::policy_from_name(opt_policy);
    const double cap = flexsector::max_min_rate(
        s.cell.total_antennas, s.profile.total_users(), s.cell.snr0);
    if (s.cell.min_rate > 0.0 && s.cell.min_rate > cap)
      throw flexsector::infeasible_error(
          "min_rate " + std::to_string(s.cell.min_rate) +
          " exceeds the feasible maximum log2(1+gamma0(N-K)) = " +
          std::to_string(cap));
    const flexsector::Plan plan = flexsector::make_plan(policy, s.cell, s.profile);
    OutputSink out(opt_out);
    out.stream() << flexsector::plan_to_json(plan, s).dump(2) << '\n';
    return kExitOk;
  }

  if (z0->parsed()) {
    const flexsector::Scenario s = read_scenario(z0_scenario);
    const flexsector::SweepResult result = flexsector::sweep_rotation(s, z0_sectors);
    OutputSink out(z0_out);
    flexsector::save_sweep_csv(out.stream(), result);
    return kExitOk;
  }

  if (swn->parsed()) {
    const flexsector::Scenario s = read_scenario(n_scenario);
    const std::vector<flexsector::Policy> policies{
        flexsector::Policy::Flexible, flexsector::Policy::AllocOnly,
        flexsector::Policy::RotationOnly, flexsector::Policy::Fixed};
    const flexsector::SweepResult result =
        flexsector::sweep_antennas(s, policies, n_values);
    OutputSink out(n_out);
    flexsector::save_sweep_csv(out.stream(), result);
    return kExitOk;
  }

  if (vb->parsed()) {
    std::vector<flexsector::BoundsGridPoint> grid;
    for (auto [n, q] : {std::pair{10, 5}, {20, 10}, {40, 20}, {60, 50}, {90, 50}})
      for (int b : {1, 3})
        grid.push_back({n, q, b, 1.0});
    const auto rows = flexsector::validate_bounds(grid, vb_trials, vb_seed);
    OutputSink out(vb_out);
    flexsector::save_bounds_csv(out.stream(), rows, vb_seed);
    bool all_pass = true;
    for (const auto& r : rows) all_pass = all_pass && r.pass;
    return all_pass ? kExitOk : kExitNumerical;
  }

  if (ae->parsed()) {
    const double gamma0 = flexsector::db_to_linear(ae_gamma0_db);
    const auto res = flexsector::extremal_distributions(ae_users, ae_sectors,
                                                        ae_antennas, gamma0);
    const auto [finite_gap, asymptote] =
        flexsector::theorem1_gap(ae_sectors, ae_antennas, ae_users, gamma0);
    nlohmann::json j{
        {"schema_version", flexsector::kScenarioSchemaVersion},
        {"maximizer_q", res.maximizer},
        {"maximizer_n", res.maximizer_alloc},
        {"favorable_q", res.favorable},
        {"minimizer_q", res.minimizer},
        {"minimizer_n", res.minimizer_alloc},
        {"R_max_bps_hz", res.rate_max},
        {"R_min_bps_hz", res.rate_min},
        {"gap_per_user_bps_hz", finite_gap},
        {"asymptotic_gap_bps_hz", asymptote},
    };
    OutputSink out(ae_out);
    out.stream() << j.dump(2) << '\n';
    return kExitOk;
  }

  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const flexsector::infeasible_error& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const flexsector::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const flexsector::config_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
