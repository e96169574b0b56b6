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

#ifndef FLEXSECTOR_PLANNER_HPP
#define FLEXSECTOR_PLANNER_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "flexsector/allocate.hpp"
#include "flexsector/angular.hpp"
#include "flexsector/errors.hpp"
#include "flexsector/rate.hpp"

namespace flexsector {

enum class Policy {
  Flexible,      // joint rotation search + optimized allocation
  AllocOnly,     // z0 = 1, optimized allocation
  RotationOnly,  // rotation search, equal antenna split
  Fixed,         // z0 = 1, equal antenna split
};

inline const char* policy_name(Policy p) {
  switch (p) {
    case Policy::Flexible: return "flexible";
    case Policy::AllocOnly: return "alloc-only";
    case Policy::RotationOnly: return "rotation-only";
    case Policy::Fixed: return "fixed";
  }
  return "?";
}

inline Policy policy_from_name(const std::string& name) {
  if (name == "flexible") return Policy::Flexible;
  if (name == "alloc-only") return Policy::AllocOnly;
  if (name == "rotation-only") return Policy::RotationOnly;
  if (name == "fixed") return Policy::Fixed;
  throw config_error("unknown policy '" + name + "'");
}

struct Plan {
  Policy policy = Policy::Flexible;
  int rotation_index = 1;            // chosen z0
  std::vector<int> allocation;       // integer n
  RateReport report;
  bool feasible = false;             // all minimum-rate constraints met
  std::vector<double> rate_trace;    // R(z0) for z0 = 1..c (search policies)
};

namespace detail {

/// Equal split with remainder antennas to the lowest-index sectors.
inline std::vector<int> equal_split(int total_antennas, int sectors) {
  std::vector<int> n(sectors, total_antennas / sectors);
  for (int b = 0; b < total_antennas % sectors; ++b) ++n[b];
  return n;
}

inline bool meets_minima(const std::vector<int>& n, const std::vector<double>& q,
                         double min_rate, int sectors, double gamma0) {
  const std::vector<int> minima = integer_minima(
      continuous_minima(q, min_rate, sectors, gamma0));
  for (std::size_t b = 0; b < q.size(); ++b)
    if (q[b] > 0.0 && n[b] < minima[b]) return false;
  return true;
}

/// Rate and feasibility of a fixed allocation at one rotation. Infeasible
/// combinations are evaluated anyway with clamped rate terms so that
/// benchmark sweeps always complete.
inline Plan evaluate_fixed_allocation(Policy policy, const CellConfig& cfg,
                                      const ZoneProfile& profile,
                                      const std::vector<int>& n, int z0) {
  const SectorView view = build_sector_view(cfg, z0);
  const std::vector<double> q = users_per_sector(profile, view);
  Plan plan;
  plan.policy = policy;
  plan.rotation_index = z0;
  plan.allocation = n;
  plan.report = make_rate_report(std::vector<double>(n.begin(), n.end()), q,
                                 cfg.sectors, cfg.snr0, z0);
  plan.feasible = meets_minima(n, q, cfg.min_rate, cfg.sectors, cfg.snr0);
  return plan;
}

/// Optimized allocation for one rotation. When the integer minima exceed
/// the budget the plan falls back to the ZF floor (n_b >= Q_b) and is
/// flagged infeasible, so benchmark sweeps always complete.
inline bool try_optimized_allocation(const CellConfig& cfg,
                                     const ZoneProfile& profile, int z0,
                                     Plan& out) {
  const SectorView view = build_sector_view(cfg, z0);
  const std::vector<double> q = users_per_sector(profile, view);
  IntegerAllocation alloc;
  bool met_minima = true;
  try {
    alloc = solve_integer(q, cfg.total_antennas, cfg.min_rate, cfg.sectors, cfg.snr0);
  } catch (const infeasible_error&) {
    met_minima = false;
    try {
      alloc = solve_integer(q, cfg.total_antennas, 0.0, cfg.sectors, cfg.snr0);
    } catch (const infeasible_error&) {
      return false;
    }
  }
  out.rotation_index = z0;
  out.allocation = alloc.n;
  out.report = make_rate_report(
      std::vector<double>(alloc.n.begin(), alloc.n.end()), q, cfg.sectors,
      cfg.snr0, z0);
  out.feasible = met_minima && alloc.feasible;
  return true;
}

}  // namespace detail

/// Joint rotation and allocation: optimize the allocation at every
/// z0 in {1..c}, keep the argmax (ties to the smallest z0).
inline Plan optimize_flexible(const CellConfig& cfg, const ZoneProfile& profile) {
  cfg.validate();
  profile.validate();
  const double k = profile.total_users();
  const double cap = max_min_rate(cfg.total_antennas, k, cfg.snr0);
  if (cfg.min_rate > 0.0 && cfg.min_rate > cap)
    throw infeasible_error("min_rate " + std::to_string(cfg.min_rate) +
                           " exceeds the feasible maximum " + std::to_string(cap));

  const int c = cfg.zones_per_sector();
  Plan best;
  best.policy = Policy::Flexible;
  best.rate_trace.assign(c, 0.0);
  bool any = false;
  for (int z0 = 1; z0 <= c; ++z0) {
    Plan cand;
    cand.policy = Policy::Flexible;
    if (!detail::try_optimized_allocation(cfg, profile, z0, cand)) continue;
    best.rate_trace[z0 - 1] = cand.report.total;
    // feasible rotations always beat infeasible fallbacks
    const bool better =
        std::make_pair(cand.feasible, cand.report.total) >
        std::make_pair(best.feasible, best.report.total + 1e-12);
    if (!any || better) {
      const auto trace = best.rate_trace;
      best = cand;
      best.rate_trace = trace;
      any = true;
    }
  }
  if (!any) throw infeasible_error("no rotation admits a feasible allocation");
  return best;
}

/// Rotation frozen at z0 = 1, allocation optimized.
inline Plan plan_alloc_only(const CellConfig& cfg, const ZoneProfile& profile) {
  cfg.validate();
  profile.validate();
  Plan plan;
  plan.policy = Policy::AllocOnly;
  if (!detail::try_optimized_allocation(cfg, profile, 1, plan)) {
    // fall back to an equal split so the benchmark row still exists
    plan = detail::evaluate_fixed_allocation(
        Policy::AllocOnly, cfg, profile,
        detail::equal_split(cfg.total_antennas, cfg.sectors), 1);
    plan.feasible = false;
  }
  return plan;
}

/// Equal antenna split, rotation searched over {1..c}.
inline Plan plan_rotation_only(const CellConfig& cfg, const ZoneProfile& profile) {
  cfg.validate();
  profile.validate();
  const std::vector<int> n = detail::equal_split(cfg.total_antennas, cfg.sectors);
  const int c = cfg.zones_per_sector();
  Plan best;
  best.rate_trace.assign(c, 0.0);
  for (int z0 = 1; z0 <= c; ++z0) {
    Plan cand = detail::evaluate_fixed_allocation(Policy::RotationOnly, cfg,
                                                  profile, n, z0);
    best.rate_trace[z0 - 1] = cand.report.total;
    if (z0 == 1 || cand.report.total > best.report.total + 1e-12) {
      const auto trace = best.rate_trace;
      best = cand;
      best.rate_trace = trace;
    }
  }
  return best;
}

/// Conventional fixed-sector baseline: z0 = 1, equal split.
inline Plan plan_fixed(const CellConfig& cfg, const ZoneProfile& profile) {
  cfg.validate();
  profile.validate();
  return detail::evaluate_fixed_allocation(
      Policy::Fixed, cfg, profile,
      detail::equal_split(cfg.total_antennas, cfg.sectors), 1);
}

inline Plan make_plan(Policy policy, const CellConfig& cfg,
                      const ZoneProfile& profile) {
  switch (policy) {
    case Policy::Flexible: return optimize_flexible(cfg, profile);
    case Policy::AllocOnly: return plan_alloc_only(cfg, profile);
    case Policy::RotationOnly: return plan_rotation_only(cfg, profile);
    case Policy::Fixed: return plan_fixed(cfg, profile);
  }
  throw config_error("unknown policy");
}

}  // namespace flexsector

#endif  // FLEXSECTOR_PLANNER_HPP
