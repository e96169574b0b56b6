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

#include <algorithm>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "flexsector/planner.hpp"
#include "flexsector/rng.hpp"
#include "flexsector/scenario.hpp"

using namespace flexsector;

namespace {

// Exact joint optimum by enumerating every rotation and every integer
// allocation. Desk-scale oracle for small Z and N.
double joint_exhaustive(const CellConfig& cfg, const ZoneProfile& profile) {
  double best = -1.0;
  for (int z0 = 1; z0 <= cfg.zones_per_sector(); ++z0) {
    const auto q = users_per_sector(profile, build_sector_view(cfg, z0));
    try {
      const auto alloc = exhaustive_alloc(q, cfg.total_antennas, cfg.min_rate,
                                          cfg.sectors, cfg.snr0);
      best = std::max(best, alloc.sum_rate);
    } catch (const infeasible_error&) {
    }
  }
  return best;
}

}  // namespace

TEST(PolicyNames, RoundTrip) {
  for (Policy p : {Policy::Flexible, Policy::AllocOnly, Policy::RotationOnly,
                   Policy::Fixed})
    EXPECT_EQ(policy_from_name(policy_name(p)), p);
  EXPECT_THROW(policy_from_name("bogus"), config_error);
}

TEST(EqualSplit, RemainderGoesToLowestIndices) {
  EXPECT_EQ(detail::equal_split(10, 3), (std::vector<int>{4, 3, 3}));
  EXPECT_EQ(detail::equal_split(90, 3), (std::vector<int>{30, 30, 30}));
  EXPECT_EQ(detail::equal_split(7, 4), (std::vector<int>{2, 2, 2, 1}));
}

TEST(Flexible, QuasiUniformReferencePlan) {
  // the rotation that centers the heavy zones in one sector wins:
  // z0 = 6, n = (21, 48, 21), R about 275.19
  const Scenario s = scenario_distribution_I();
  const Plan plan = optimize_flexible(s.cell, s.profile);
  EXPECT_EQ(plan.rotation_index, 6);
  EXPECT_EQ(plan.allocation, (std::vector<int>{21, 48, 21}));
  EXPECT_NEAR(plan.report.total, 275.1900, 1e-3);
  EXPECT_TRUE(plan.feasible);
}

TEST(Flexible, TraceConsistentWithChoice) {
  const Scenario s = scenario_distribution_I();
  const Plan plan = optimize_flexible(s.cell, s.profile);
  ASSERT_EQ(plan.rate_trace.size(), 10u);
  EXPECT_NEAR(plan.rate_trace[plan.rotation_index - 1], plan.report.total, 1e-12);
  for (double r : plan.rate_trace)
    EXPECT_LE(r, plan.report.total + 1e-12);
}

TEST(Flexible, ProfileRotationBySectorWidthIsNeutral) {
  // shifting all users by a whole sector width only relabels sectors
  const Scenario s = scenario_distribution_II();
  const int c = s.cell.zones_per_sector();
  ZoneProfile rotated;
  rotated.expected_users.resize(30);
  for (int z = 1; z <= 30; ++z)
    rotated.expected_users[z - 1] =
        s.profile.expected_users[wrap_zone(z + c, 30) - 1];
  const Plan a = optimize_flexible(s.cell, s.profile);
  const Plan b = optimize_flexible(s.cell, rotated);
  EXPECT_NEAR(a.report.total, b.report.total, 1e-9);
}

TEST(Flexible, MatchesJointExhaustiveOnSmallInstances) {
  Rng rng(606);
  for (int rep = 0; rep < 25; ++rep) {
    CellConfig cfg;
    cfg.total_antennas = 12;
    cfg.sectors = 2;
    cfg.zones = 8;
    cfg.cell_radius = 50.0;
    cfg.snr0 = 0.5 + 2.0 * rng.uniform();
    cfg.min_rate = 0.0;
    ZoneProfile p;
    p.expected_users.resize(8);
    for (auto& k : p.expected_users)
      k = std::floor(3.0 * rng.uniform());
    if (p.total_users() == 0.0) p.expected_users[0] = 1.0;
    if (p.total_users() >= cfg.total_antennas) continue;  // keep ZF room
    const Plan plan = optimize_flexible(cfg, p);
    EXPECT_NEAR(plan.report.total, joint_exhaustive(cfg, p), 1e-9)
        << "rep " << rep;
  }
}

TEST(Flexible, InfeasibleRateFloorThrows) {
  Scenario s = scenario_distribution_I();
  s.cell.min_rate = 7.0;  // above log2(1 + 40) = 5.36
  EXPECT_THROW(optimize_flexible(s.cell, s.profile), infeasible_error);
}

TEST(Flexible, FallsBackWhenIntegerMinimaOverflowBudget) {
  // B = 30 splits the rate floor across so many sectors that the rounded
  // minima exceed N at every rotation; the plan still completes but is
  // flagged infeasible
  Scenario s = scenario_distribution_I();
  s.cell.sectors = 30;
  const Plan plan = optimize_flexible(s.cell, s.profile);
  EXPECT_FALSE(plan.feasible);
  EXPECT_EQ(std::accumulate(plan.allocation.begin(), plan.allocation.end(), 0),
            s.cell.total_antennas);
  EXPECT_GT(plan.report.total, 0.0);
}

TEST(Policies, DominanceChainOnBothDistributions) {
  for (const Scenario& s :
       {scenario_distribution_I(), scenario_distribution_II()}) {
    const double flexible = optimize_flexible(s.cell, s.profile).report.total;
    const double alloc_only = plan_alloc_only(s.cell, s.profile).report.total;
    const double rot_only = plan_rotation_only(s.cell, s.profile).report.total;
    const double fixed = plan_fixed(s.cell, s.profile).report.total;
    EXPECT_GE(flexible, alloc_only - 1e-9) << s.name;
    EXPECT_GE(flexible, rot_only - 1e-9) << s.name;
    EXPECT_GE(alloc_only, fixed - 1e-9) << s.name;
    EXPECT_GE(rot_only, fixed - 1e-9) << s.name;
  }
}

TEST(Policies, FixedBaselineOnQuasiUniform) {
  // equal split (30, 30, 30) cannot give the 20-user sectors their 5 bps/Hz
  const Scenario s = scenario_distribution_I();
  const Plan plan = plan_fixed(s.cell, s.profile);
  EXPECT_EQ(plan.rotation_index, 1);
  EXPECT_EQ(plan.allocation, (std::vector<int>{30, 30, 30}));
  EXPECT_FALSE(plan.feasible);
}

TEST(Policies, AllocOnlyMatchesReferenceRounding) {
  const Scenario s = scenario_distribution_I();
  const Plan plan = plan_alloc_only(s.cell, s.profile);
  EXPECT_EQ(plan.rotation_index, 1);
  EXPECT_EQ(plan.allocation, (std::vector<int>{21, 35, 34}));
  EXPECT_TRUE(plan.feasible);
}

TEST(Policies, RotationOnlyUniformProfileKeepsFirstRotation) {
  Scenario s = scenario_distribution_I();
  s.profile.expected_users.assign(30, 1.0);
  s.cell.min_rate = 0.0;
  const Plan plan = plan_rotation_only(s.cell, s.profile);
  EXPECT_EQ(plan.rotation_index, 1);
  for (double r : plan.rate_trace)
    EXPECT_NEAR(r, plan.report.total, 1e-9);
}

TEST(MakePlan, DispatchesEveryPolicy) {
  const Scenario s = scenario_distribution_II();
  for (Policy p : {Policy::Flexible, Policy::AllocOnly, Policy::RotationOnly,
                   Policy::Fixed}) {
    const Plan plan = make_plan(p, s.cell, s.profile);
    EXPECT_EQ(plan.policy, p);
    EXPECT_EQ(plan.allocation.size(), 3u);
  }
}
