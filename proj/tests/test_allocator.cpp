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
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "flexsector/allocate.hpp"
#include "flexsector/analysis.hpp"
#include "flexsector/rng.hpp"

using namespace flexsector;

namespace {

constexpr double kLn2 = 0.6931471805599453;

struct Instance {
  std::vector<double> q;
  double total_antennas = 0.0;
  double min_rate = 0.0;
  int sectors = 0;
  double gamma0 = 1.0;
};

// Random feasible instance: r_bar <= 0.95 * log2(1 + gamma0 (N - K))
// guarantees the per-sector minima fit the budget.
Instance random_instance(Rng& rng, int max_sectors = 6, int max_users = 60,
                         int max_antennas = 120) {
  Instance inst;
  inst.sectors = 2 + static_cast<int>((max_sectors - 1) * rng.uniform());
  inst.gamma0 = 0.1 + 9.9 * rng.uniform();
  double k = 0.0;
  inst.q.resize(inst.sectors);
  for (auto& q_b : inst.q) {
    q_b = rng.uniform() < 0.1 ? 0.0
                              : std::floor(1.0 + (max_users / inst.sectors - 1) *
                                                     rng.uniform());
    k += q_b;
  }
  if (k == 0.0) {
    inst.q[0] = 1.0;
    k = 1.0;
  }
  inst.total_antennas =
      std::floor(k + 2.0 + (max_antennas - k - 2.0) * rng.uniform());
  const double cap = max_min_rate(inst.total_antennas, k, inst.gamma0);
  inst.min_rate = 0.95 * cap * rng.uniform();
  return inst;
}

// The continuous minima always fit the budget by construction, but their
// rounded-up integer counterparts may not; integer-path tests need this.
bool integer_feasible(const Instance& inst) {
  const auto minima = detail::integer_minima(detail::continuous_minima(
      inst.q, inst.min_rate, inst.sectors, inst.gamma0));
  return std::accumulate(minima.begin(), minima.end(), 0) <=
         static_cast<int>(inst.total_antennas);
}

Instance random_integer_instance(Rng& rng, int max_sectors, int max_users,
                                 int max_antennas) {
  Instance inst;
  do {
    inst = random_instance(rng, max_sectors, max_users, max_antennas);
  } while (!integer_feasible(inst));
  return inst;
}

double objective(const std::vector<double>& n, const Instance& inst) {
  return sum_rate(n, inst.q, inst.sectors, inst.gamma0);
}

double gradient(double q_b, double n_b, const Instance& inst) {
  return q_b * inst.sectors * inst.gamma0 /
         ((1.0 + inst.sectors * inst.gamma0 * (n_b - q_b)) * kLn2);
}

}  // namespace

TEST(BudgetCurve, StrictlyDecreasingInDual) {
  const std::vector<double> q{10.0, 20.0, 20.0};
  const auto minima = detail::continuous_minima(q, 0.0, 3, 1.0);
  double prev = detail::budget_at(1e-3, q, minima, 3, 1.0);
  for (double nu = 1e-2; nu < 1e2; nu *= 1.5) {
    const double cur = detail::budget_at(nu, q, minima, 3, 1.0);
    EXPECT_LE(cur, prev);
    prev = cur;
  }
}

TEST(SolveContinuous, InteriorReferenceInstance) {
  // q = (10, 20, 20), N = 90, B = 3, gamma0 = 1, no rate floor:
  // nu = 50 / (41 ln2), n = (17.8667, 36.0667, 36.0667)
  const auto sol = solve_continuous({10.0, 20.0, 20.0}, 90.0, 0.0, 3, 1.0);
  EXPECT_NEAR(sol.nu, 50.0 / (41.0 * kLn2), 1e-6);
  EXPECT_NEAR(sol.n[0], 17.8666666667, 1e-6);
  EXPECT_NEAR(sol.n[1], 36.0666666667, 1e-6);
  EXPECT_NEAR(sol.n[2], 36.0666666667, 1e-6);
  EXPECT_TRUE(sol.binding.empty());
  EXPECT_LE(sol.residual, 1e-9);
}

TEST(SolveContinuous, BindingReferenceInstance) {
  // same instance with a 5 bps/Hz floor: sector 1 pins at 10 + 31/3
  const auto sol = solve_continuous({10.0, 20.0, 20.0}, 90.0, 5.0, 3, 1.0);
  ASSERT_EQ(sol.binding.size(), 1u);
  EXPECT_EQ(sol.binding[0], 0);
  EXPECT_NEAR(sol.n[0], 10.0 + 31.0 / 3.0, 1e-6);
  EXPECT_NEAR(sol.n[1], 34.8333333333, 1e-6);
  EXPECT_NEAR(sol.n[2], 34.8333333333, 1e-6);
  EXPECT_LE(sol.residual, 1e-9);
}

TEST(SolveContinuous, ThrowsWithDeficitWhenMinimaExceedBudget) {
  // q = (5, 5), B = 2, gamma0 = 1, r = 1: minima 5.5 each, budget 8
  try {
    solve_continuous({5.0, 5.0}, 8.0, 1.0, 2, 1.0);
    FAIL() << "expected infeasible_error";
  } catch (const infeasible_error& e) {
    EXPECT_NEAR(e.deficit(), 3.0, 1e-9);
  }
}

TEST(SolveContinuous, BudgetResidualProperty) {
  Rng rng(2024);
  for (int rep = 0; rep < 300; ++rep) {
    const Instance inst = random_instance(rng);
    const auto sol = solve_continuous(inst.q, inst.total_antennas, inst.min_rate,
                                      inst.sectors, inst.gamma0);
    EXPECT_LE(sol.residual, 1e-9) << "rep " << rep;
    const auto minima = detail::continuous_minima(inst.q, inst.min_rate,
                                                  inst.sectors, inst.gamma0);
    for (std::size_t b = 0; b < inst.q.size(); ++b)
      EXPECT_GE(sol.n[b], minima[b] - 1e-9);
  }
}

TEST(SolveContinuous, KktStationarityProperty) {
  // interior sectors share the dual value as their gradient; sectors pinned
  // at their floor have gradient at most the dual value
  Rng rng(4242);
  for (int rep = 0; rep < 300; ++rep) {
    const Instance inst = random_instance(rng);
    const auto sol = solve_continuous(inst.q, inst.total_antennas, inst.min_rate,
                                      inst.sectors, inst.gamma0);
    for (std::size_t b = 0; b < inst.q.size(); ++b) {
      if (inst.q[b] <= 0.0) continue;
      const double g = gradient(inst.q[b], sol.n[b], inst);
      const bool pinned = std::find(sol.binding.begin(), sol.binding.end(),
                                    static_cast<int>(b)) != sol.binding.end();
      if (pinned)
        EXPECT_LE(g, sol.nu * (1.0 + 1e-6)) << "rep " << rep << " sector " << b;
      else
        EXPECT_NEAR(g, sol.nu, 1e-6 * sol.nu) << "rep " << rep << " sector " << b;
    }
  }
}

TEST(SolveContinuous, NoFeasiblePerturbationImproves) {
  // oracle: random budget-neutral feasible perturbations never raise the
  // objective (first-order check of optimality)
  Rng rng(777);
  for (int rep = 0; rep < 100; ++rep) {
    const Instance inst = random_instance(rng);
    const auto sol = solve_continuous(inst.q, inst.total_antennas, inst.min_rate,
                                      inst.sectors, inst.gamma0);
    const double base = objective(sol.n, inst);
    const auto minima = detail::continuous_minima(inst.q, inst.min_rate,
                                                  inst.sectors, inst.gamma0);
    for (int dir = 0; dir < 20; ++dir) {
      std::vector<double> d(inst.q.size());
      double sum = 0.0;
      for (auto& di : d) {
        di = rng.uniform() - 0.5;
        sum += di;
      }
      for (auto& di : d) di -= sum / d.size();
      std::vector<double> n2 = sol.n;
      const double step = 1e-4;
      bool feasible = true;
      for (std::size_t b = 0; b < n2.size(); ++b) {
        n2[b] += step * d[b];
        if (inst.q[b] > 0.0 && n2[b] < minima[b]) feasible = false;
        if (inst.q[b] <= 0.0 && n2[b] != sol.n[b]) feasible = false;
      }
      if (!feasible) continue;
      EXPECT_LE(objective(n2, inst), base + 1e-8) << "rep " << rep;
    }
  }
}

TEST(SolveContinuous, InteriorMatchesClosedForm) {
  Rng rng(31);
  int interior_seen = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const Instance inst = random_instance(rng);
    bool all_positive = true;
    for (double q_b : inst.q) all_positive = all_positive && q_b > 0.0;
    if (!all_positive) continue;
    const double k = std::accumulate(inst.q.begin(), inst.q.end(), 0.0);
    const auto info = regime_info(inst.q, inst.min_rate, inst.total_antennas,
                                  inst.sectors, inst.gamma0);
    if (!info.interior) continue;
    // the closed form can sit below the ZF floor q_b; skip those edge cases
    bool above_floor = true;
    for (std::size_t b = 0; b < inst.q.size(); ++b)
      above_floor = above_floor && info.n[b] >= inst.q[b];
    if (!above_floor && inst.min_rate == 0.0) continue;
    ++interior_seen;
    const auto sol = solve_continuous(inst.q, inst.total_antennas, inst.min_rate,
                                      inst.sectors, inst.gamma0);
    EXPECT_NEAR(sol.nu, info.nu, 1e-6 * info.nu) << "rep " << rep;
    for (std::size_t b = 0; b < inst.q.size(); ++b)
      EXPECT_NEAR(sol.n[b], info.n[b], 1e-6) << "rep " << rep << " sector " << b;
    const double expect = sum_rate_interior(inst.q, k, inst.total_antennas,
                                            inst.sectors, inst.gamma0);
    EXPECT_NEAR(objective(sol.n, inst), expect, 1e-6 * std::abs(expect));
  }
  EXPECT_GE(interior_seen, 30);
}

TEST(RoundAllocation, ReferenceRoundingTrace) {
  // binding reference instance rounds to (21, 35, 34): after flooring to
  // (20, 34, 34) with the lift to ceil(20.33) = 21, the last antenna's
  // marginal gain is largest in sector 2
  const auto alloc = solve_integer({10.0, 20.0, 20.0}, 90.0, 5.0, 3, 1.0);
  EXPECT_EQ(alloc.n, (std::vector<int>{21, 35, 34}));
  EXPECT_TRUE(alloc.feasible);
  EXPECT_NEAR(alloc.sum_rate,
              sum_rate(alloc.n, {10.0, 20.0, 20.0}, 3, 1.0), 1e-12);
}

TEST(RoundAllocation, SpendsWholeBudget) {
  Rng rng(55);
  for (int rep = 0; rep < 200; ++rep) {
    const Instance inst = random_integer_instance(rng, 6, 60, 120);
    const auto alloc = solve_integer(inst.q, inst.total_antennas, inst.min_rate,
                                     inst.sectors, inst.gamma0);
    EXPECT_TRUE(alloc.feasible);
    const int used = std::accumulate(alloc.n.begin(), alloc.n.end(), 0);
    EXPECT_EQ(used, static_cast<int>(inst.total_antennas)) << "rep " << rep;
    for (std::size_t b = 0; b < inst.q.size(); ++b)
      if (inst.q[b] <= 0.0) EXPECT_EQ(alloc.n[b], 0);
  }
}

TEST(Exhaustive, TinyReferenceInstance) {
  // q = (1, 2), N = 6, B = 2, gamma0 = 1: optimum (2, 4),
  // R = log2(3) + 2 log2(5)
  const auto best = exhaustive_alloc({1.0, 2.0}, 6, 0.0, 2, 1.0);
  EXPECT_EQ(best.n, (std::vector<int>{2, 4}));
  EXPECT_NEAR(best.sum_rate, std::log2(3.0) + 2.0 * std::log2(5.0), 1e-12);
  const auto rounded = solve_integer({1.0, 2.0}, 6.0, 0.0, 2, 1.0);
  EXPECT_EQ(rounded.n, best.n);
}

TEST(Exhaustive, LexicographicTieBreak) {
  // symmetric q = (1, 1) with an odd budget: (2, 3) and (3, 2) tie,
  // the lexicographically smaller wins
  const auto best = exhaustive_alloc({1.0, 1.0}, 5, 0.0, 2, 1.0);
  EXPECT_EQ(best.n, (std::vector<int>{2, 3}));
}

TEST(Exhaustive, RefusesOversizedEnumeration) {
  EXPECT_THROW(exhaustive_alloc({1.0, 1.0, 1.0, 1.0}, 1000, 0.0, 4, 1.0),
               config_error);
}

TEST(Exhaustive, InfeasibleMinimaThrow) {
  EXPECT_THROW(exhaustive_alloc({5.0, 5.0}, 8, 1.0, 2, 1.0), infeasible_error);
}

TEST(RoundAllocation, NearOptimalOnSmallInstances) {
  Rng rng(909);
  for (int rep = 0; rep < 150; ++rep) {
    const Instance inst = random_integer_instance(rng, 4, 12, 24);
    const auto exact = exhaustive_alloc(inst.q,
                                        static_cast<int>(inst.total_antennas),
                                        inst.min_rate, inst.sectors, inst.gamma0);
    const auto rounded = solve_integer(inst.q, inst.total_antennas, inst.min_rate,
                                       inst.sectors, inst.gamma0);
    EXPECT_GE(rounded.sum_rate, 0.98 * exact.sum_rate) << "rep " << rep;
    EXPECT_LE(rounded.sum_rate, exact.sum_rate + 1e-9) << "rep " << rep;
    // the continuous relaxation upper-bounds every integer allocation
    const auto cont = solve_continuous(inst.q, inst.total_antennas, inst.min_rate,
                                       inst.sectors, inst.gamma0);
    EXPECT_GE(objective(cont.n, inst), exact.sum_rate - 1e-9) << "rep " << rep;
  }
}
