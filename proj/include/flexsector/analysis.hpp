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

#ifndef FLEXSECTOR_ANALYSIS_HPP
#define FLEXSECTOR_ANALYSIS_HPP

#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "flexsector/errors.hpp"
#include "flexsector/rate.hpp"

namespace flexsector {

/// Closed-form regime facts for one instance.
struct RegimeInfo {
  double threshold = 0.0;        // r_bar_0
  bool interior = false;         // min_rate <= r_bar_0
  double nu = 0.0;               // closed-form dual
  std::vector<double> n;         // closed-form allocation
};

/// Largest min-rate for which no antenna floor binds:
/// log2(B * Q_min * [(N-K) gamma0 + 1] / K).
inline double regime_threshold(double total_users, double total_antennas,
                               int sectors, double gamma0, double q_min) {
  if (!(total_antennas > total_users))
    throw infeasible_error("interior regime needs N > K");
  return std::log2(sectors * q_min * ((total_antennas - total_users) * gamma0 + 1.0) /
                   total_users);
}

/// Interior-regime allocation: nu = K / ((N - K + 1/gamma0) ln2),
/// n*_b = (Q_b / K)(N + 1/gamma0) - 1/(B gamma0). Sums to N identically.
inline std::pair<double, std::vector<double>> closed_form_allocation(
    const std::vector<double>& q, double total_users, double total_antennas,
    int sectors, double gamma0) {
  constexpr double ln2 = 0.6931471805599453;
  const double nu =
      total_users / ((total_antennas - total_users + 1.0 / gamma0) * ln2);
  std::vector<double> n(q.size());
  for (std::size_t b = 0; b < q.size(); ++b)
    n[b] = q[b] / total_users * (total_antennas + 1.0 / gamma0) -
           1.0 / (sectors * gamma0);
  return {nu, n};
}

/// Interior-regime sum rate: sum_b Q_b log2(B gamma0 (Q_b/K)(N - K + 1/gamma0)),
/// with the limit convention 0 * log2(0) = 0 for empty sectors.
inline double sum_rate_interior(const std::vector<double>& q, double total_users,
                                double total_antennas, int sectors, double gamma0) {
  const double eta = sectors * gamma0 *
                     (total_antennas - total_users + 1.0 / gamma0) / total_users;
  double r = 0.0;
  for (double q_b : q)
    if (q_b > 0.0) r += q_b * std::log2(q_b * eta);
  return r;
}

inline RegimeInfo regime_info(const std::vector<double>& q, double min_rate,
                              double total_antennas, int sectors, double gamma0) {
  const double k = std::accumulate(q.begin(), q.end(), 0.0);
  double q_min = 0.0;
  for (double q_b : q)
    if (q_b > 0.0 && (q_min == 0.0 || q_b < q_min)) q_min = q_b;
  RegimeInfo info;
  info.threshold = regime_threshold(k, total_antennas, sectors, gamma0, q_min);
  info.interior = min_rate <= info.threshold;
  auto [nu, n] = closed_form_allocation(q, k, total_antennas, sectors, gamma0);
  info.nu = nu;
  info.n = std::move(n);
  return info;
}

/// Extremal user distributions over sectors for fixed K and their rates.
struct ExtremalResult {
  std::vector<double> maximizer;       // (K-B+1, 1, ..., 1), needs Q_b >= 1
  std::vector<double> maximizer_alloc;
  std::vector<double> favorable;       // (K, 0, ..., 0), unconstrained pattern
  std::vector<double> minimizer;       // uniform K/B
  std::vector<double> minimizer_alloc; // uniform N/B
  double rate_max = 0.0;               // K log2(1 + B gamma0 (N - K))
  double rate_min = 0.0;               // K log2(1 + gamma0 (N - K))
  double gap_per_user = 0.0;           // (rate_max - rate_min) / K
  double asymptotic_gap = 0.0;         // log2 B
};

inline ExtremalResult extremal_distributions(double total_users, int sectors,
                                             double total_antennas, double gamma0) {
  if (total_users < sectors)
    throw config_error("constrained maximizer needs K >= B");
  ExtremalResult res;

  res.maximizer.assign(sectors, 1.0);
  res.maximizer[0] = total_users - sectors + 1.0;
  res.maximizer_alloc.resize(sectors);
  res.maximizer_alloc[0] = res.maximizer[0] / total_users *
                               (total_antennas + 1.0 / gamma0) -
                           1.0 / (sectors * gamma0);
  for (int b = 1; b < sectors; ++b)
    res.maximizer_alloc[b] =
        (total_antennas - res.maximizer_alloc[0]) / (sectors - 1);

  res.favorable.assign(sectors, 0.0);
  res.favorable[0] = total_users;

  res.minimizer.assign(sectors, total_users / sectors);
  res.minimizer_alloc.assign(sectors, total_antennas / sectors);

  res.rate_max = total_users *
                 std::log2(1.0 + sectors * gamma0 * (total_antennas - total_users));
  res.rate_min =
      total_users * std::log2(1.0 + gamma0 * (total_antennas - total_users));
  res.gap_per_user = (res.rate_max - res.rate_min) / total_users;
  res.asymptotic_gap = std::log2(static_cast<double>(sectors));
  return res;
}

/// Per-user rate gap between the most and least favorable distributions,
/// and its large-N limit log2(B).
inline std::pair<double, double> theorem1_gap(int sectors, double total_antennas,
                                              double total_users, double gamma0) {
  const double finite =
      std::log2((1.0 + sectors * gamma0 * (total_antennas - total_users)) /
                (1.0 + gamma0 * (total_antennas - total_users)));
  return {finite, std::log2(static_cast<double>(sectors))};
}

/// Comparison of a B0-sector layout against a 2*B0 refinement of it.
struct SectorSplitResult {
  double rate_coarse = 0.0;  // R^(I)
  double rate_fine = 0.0;    // R^(II)
  bool equal = false;        // true iff every pair splits evenly
};

/// Doubling the sector count never hurts the interior-regime sum rate;
/// it helps strictly unless every coarse sector splits its users evenly.
inline SectorSplitResult sector_split_compare(const std::vector<double>& q_coarse,
                                              const std::vector<double>& q_fine,
                                              double total_antennas,
                                              double total_users, double gamma0) {
  const int b0 = static_cast<int>(q_coarse.size());
  if (static_cast<int>(q_fine.size()) != 2 * b0)
    throw config_error("fine layout must have twice the sectors of the coarse one");
  bool even = true;
  for (int i = 0; i < b0; ++i) {
    const double lhs = q_fine[2 * i] + q_fine[2 * i + 1];
    if (std::abs(lhs - q_coarse[i]) > 1e-9 * std::max(1.0, q_coarse[i]))
      throw config_error("pair " + std::to_string(i) +
                         " of the fine layout does not sum to its coarse sector");
    if (std::abs(q_fine[2 * i] - q_fine[2 * i + 1]) > 1e-12) even = false;
  }
  SectorSplitResult res;
  res.rate_coarse =
      sum_rate_interior(q_coarse, total_users, total_antennas, b0, gamma0);
  res.rate_fine =
      sum_rate_interior(q_fine, total_users, total_antennas, 2 * b0, gamma0);
  res.equal = even;
  return res;
}

}  // namespace flexsector

#endif  // FLEXSECTOR_ANALYSIS_HPP
