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

#ifndef FLEXSECTOR_ALLOCATE_HPP
#define FLEXSECTOR_ALLOCATE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "flexsector/errors.hpp"
#include "flexsector/rate.hpp"

namespace flexsector {

/// Solution of the continuous relaxation for one rotation.
struct ContinuousAllocation {
  std::vector<double> n;       // n*_b
  double nu = 0.0;             // dual variable of the antenna budget
  std::vector<int> binding;    // sectors pinned at N_{b,min} (0-based)
  double residual = 0.0;       // |sum n*_b - N|
};

/// Integer allocation after rounding/repair, or from exhaustive search.
struct IntegerAllocation {
  std::vector<int> n;
  double sum_rate = 0.0;
  bool feasible = false;
};

namespace detail {

/// Per-sector antenna floor. Sectors with no users need no antennas;
/// min_rate = 0 keeps only the ZF feasibility floor N_b >= Q_b.
inline std::vector<double> continuous_minima(const std::vector<double>& q,
                                             double min_rate, int sectors,
                                             double gamma0) {
  std::vector<double> m(q.size(), 0.0);
  for (std::size_t b = 0; b < q.size(); ++b)
    if (q[b] > 0.0)
      m[b] = min_rate > 0.0 ? min_antennas(q[b], min_rate, sectors, gamma0) : q[b];
  return m;
}

inline std::vector<int> integer_minima(const std::vector<double>& minima) {
  std::vector<int> m(minima.size(), 0);
  for (std::size_t b = 0; b < minima.size(); ++b)
    if (minima[b] > 0.0)
      m[b] = static_cast<int>(std::ceil(minima[b] - 1e-9));
  return m;
}

/// Water level: sum of per-sector allocations at dual value nu.
inline double budget_at(double nu, const std::vector<double>& q,
                        const std::vector<double>& minima, int sectors,
                        double gamma0) {
  constexpr double ln2 = 0.6931471805599453;
  double total = 0.0;
  for (std::size_t b = 0; b < q.size(); ++b) {
    if (q[b] <= 0.0) continue;
    const double interior = q[b] * (1.0 + 1.0 / (nu * ln2)) - 1.0 / (sectors * gamma0);
    total += std::max(interior, minima[b]);
  }
  return total;
}

}  // namespace detail

/// Finds the unique dual value nu with sum_b max{...} = N by bisection.
/// The left side is strictly decreasing in nu on the interior region, so
/// the bracket, once it straddles N, pins nu uniquely.
inline double bisect_nu(const std::vector<double>& q, double total_antennas,
                        double min_rate, int sectors, double gamma0,
                        double tol = 1e-9) {
  if (!(tol > 0.0)) throw config_error("tolerance must be > 0");
  constexpr double ln2 = 0.6931471805599453;
  const std::vector<double> minima =
      detail::continuous_minima(q, min_rate, sectors, gamma0);
  const double min_total = std::accumulate(minima.begin(), minima.end(), 0.0);
  if (min_total > total_antennas + tol)
    throw infeasible_error(
        "antenna budget short of per-sector minima by " +
            std::to_string(min_total - total_antennas),
        min_total - total_antennas);

  const double k = std::accumulate(q.begin(), q.end(), 0.0);
  double lo = k / ((total_antennas + 1.0 / gamma0) * ln2) * 1e-3;
  double hi = k / ln2 * 1e3;

  // budget_at is decreasing: expand until f(lo) >= N >= f(hi).
  int expand = 0;
  while (detail::budget_at(lo, q, minima, sectors, gamma0) < total_antennas) {
    lo *= 0.5;
    if (++expand > 200) throw numerical_error("bisection bracket expansion failed (lo)");
  }
  expand = 0;
  while (detail::budget_at(hi, q, minima, sectors, gamma0) > total_antennas + tol) {
    hi *= 2.0;
    if (++expand > 200) throw numerical_error("bisection bracket expansion failed (hi)");
  }

  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = detail::budget_at(mid, q, minima, sectors, gamma0);
    if (f > total_antennas)
      lo = mid;
    else
      hi = mid;
    if (std::abs(f - total_antennas) <= tol && (hi - lo) <= 1e-13 * hi) return mid;
  }
  const double nu = 0.5 * (lo + hi);
  if (std::abs(detail::budget_at(nu, q, minima, sectors, gamma0) - total_antennas) > tol)
    throw numerical_error("bisection failed to meet budget tolerance");
  return nu;
}

/// Water-filling style solution of the continuous relaxation:
/// n*_b = max{ q_b (1 + 1/(nu ln2)) - 1/(B gamma0), N_{b,min} }.
inline ContinuousAllocation solve_continuous(const std::vector<double>& q,
                                             double total_antennas, double min_rate,
                                             int sectors, double gamma0,
                                             double tol = 1e-9) {
  constexpr double ln2 = 0.6931471805599453;
  const std::vector<double> minima =
      detail::continuous_minima(q, min_rate, sectors, gamma0);
  const double nu = bisect_nu(q, total_antennas, min_rate, sectors, gamma0, tol);

  ContinuousAllocation sol;
  sol.nu = nu;
  sol.n.resize(q.size(), 0.0);
  double total = 0.0;
  for (std::size_t b = 0; b < q.size(); ++b) {
    if (q[b] <= 0.0) continue;
    const double interior =
        q[b] * (1.0 + 1.0 / (nu * ln2)) - 1.0 / (sectors * gamma0);
    if (interior >= minima[b]) {
      sol.n[b] = interior;
    } else {
      sol.n[b] = minima[b];
      sol.binding.push_back(static_cast<int>(b));
    }
    total += sol.n[b];
  }
  sol.residual = std::abs(total - total_antennas);
  return sol;
}

namespace detail {

/// Marginal sum-rate gain of the (n_b+1)-th antenna in sector b.
inline double marginal_gain(double q_b, int n_b, int sectors, double gamma0) {
  if (q_b <= 0.0) return 0.0;
  return q_b * (rate_lower(n_b + 1, q_b, sectors, gamma0) -
                rate_lower(n_b, q_b, sectors, gamma0));
}

}  // namespace detail

/// Rounds the continuous solution to integers: floor, lift sectors under
/// their integer minimum, trim any overshoot from non-binding sectors by
/// smallest marginal loss, then spend leftover budget greedily by largest
/// marginal gain (ties to the lowest sector index). Greedy filling is
/// exact for this separable concave objective once the minima are fixed.
inline IntegerAllocation round_allocation(const ContinuousAllocation& cont,
                                          const std::vector<double>& q,
                                          double total_antennas, double min_rate,
                                          int sectors, double gamma0) {
  const int budget = static_cast<int>(std::floor(total_antennas + 1e-9));
  const std::vector<int> minima = detail::integer_minima(
      detail::continuous_minima(q, min_rate, sectors, gamma0));

  IntegerAllocation out;
  out.n.resize(q.size(), 0);
  int used = 0;
  for (std::size_t b = 0; b < q.size(); ++b) {
    if (q[b] <= 0.0) continue;
    out.n[b] = std::max(static_cast<int>(std::floor(cont.n[b] + 1e-9)), minima[b]);
    used += out.n[b];
  }

  if (used > budget) {
    // trim from sectors above their minimum, cheapest rate loss first
    while (used > budget) {
      int victim = -1;
      double best_loss = std::numeric_limits<double>::infinity();
      for (std::size_t b = 0; b < q.size(); ++b) {
        if (out.n[b] <= minima[b]) continue;
        const double loss = detail::marginal_gain(q[b], out.n[b] - 1, sectors, gamma0);
        if (loss < best_loss) {
          best_loss = loss;
          victim = static_cast<int>(b);
        }
      }
      if (victim < 0)
        throw infeasible_error("integer repair cannot satisfy minima within budget");
      --out.n[victim];
      --used;
    }
  }

  while (used < budget) {
    int winner = -1;
    double best_gain = -1.0;
    for (std::size_t b = 0; b < q.size(); ++b) {
      const double gain = detail::marginal_gain(q[b], out.n[b], sectors, gamma0);
      if (gain > best_gain + 1e-15) {
        best_gain = gain;
        winner = static_cast<int>(b);
      }
    }
    if (winner < 0 || best_gain <= 0.0) break;  // no sector benefits
    ++out.n[winner];
    ++used;
  }

  out.feasible = true;
  for (std::size_t b = 0; b < q.size(); ++b)
    if (q[b] > 0.0 && out.n[b] < minima[b]) out.feasible = false;
  out.sum_rate = sum_rate(out.n, q, sectors, gamma0);
  return out;
}

inline IntegerAllocation solve_integer(const std::vector<double>& q,
                                       double total_antennas, double min_rate,
                                       int sectors, double gamma0) {
  const auto cont = solve_continuous(q, total_antennas, min_rate, sectors, gamma0);
  return round_allocation(cont, q, total_antennas, min_rate, sectors, gamma0);
}

/// Exact integer optimum by enumerating nonnegative compositions of N.
/// Desk-scale oracle: refuses when C(N+B-1, B-1) exceeds `cap`.
inline IntegerAllocation exhaustive_alloc(const std::vector<double>& q,
                                          int total_antennas, double min_rate,
                                          int sectors, double gamma0,
                                          double cap = 1e7) {
  const int b_count = static_cast<int>(q.size());
  double compositions = 1.0;
  for (int i = 1; i < b_count; ++i)
    compositions *= static_cast<double>(total_antennas + i) / i;
  if (compositions > cap)
    throw config_error("composition count " + std::to_string(compositions) +
                       " exceeds enumeration cap");

  const std::vector<int> minima = detail::integer_minima(
      detail::continuous_minima(q, min_rate, sectors, gamma0));

  IntegerAllocation best;
  best.sum_rate = -1.0;
  std::vector<int> n(b_count, 0);

  // depth-first over compositions summing exactly to N; lexicographically
  // smallest allocation wins ties, so iterate in lexicographic order
  auto recurse = [&](auto&& self, int b, int left) -> void {
    if (b == b_count - 1) {
      n[b] = left;
      for (int i = 0; i < b_count; ++i)
        if (q[i] > 0.0 && n[i] < minima[i]) return;
      const double r = sum_rate(n, q, sectors, gamma0);
      if (r > best.sum_rate + 1e-12) {
        best.n = n;
        best.sum_rate = r;
        best.feasible = true;
      }
      return;
    }
    for (int v = 0; v <= left; ++v) {
      n[b] = v;
      self(self, b + 1, left - v);
    }
  };
  recurse(recurse, 0, total_antennas);

  if (!best.feasible)
    throw infeasible_error("no integer allocation satisfies the minima");
  return best;
}

}  // namespace flexsector

#endif  // FLEXSECTOR_ALLOCATE_HPP
