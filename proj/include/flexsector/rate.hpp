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

#ifndef FLEXSECTOR_RATE_HPP
#define FLEXSECTOR_RATE_HPP

#include <cmath>
#include <string>
#include <vector>

#include "flexsector/angular.hpp"
#include "flexsector/errors.hpp"

namespace flexsector {

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

/// Per-user rate upper bound: log2(1 + B*gamma0*(N_b - Q_b + 1)^+).
inline double rate_upper(double n_b, double q_b, int sectors, double gamma0) {
  return std::log2(1.0 + sectors * gamma0 * positive_part(n_b - q_b + 1.0));
}

/// Per-user rate lower bound: log2(1 + B*gamma0*(N_b - Q_b)^+).
/// Adopted as the design objective everywhere downstream.
inline double rate_lower(double n_b, double q_b, int sectors, double gamma0) {
  return std::log2(1.0 + sectors * gamma0 * positive_part(n_b - q_b));
}

/// Antennas sector b needs for every user to reach min_rate:
/// Q_b + (2^r - 1) / (B*gamma0).
inline double min_antennas(double q_b, double min_rate, int sectors, double gamma0) {
  return q_b + (std::exp2(min_rate) - 1.0) / (sectors * gamma0);
}

/// Largest feasible common minimum rate: log2(1 + gamma0*(N - K)),
/// 0 when K >= N.
inline double max_min_rate(double total_antennas, double total_users, double gamma0) {
  if (total_antennas <= total_users) return 0.0;
  return std::log2(1.0 + gamma0 * (total_antennas - total_users));
}

/// Sum-rate lower bound over all sectors for a given allocation.
/// Sectors with Q_b = 0 contribute exactly 0.
inline double sum_rate(const std::vector<double>& n, const std::vector<double>& q,
                       int sectors, double gamma0) {
  if (n.size() != q.size())
    throw config_error("allocation length " + std::to_string(n.size()) +
                       " does not match sector count " + std::to_string(q.size()));
  double r = 0.0;
  for (std::size_t b = 0; b < n.size(); ++b)
    if (q[b] > 0.0) r += q[b] * rate_lower(n[b], q[b], sectors, gamma0);
  return r;
}

inline double sum_rate(const std::vector<int>& n, const std::vector<double>& q,
                       int sectors, double gamma0) {
  return sum_rate(std::vector<double>(n.begin(), n.end()), q, sectors, gamma0);
}

/// Per-sector rates plus the total for one (allocation, rotation) choice.
struct RateReport {
  std::vector<double> per_user_lower;  // r_b^(l)
  std::vector<double> per_user_upper;  // r_b^(u)
  std::vector<double> sector_sum;      // R_b = Q_b * r_b^(l)
  double total = 0.0;                  // R
  std::vector<double> allocation;      // n that produced it
  int rotation_index = 1;              // z0
};

inline RateReport make_rate_report(const std::vector<double>& n,
                                   const std::vector<double>& q, int sectors,
                                   double gamma0, int z0) {
  if (n.size() != q.size())
    throw config_error("allocation/user vector length mismatch");
  RateReport rep;
  rep.allocation = n;
  rep.rotation_index = z0;
  rep.per_user_lower.resize(n.size());
  rep.per_user_upper.resize(n.size());
  rep.sector_sum.resize(n.size());
  for (std::size_t b = 0; b < n.size(); ++b) {
    rep.per_user_lower[b] = rate_lower(n[b], q[b], sectors, gamma0);
    rep.per_user_upper[b] = rate_upper(n[b], q[b], sectors, gamma0);
    rep.sector_sum[b] = q[b] > 0.0 ? q[b] * rep.per_user_lower[b] : 0.0;
    rep.total += rep.sector_sum[b];
  }
  return rep;
}

inline RateReport total_sum_rate(const std::vector<double>& n,
                                 const ZoneProfile& profile, const SectorView& view,
                                 const CellConfig& cfg) {
  return make_rate_report(n, users_per_sector(profile, view), cfg.sectors,
                          cfg.snr0, view.rotation_index);
}

}  // namespace flexsector

#endif  // FLEXSECTOR_RATE_HPP
