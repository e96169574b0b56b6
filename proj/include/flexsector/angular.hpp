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

#ifndef FLEXSECTOR_ANGULAR_HPP
#define FLEXSECTOR_ANGULAR_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "flexsector/errors.hpp"
#include "flexsector/rng.hpp"

namespace flexsector {

/// Global scenario parameters of one cell.
///
/// The track radius is metadata only: antennas ride a circular track of
/// radius `track_radius` but no rate expression depends on it.
struct CellConfig {
  int total_antennas = 1;   // N
  int sectors = 1;          // B
  int zones = 1;            // Z = c * B
  double cell_radius = 1.0; // D [m]
  double track_radius = 0.0;
  double snr0 = 1.0;        // gamma0, linear
  double min_rate = 0.0;    // r_bar [bps/Hz]

  int zones_per_sector() const { return zones / sectors; }  // c
  double zone_angle() const { return 2.0 * std::numbers::pi / zones; }  // psi
  double sector_angle() const { return 2.0 * std::numbers::pi / sectors; }  // Phi

  void validate() const {
    if (total_antennas < 1) throw config_error("total_antennas must be >= 1");
    if (sectors < 1) throw config_error("sectors must be >= 1");
    if (zones < 1) throw config_error("zones must be >= 1");
    if (zones % sectors != 0)
      throw config_error("zones (" + std::to_string(zones) +
                         ") must be an integer multiple of sectors (" +
                         std::to_string(sectors) + ")");
    if (!(cell_radius > 0.0)) throw config_error("cell_radius must be > 0");
    if (track_radius < 0.0) throw config_error("track_radius must be >= 0");
    if (!(snr0 > 0.0)) throw config_error("snr0 must be > 0");
    if (min_rate < 0.0) throw config_error("min_rate must be >= 0");
  }
};

/// Angular-domain user distribution: expected user count per zone.
/// Densities relate through K_z = psi * D^2 * lambda_z / 2.
struct ZoneProfile {
  std::vector<double> expected_users;  // K_z, index z-1

  int zone_count() const { return static_cast<int>(expected_users.size()); }

  double total_users() const {
    double k = 0.0;
    for (double kz : expected_users) k += kz;
    return k;
  }

  void validate() const {
    for (double kz : expected_users)
      if (!(kz >= 0.0)) throw config_error("zone user counts must be >= 0");
    if (!(total_users() > 0.0)) throw config_error("total user count must be > 0");
  }

  static ZoneProfile from_densities(const std::vector<double>& lambda,
                                    double cell_radius) {
    ZoneProfile p;
    const double psi = 2.0 * std::numbers::pi / static_cast<double>(lambda.size());
    p.expected_users.reserve(lambda.size());
    for (double l : lambda)
      p.expected_users.push_back(0.5 * psi * cell_radius * cell_radius * l);
    return p;
  }
};

/// 1-based zone index wrap into {1..Z}.
inline int wrap_zone(int raw, int zones) {
  int w = (raw - 1) % zones;
  if (w < 0) w += zones;
  return w + 1;
}

/// Rotation-indexed partition of zones into sectors.
struct SectorView {
  int rotation_index = 1;                   // z0 in {1..c}
  std::vector<std::vector<int>> zone_sets;  // per sector, c zone indices, ccw

  int sector_count() const { return static_cast<int>(zone_sets.size()); }
};

/// Sector b owns zones {z0+(b-1)c, ..., z0+bc-1} wrapped into 1..Z.
inline SectorView build_sector_view(const CellConfig& cfg, int z0) {
  cfg.validate();
  const int c = cfg.zones_per_sector();
  if (z0 < 1 || z0 > c)
    throw config_error("rotation index z0=" + std::to_string(z0) +
                       " outside {1.." + std::to_string(c) + "}");
  SectorView view;
  view.rotation_index = z0;
  view.zone_sets.resize(cfg.sectors);
  for (int b = 0; b < cfg.sectors; ++b) {
    view.zone_sets[b].reserve(c);
    for (int j = 0; j < c; ++j)
      view.zone_sets[b].push_back(wrap_zone(z0 + b * c + j, cfg.zones));
  }
  return view;
}

/// Expected users per sector: Q_b = sum of K_z over the sector's zones.
inline std::vector<double> users_per_sector(const ZoneProfile& profile,
                                            const SectorView& view) {
  int covered = 0;
  for (const auto& zs : view.zone_sets) covered += static_cast<int>(zs.size());
  if (covered != profile.zone_count())
    throw config_error("zone profile has " + std::to_string(profile.zone_count()) +
                       " zones but sector view covers " + std::to_string(covered));
  std::vector<double> q(view.zone_sets.size(), 0.0);
  for (std::size_t b = 0; b < view.zone_sets.size(); ++b)
    for (int z : view.zone_sets[b]) q[b] += profile.expected_users[z - 1];
  return q;
}

enum class SamplingMode {
  FixedCount,  // exactly round(K_z) users per zone (default)
  Poisson,     // Poisson(K_z) users per zone
};

/// One sampled set of user positions.
struct UserRealization {
  struct User {
    double radius = 0.0;   // [0, D]
    double azimuth = 0.0;  // [0, 2pi)
    int zone = 1;          // home zone, 1-based
  };
  std::vector<User> users;
  std::uint64_t seed = 0;
};

/// Draws user positions zone by zone: counts per SamplingMode, positions
/// uniform over the zone's angular slice (radius D*sqrt(u) for uniform
/// area density). Zone 1 starts at azimuth 0, zones ordered ccw.
inline UserRealization sample_users(const ZoneProfile& profile,
                                    const CellConfig& cfg, std::uint64_t seed,
                                    SamplingMode mode = SamplingMode::FixedCount) {
  cfg.validate();
  if (profile.zone_count() != cfg.zones)
    throw config_error("zone profile size does not match config zones");
  const double psi = cfg.zone_angle();
  UserRealization real;
  real.seed = seed;
  for (int z = 1; z <= cfg.zones; ++z) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(z)));
    const double kz = profile.expected_users[z - 1];
    const int count = mode == SamplingMode::FixedCount
                          ? static_cast<int>(std::llround(kz))
                          : rng.poisson(kz);
    for (int i = 0; i < count; ++i) {
      UserRealization::User u;
      u.zone = z;
      u.radius = cfg.cell_radius * std::sqrt(rng.uniform());
      u.azimuth = (static_cast<double>(z - 1) + rng.uniform()) * psi;
      real.users.push_back(u);
    }
  }
  return real;
}

}  // namespace flexsector

#endif  // FLEXSECTOR_ANGULAR_HPP
