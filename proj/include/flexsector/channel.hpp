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

#ifndef FLEXSECTOR_CHANNEL_HPP
#define FLEXSECTOR_CHANNEL_HPP

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "flexsector/errors.hpp"
#include "flexsector/parallel.hpp"
#include "flexsector/rng.hpp"

namespace flexsector {

/// Truncated directional pattern: gain 2pi/Phi = B inside the sector
/// beamwidth Phi = 2pi/B, zero outside. B = 1 is the omnidirectional case.
inline double antenna_gain(double phi, int sectors) {
  if (sectors < 1) throw config_error("sectors must be >= 1");
  const double half_width = std::numbers::pi / sectors;  // Phi/2
  return (phi >= -half_width && phi <= half_width)
             ? static_cast<double>(sectors)
             : 0.0;
}

/// i.i.d. CN(0,1) fading matrix, N_b x Q_b.
inline Eigen::MatrixXcd sample_fading(int n_b, int q_b, Rng& rng) {
  constexpr double inv_sqrt2 = 0.7071067811865475244;
  Eigen::MatrixXcd g(n_b, q_b);
  for (int col = 0; col < q_b; ++col)
    for (int row = 0; row < n_b; ++row) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(row, col) = std::complex<double>(re * inv_sqrt2, im * inv_sqrt2);
    }
  return g;
}

/// One sampled sector channel with explicit large-scale gains.
/// After channel-inversion power control P_k = P0 / zeta_k, the effective
/// per-user received power is B*P0 regardless of zeta_k.
struct ChannelDraw {
  Eigen::MatrixXcd fading;      // G, N_b x Q_b
  std::vector<double> zeta;     // per-user average power gain
  int sectors = 1;              // B (linear gain factor)
  double gamma0 = 1.0;          // P0 / delta^2

  /// Effective channel seen by the receiver with unit-power symbols:
  /// column k is sqrt(P_k * B * zeta_k) g_k = sqrt(B * P0) g_k.
  Eigen::MatrixXcd effective() const {
    return std::sqrt(static_cast<double>(sectors)) * fading;
  }
};

/// Default path-loss model for realizations. The paper's rate math never
/// depends on it (channel inversion cancels it), which is itself a tested
/// invariant.
inline double path_loss_gain(double radius, double cell_radius,
                             double exponent = 3.5, double min_radius = 1.0) {
  const double r = std::max(radius, min_radius);
  return std::pow(r / cell_radius, -exponent);
}

inline ChannelDraw draw_channel(int n_b, const std::vector<double>& zeta,
                                int sectors, double gamma0, Rng& rng) {
  const int q_b = static_cast<int>(zeta.size());
  if (n_b < q_b)
    throw infeasible_error("ZF needs N_b >= Q_b (" + std::to_string(n_b) + " < " +
                           std::to_string(q_b) + ")");
  ChannelDraw d;
  d.fading = sample_fading(n_b, q_b, rng);
  d.zeta = zeta;
  d.sectors = sectors;
  d.gamma0 = gamma0;
  return d;
}

namespace detail {

/// Relative rank tolerance on the Gram diagonal.
constexpr double kRankTol = 1e-10;

/// Cholesky of H^H H with a diagonal-based rank check. Throws
/// numerical_error on (numerically) rank-deficient draws; callers that
/// sample channels resample instead of propagating.
inline Eigen::LLT<Eigen::MatrixXcd> gram_cholesky(const Eigen::MatrixXcd& h) {
  if (h.rows() < h.cols())
    throw infeasible_error("ZF needs N_b >= Q_b (" + std::to_string(h.rows()) +
                           " < " + std::to_string(h.cols()) + ")");
  const int q = static_cast<int>(h.cols());
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(q, q);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(h.adjoint());
  gram = gram.selfadjointView<Eigen::Lower>();
  const double scale = gram.diagonal().real().maxCoeff();
  Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  if (llt.info() != Eigen::Success ||
      llt.matrixLLT().diagonal().real().minCoeff() <=
          std::sqrt(kRankTol * scale))
    throw numerical_error("rank-deficient channel draw");
  return llt;
}

}  // namespace detail

/// Unit-norm ZF combiners: columns of H (H^H H)^-1, normalized.
inline Eigen::MatrixXcd zf_combiners(const Eigen::MatrixXcd& h) {
  const auto llt = detail::gram_cholesky(h);
  Eigen::MatrixXcd w = h * llt.solve(
      Eigen::MatrixXcd::Identity(h.cols(), h.cols()));
  for (int k = 0; k < w.cols(); ++k) w.col(k).normalize();
  return w;
}

/// Post-ZF SNR per user: gamma_k = B*gamma0 / [(G^H G)^-1]_{k,k}.
inline std::vector<double> per_user_snr(const Eigen::MatrixXcd& g, int sectors,
                                        double gamma0) {
  const auto llt = detail::gram_cholesky(g);
  const int q = static_cast<int>(g.cols());
  const Eigen::MatrixXcd inv =
      llt.solve(Eigen::MatrixXcd::Identity(q, q));
  std::vector<double> snr(q);
  for (int k = 0; k < q; ++k)
    snr[k] = sectors * gamma0 / inv(k, k).real();
  return snr;
}

/// Alternate route to the same SNR via the combiner inner product,
/// gamma_k = B*gamma0 * |w_k^H g_k|^2. Agrees with per_user_snr to
/// floating-point accuracy on every draw (tested).
inline std::vector<double> per_user_snr_via_combiners(const Eigen::MatrixXcd& g,
                                                      int sectors, double gamma0) {
  const Eigen::MatrixXcd w = zf_combiners(g);
  std::vector<double> snr(g.cols());
  for (int k = 0; k < g.cols(); ++k) {
    const double gain = std::norm(w.col(k).dot(g.col(k)));
    snr[k] = sectors * gamma0 * gain;
  }
  return snr;
}

/// Monte-Carlo estimate with its standard error.
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
};

/// Per-trial ZF effective gains X = 1 / [(G^H G)^-1]_{1,1} for user 1.
/// The fading draw does not depend on B or gamma0, so one gain table
/// serves every (B, gamma0) combination at fixed (N_b, Q_b).
/// Deterministic for fixed seed, independent of thread count.
inline std::vector<double> mc_effective_gains(int n_b, int q_b, int trials,
                                              std::uint64_t seed) {
  if (q_b < 1 || n_b < q_b)
    throw infeasible_error("need N_b >= Q_b >= 1, got N_b=" + std::to_string(n_b) +
                           " Q_b=" + std::to_string(q_b));
  if (trials < 1) throw config_error("trials must be >= 1");
  std::vector<double> gains(trials);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    Rng rng(mix_seed(seed, t));
    for (;;) {
      const Eigen::MatrixXcd g = sample_fading(n_b, q_b, rng);
      try {
        const auto llt = detail::gram_cholesky(g);
        Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(q_b);
        e1(0) = 1.0;
        gains[t] = 1.0 / llt.solve(e1)(0).real();
        break;
      } catch (const numerical_error&) {
        // rank-deficient draw: resample from the same stream
      }
    }
  });
  return gains;
}

inline McEstimate estimate_from_rates(const std::vector<double>& rates,
                                      std::uint64_t seed) {
  const int n = static_cast<int>(rates.size());
  double mean = 0.0;
  for (double r : rates) mean += r;
  mean /= n;
  double var = 0.0;
  for (double r : rates) var += (r - mean) * (r - mean);
  var = n > 1 ? var / (n - 1) : 0.0;
  McEstimate est;
  est.mean = mean;
  est.std_error = std::sqrt(var / n);
  est.trials = n;
  est.seed = seed;
  return est;
}

/// Ergodic per-user rate E[log2(1 + B*gamma0*X)] by Monte-Carlo over the
/// Rayleigh fading. User index 1 is representative: columns are i.i.d.,
/// so every user has the same marginal rate.
inline McEstimate mc_ergodic_rate(int n_b, int q_b, int sectors, double gamma0,
                                  int trials, std::uint64_t seed) {
  const std::vector<double> gains = mc_effective_gains(n_b, q_b, trials, seed);
  std::vector<double> rates(gains.size());
  for (std::size_t i = 0; i < gains.size(); ++i)
    rates[i] = std::log2(1.0 + sectors * gamma0 * gains[i]);
  return estimate_from_rates(rates, seed);
}

}  // namespace flexsector

#endif  // FLEXSECTOR_CHANNEL_HPP
