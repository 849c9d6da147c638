#ifndef PILOTCAP_MONTECARLO_HPP
#define PILOTCAP_MONTECARLO_HPP

// Simulation oracles: block-fading MMSE estimation with analytic
// variance cross-checks, and a sampling estimate of the worst-case rate
// bound. All runs are seeded and bit-reproducible: blocks are generated
// from a single mt19937_64 stream seeded with the caller's seed, drawn
// and accumulated in block order.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>

#include "pilotcap/training.hpp"

namespace pilotcap {

namespace detail {

// CN(0, var): two independent real normals of variance var/2.
inline std::complex<double> complex_normal(std::mt19937_64& rng, double var) {
  std::normal_distribution<double> n(0.0, std::sqrt(var / 2.0));
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

} // namespace detail

struct McReport {
  long n_blocks;
  std::uint64_t seed;
  double est_var_hhat;
  double est_var_htilde;
  double analytic_var_hhat;
  double analytic_var_htilde;
  double cross_corr; // sample correlation between estimate and error
  double std_error;  // standard error of est_var_hhat
};

/// Simulates n_blocks independent fading blocks, MMSE-estimates the
/// fading coefficient from a pilot of total energy pilot_energy, and
/// reports sample variances of the estimate and the estimation error
/// next to their analytic values
///   var(hhat)  = gamma^4 E_t / (gamma^2 E_t + N0),
///   var(htilde) = gamma^2 N0 / (gamma^2 E_t + N0).
inline McReport simulate_mmse(const ChannelConfig& cfg, double pilot_energy,
                              long n_blocks, std::uint64_t seed) {
  if (!(pilot_energy > 0.0) || !std::isfinite(pilot_energy))
    throw std::invalid_argument("simulate_mmse: pilot_energy must be finite and > 0");
  if (!(cfg.gamma_sq > 0.0) || !(cfg.n0 > 0.0) ||
      !std::isfinite(cfg.gamma_sq) || !std::isfinite(cfg.n0))
    throw std::invalid_argument("simulate_mmse: gamma_sq and n0 must be finite and > 0");
  if (n_blocks < 1000)
    throw std::invalid_argument("simulate_mmse: n_blocks must be >= 1000");

  const double g2 = cfg.gamma_sq;
  const double denom = g2 * pilot_energy + cfg.n0;
  // MMSE gain applied to the sufficient statistic x_t^dag y_t.
  const double gain = g2 / denom;

  std::mt19937_64 rng(seed);
  double sum_hhat = 0.0, sum_htilde = 0.0, sum_cross = 0.0, sum_hhat_sq = 0.0;
  for (long b = 0; b < n_blocks; ++b) {
    const auto h = detail::complex_normal(rng, g2);
    // x_t^dag n_t ~ CN(0, N0 ||x_t||^2); only the pilot energy matters.
    const auto proj_noise = detail::complex_normal(rng, cfg.n0 * pilot_energy);
    const auto hhat = gain * (h * pilot_energy + proj_noise);
    const auto htilde = h - hhat;
    const double ah = std::norm(hhat);
    sum_hhat += ah;
    sum_htilde += std::norm(htilde);
    sum_cross += (hhat * std::conj(htilde)).real();
    sum_hhat_sq += ah * ah;
  }

  McReport rep;
  rep.n_blocks = n_blocks;
  rep.seed = seed;
  rep.est_var_hhat = sum_hhat / n_blocks;
  rep.est_var_htilde = sum_htilde / n_blocks;
  rep.analytic_var_htilde = g2 * cfg.n0 / denom;
  // Orthogonal decomposition: var(hhat) = gamma^2 - var(htilde), which
  // keeps the sum identity exact in floating point.
  rep.analytic_var_hhat = g2 - rep.analytic_var_htilde;
  const double var_of_norm =
      sum_hhat_sq / n_blocks - rep.est_var_hhat * rep.est_var_hhat;
  rep.std_error = std::sqrt(var_of_norm / n_blocks);
  const double denom_corr =
      std::sqrt(rep.est_var_hhat * rep.est_var_htilde) * n_blocks;
  rep.cross_corr = sum_cross / denom_corr;
  return rep;
}

/// Sample-mean estimate of the worst-case rate bound:
/// mean of ((m-1)/m) log(1 + f(snr) |w|^2) over w ~ CN(0,1).
inline std::pair<double, double> empirical_capacity(int m, double snr, long n_samples,
                                                    std::uint64_t seed) {
  if (n_samples < 10000)
    throw std::invalid_argument("empirical_capacity: n_samples must be >= 10^4");
  if (!(snr >= 0.0) || !std::isfinite(snr))
    throw std::invalid_argument("empirical_capacity: snr must be finite and >= 0");
  const double f = effective_snr_factor(m, snr);
  if (f == 0.0) return {0.0, 0.0};
  const double prefactor = (m - 1.0) / m;

  std::mt19937_64 rng(seed);
  double sum = 0.0, sum_sq = 0.0;
  for (long i = 0; i < n_samples; ++i) {
    const double w2 = std::norm(detail::complex_normal(rng, 1.0));
    const double v = prefactor * std::log1p(f * w2);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / n_samples;
  const double var = sum_sq / n_samples - mean * mean;
  return {mean, std::sqrt(var / n_samples)};
}

} // namespace pilotcap

#endif
