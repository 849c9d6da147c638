#ifndef PILOTCAP_PEAK_PILOT_HPP
#define PILOTCAP_PEAK_PILOT_HPP

// Training with a per-pilot peak power cap |x_{t,i}|^2 <= kappa P. When
// the unconstrained single-pilot power delta* m P exceeds kappa P, the
// cap binds and l pilots of power exactly kappa P each are used; the
// achievable rate with l pilots is
//   I_{L,p}(l) = ((m-l)/m) E{log(1 + g(snr, l) |w|^2)}.
// The pilot count is optimized by exhaustive search.

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pilotcap/optimize.hpp"
#include "pilotcap/training.hpp"

namespace pilotcap {

struct PeakPilotConfig {
  int m;        // block length, >= 3
  double kappa; // peak-to-average power ratio of a pilot

  /// Largest admissible pilot count: l < m and m - l kappa > 0.
  int l_max() const {
    detail::require_block_length(m, "PeakPilotConfig");
    if (!(kappa > 0.0))
      throw std::invalid_argument("PeakPilotConfig: kappa must be > 0");
    const double eps = 1e-9;
    int lm = static_cast<int>(std::floor((m - eps) / kappa));
    return std::min(m - 1, lm);
  }

  void require_feasible() const {
    if (l_max() < 1)
      throw infeasible_config_error(
          "PeakPilotConfig: no admissible pilot count (kappa >= m), m=" +
          std::to_string(m) + " kappa=" + std::to_string(kappa));
  }

  void require_admissible(int l) const {
    if (l < 1 || l > l_max())
      throw std::invalid_argument("peak_pilot: pilot count l=" + std::to_string(l) +
                                  " outside admissible range [1, " +
                                  std::to_string(l_max()) + "]");
  }
};

/// Effective SNR factor with l pilots of power kappa P each:
/// g = l kappa (m - l kappa) snr^2 / ((m - l kappa + (m-l) l kappa) snr + m - l).
inline double g_factor(const PeakPilotConfig& cfg, int l, double snr) {
  cfg.require_admissible(l);
  if (!(snr >= 0.0) || !std::isfinite(snr))
    throw std::invalid_argument("g_factor: snr must be finite and >= 0");
  const double md = cfg.m;
  const double lk = l * cfg.kappa;
  return l * cfg.kappa * (md - lk) * snr * snr /
         ((md - lk + (md - l) * lk) * snr + (md - l));
}

/// Rate I_{L,p} in nats/symbol with l peak-power pilots.
inline double peak_capacity(const PeakPilotConfig& cfg, int l, double snr,
                            const QuadratureRule& rule) {
  const double g = g_factor(cfg, l, snr);
  return (cfg.m - l) / static_cast<double>(cfg.m) * expected_log1p_exp(g, rule);
}

inline double peak_capacity(const PeakPilotConfig& cfg, int l, double snr,
                            int quad_order = 96) {
  return peak_capacity(cfg, l, snr, cached_gauss_laguerre(quad_order));
}

/// Exhaustive search for the rate-maximizing pilot count. Ties within
/// 1e-12 relative rate break toward the smaller l.
inline std::pair<int, double> optimal_pilot_count(const PeakPilotConfig& cfg, double snr,
                                                  const QuadratureRule& rule) {
  detail::require_positive_snr(snr, "optimal_pilot_count");
  cfg.require_feasible();
  int best_l = 1;
  double best_rate = peak_capacity(cfg, 1, snr, rule);
  for (int l = 2; l <= cfg.l_max(); ++l) {
    const double r = peak_capacity(cfg, l, snr, rule);
    if (r > best_rate * (1.0 + 1e-12)) {
      best_rate = r;
      best_l = l;
    }
  }
  return {best_l, best_rate};
}

inline std::pair<int, double> optimal_pilot_count(const PeakPilotConfig& cfg, double snr,
                                                  int quad_order = 96) {
  return optimal_pilot_count(cfg, snr, cached_gauss_laguerre(quad_order));
}

/// Best achievable rate under the cap at a given snr. When the
/// unconstrained single-pilot power already satisfies the cap
/// (delta* m <= kappa), that allocation is admissible and the
/// unconstrained bound applies; otherwise the best pinned-power count.
inline double peak_best_rate(const PeakPilotConfig& cfg, double snr,
                             const QuadratureRule& rule) {
  double rate = optimal_pilot_count(cfg, snr, rule).second;
  if (pilot_fraction(cfg.m, snr) * cfg.m <= cfg.kappa)
    rate = std::max(rate, capacity_lower_bound(cfg.m, snr, rule));
  return rate;
}

/// Bit energy at a given snr under the peak constraint, in dB.
inline double peak_bit_energy_db(const PeakPilotConfig& cfg, double snr,
                                 const QuadratureRule& rule) {
  return bit_energy_db_from_rate(snr, peak_best_rate(cfg, snr, rule));
}

inline double peak_bit_energy_db(const PeakPilotConfig& cfg, double snr,
                                 int quad_order = 96) {
  return peak_bit_energy_db(cfg, snr, cached_gauss_laguerre(quad_order));
}

struct PeakMinResult {
  double snr_star;
  int l_star;
  double eb_min_db;
};

/// Joint minimization of the peak-constrained bit energy over snr (by
/// bracketed golden section on log-snr) and pilot count (exhaustive).
inline PeakMinResult min_bit_energy_peak(const PeakPilotConfig& cfg,
                                         const QuadratureRule& rule) {
  cfg.require_feasible();
  auto obj = [&](double snr) { return peak_bit_energy_db(cfg, snr, rule); };
  const auto r = detail::minimize_log_bracketed(obj, 1e-4, 10.0);
  return {r.x, optimal_pilot_count(cfg, r.x, rule).first, r.fx};
}

inline PeakMinResult min_bit_energy_peak(const PeakPilotConfig& cfg, int quad_order = 96) {
  return min_bit_energy_peak(cfg, cached_gauss_laguerre(quad_order));
}

} // namespace pilotcap

#endif
