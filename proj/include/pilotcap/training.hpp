#ifndef PILOTCAP_TRAINING_HPP
#define PILOTCAP_TRAINING_HPP

// Worst-case capacity lower bound for single-pilot training over block
// Rayleigh fading: optimal pilot power split, effective SNR factor,
// the rate bound in nats/symbol, and bit energy in dB.

#include <cmath>
#include <stdexcept>
#include <string>

#include "pilotcap/errors.hpp"
#include "pilotcap/specfun.hpp"

namespace pilotcap {

constexpr double kLn2 = 0.69314718055994530942;

/// Minimum bit energy of any reliable scheme, 10 log10(ln 2) dB.
constexpr double kBitEnergyFloorDb = -1.5917000509358250142;

/// Physical channel parameters for one block-fading link.
struct ChannelConfig {
  int m;           // block length in symbols, >= 3
  double gamma_sq; // fading variance
  double n0;       // noise spectral level
  double p;        // average power per symbol

  double snr() const { return gamma_sq * p / n0; }
};

/// How one block's energy is split between the single pilot and data.
struct TrainingAllocation {
  double delta;                 // pilot power fraction, in (0,1)
  double pilot_power;           // |x_t|^2 = delta * m * P
  double data_power_per_symbol; // (1-delta) m P / (m-1)
};

enum class BoundKind { worst_case_single_pilot, flash, peak_pilot, perfect_csi };

/// One (SNR, rate, bit energy) sample of a capacity bound.
struct CapacityPoint {
  double snr;
  double rate_nats;
  double bit_energy_db; // +inf when rate is 0 at positive snr
  BoundKind bound_kind;
};

namespace detail {

inline void require_block_length(int m, const char* where) {
  if (m < 3)
    throw block_length_error(std::string(where) +
                             ": block length m must be >= 3, got " + std::to_string(m));
}

inline void require_positive_snr(double snr, const char* where) {
  if (!(snr > 0.0) || !std::isfinite(snr))
    throw std::invalid_argument(std::string(where) + ": snr must be finite and > 0");
}

} // namespace detail

/// Pilot power fraction maximizing the effective SNR:
/// delta* = sqrt(eta (eta + 1)) - eta with
/// eta = (m snr + (m-1)) / (m (m-2) snr).
inline double pilot_fraction(int m, double snr) {
  detail::require_block_length(m, "pilot_fraction");
  detail::require_positive_snr(snr, "pilot_fraction");
  const double md = m;
  const double eta = (md * snr + (md - 1.0)) / (md * (md - 2.0) * snr);
  return std::sqrt(eta * (eta + 1.0)) - eta;
}

inline TrainingAllocation optimal_pilot_fraction(const ChannelConfig& cfg, double snr) {
  const double delta = pilot_fraction(cfg.m, snr);
  TrainingAllocation a;
  a.delta = delta;
  a.pilot_power = delta * cfg.m * cfg.p;
  a.data_power_per_symbol = (1.0 - delta) * cfg.m * cfg.p / (cfg.m - 1.0);
  return a;
}

/// Effective SNR factor f(snr) inside the worst-case rate bound:
/// f = phi snr^2 / (psi snr + (m-1)) with phi = delta*(1-delta*) m^2 and
/// psi = (1 + (m-2) delta*) m. f(0) = 0 and f is increasing in snr.
inline double effective_snr_factor(int m, double snr) {
  detail::require_block_length(m, "effective_snr_factor");
  if (!(snr >= 0.0) || !std::isfinite(snr))
    throw std::invalid_argument("effective_snr_factor: snr must be finite and >= 0");
  if (snr == 0.0) return 0.0;
  const double md = m;
  const double delta = pilot_fraction(m, snr);
  const double phi = delta * (1.0 - delta) * md * md;
  const double psi = (1.0 + (md - 2.0) * delta) * md;
  return phi * snr * snr / (psi * snr + (md - 1.0));
}

/// Worst-case capacity lower bound in nats/symbol:
/// C_L = ((m-1)/m) E{log(1 + f(snr) |w|^2)}, |w|^2 ~ Exp(1).
inline double capacity_lower_bound(int m, double snr, const QuadratureRule& rule) {
  const double f = effective_snr_factor(m, snr);
  return (m - 1.0) / m * expected_log1p_exp(f, rule);
}

inline double capacity_lower_bound(int m, double snr, int quad_order = 96) {
  return capacity_lower_bound(m, snr, cached_gauss_laguerre(quad_order));
}

/// Capacity of the perfectly known channel, E{log(1 + snr |w|^2)}; the
/// large-m limit of the worst-case bound.
inline double perfect_csi_capacity(double snr) { return expected_log1p_exp(snr); }

inline double bit_energy_db_from_rate(double snr, double rate_nats) {
  if (!(snr > 0.0))
    throw std::invalid_argument("bit_energy_db_from_rate: snr must be > 0");
  if (rate_nats <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(snr * kLn2 / rate_nats);
}

/// Normalized bit energy 10 log10(snr ln2 / C_L(snr)) in dB. Diverges at
/// both snr -> 0 and snr -> inf.
inline double bit_energy_db(int m, double snr, const QuadratureRule& rule) {
  detail::require_positive_snr(snr, "bit_energy_db");
  return bit_energy_db_from_rate(snr, capacity_lower_bound(m, snr, rule));
}

inline double bit_energy_db(int m, double snr, int quad_order = 96) {
  return bit_energy_db(m, snr, cached_gauss_laguerre(quad_order));
}

/// Leading-order bit energy in linear units as snr -> 0: since
/// C_L ~ (m/4) snr^2 in that regime, E_b/N0 ~ 4 ln2 / (m snr).
inline double bit_energy_low_snr_asymptote(int m, double snr) {
  detail::require_block_length(m, "bit_energy_low_snr_asymptote");
  detail::require_positive_snr(snr, "bit_energy_low_snr_asymptote");
  return 4.0 * kLn2 / (m * snr);
}

/// Pilot power |x_t|^2 via the closed form sqrt(xi (xi + mP)) - xi,
/// xi = (m gamma^2 P + (m-1) N0) / ((m-2) gamma^2). Algebraically equal
/// to delta* m P; kept as an independent route for cross-checking.
inline double pilot_power_unconstrained(const ChannelConfig& cfg) {
  detail::require_block_length(cfg.m, "pilot_power_unconstrained");
  const double md = cfg.m;
  const double xi = (md * cfg.gamma_sq * cfg.p + (md - 1.0) * cfg.n0) /
                    ((md - 2.0) * cfg.gamma_sq);
  const double mp = md * cfg.p;
  return std::sqrt(xi * (xi + mp)) - xi;
}

} // namespace pilotcap

#endif
