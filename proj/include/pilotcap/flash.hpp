#ifndef PILOTCAP_FLASH_HPP
#define PILOTCAP_FLASH_HPP

// Duty-cycled ("flash") training and transmission: transmit a nu(snr)
// fraction of the time at power P/nu, achieving
//   C_fL(snr, nu) = nu(snr) C_L(snr / nu(snr)).
// Duty-cycle functions are classified by the limit of snr/nu(snr) as
// snr -> 0: zero (category 1), infinite (category 2), or a finite
// constant a (category 3). Only category 3 keeps the bit energy bounded.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pilotcap/optimize.hpp"
#include "pilotcap/training.hpp"

namespace pilotcap {

enum class DutyCycleCategory { category1, category2, category3 };

/// Duty-cycle function nu(snr), clamped to (0, 1].
/// Categories 1-2: nu = coeff * snr^exponent with exponent < 1 (cat 1)
/// or > 1 (cat 2). Category 3: nu = snr / scale.
struct FlashPolicy {
  DutyCycleCategory kind;
  double scale = 1.0;    // category 3: a, the limit of snr/nu
  double coeff = 1.0;    // categories 1-2
  double exponent = 0.5; // categories 1-2

  static FlashPolicy category1(double coeff, double exponent) {
    if (!(exponent < 1.0))
      throw std::invalid_argument("FlashPolicy: category 1 requires exponent < 1");
    return {DutyCycleCategory::category1, 1.0, coeff, exponent};
  }
  static FlashPolicy category2(double coeff, double exponent) {
    if (!(exponent > 1.0))
      throw std::invalid_argument("FlashPolicy: category 2 requires exponent > 1");
    return {DutyCycleCategory::category2, 1.0, coeff, exponent};
  }
  static FlashPolicy category3(double scale) {
    if (!(scale > 0.0))
      throw std::invalid_argument("FlashPolicy: category 3 requires scale > 0");
    return {DutyCycleCategory::category3, scale, 1.0, 1.0};
  }

  /// Duty cycle at the given snr, clamped into (0, 1].
  double nu(double snr) const {
    if (!(snr > 0.0))
      throw std::invalid_argument("FlashPolicy::nu: snr must be > 0");
    double v = (kind == DutyCycleCategory::category3)
                   ? snr / scale
                   : coeff * std::pow(snr, exponent);
    return std::min(v, 1.0);
  }
};

/// Flash rate C_fL(snr, nu) = nu C_L(snr/nu) in nats/symbol.
inline double flash_capacity(int m, double snr, const FlashPolicy& policy,
                             int quad_order = 96) {
  const double v = policy.nu(snr);
  return v * capacity_lower_bound(m, snr / v, quad_order);
}

/// Flash bit energy at a given snr, in dB.
inline double flash_bit_energy_db(int m, double snr, const FlashPolicy& policy,
                                  int quad_order = 96) {
  return bit_energy_db_from_rate(snr, flash_capacity(m, snr, policy, quad_order));
}

/// Low-snr limit of the flash bit energy. Categories 1 and 2 diverge;
/// category 3 converges to (m/(m-1)) a / E{log2(1 + f(a)|w|^2)}.
inline double flash_bit_energy_limit(int m, const FlashPolicy& policy,
                                     int quad_order = 96) {
  detail::require_block_length(m, "flash_bit_energy_limit");
  if (policy.kind != DutyCycleCategory::category3)
    return std::numeric_limits<double>::infinity();
  const double a = policy.scale;
  const double rate_bits =
      (m - 1.0) / m * expected_log1p_exp(effective_snr_factor(m, a), quad_order) / kLn2;
  return 10.0 * std::log10(a / rate_bits);
}

/// Bit-energy curve that switches to flash below the minimum-bit-energy
/// operating point a*: for snr < a*, nu(snr) = snr/a* holds the bit
/// energy at its minimum; above a*, plain transmission.
inline std::vector<CapacityPoint> composite_bit_energy_curve(
    int m, const std::vector<double>& snr_grid, int quad_order = 96) {
  if (snr_grid.empty())
    throw std::invalid_argument("composite_bit_energy_curve: empty grid");
  const double a_star = min_bit_energy(m, quad_order).snr_star;
  const auto flash = FlashPolicy::category3(a_star);
  std::vector<CapacityPoint> out;
  out.reserve(snr_grid.size());
  for (double snr : snr_grid) {
    CapacityPoint pt;
    pt.snr = snr;
    if (snr < a_star) {
      pt.rate_nats = flash_capacity(m, snr, flash, quad_order);
      pt.bound_kind = BoundKind::flash;
    } else {
      pt.rate_nats = capacity_lower_bound(m, snr, quad_order);
      pt.bound_kind = BoundKind::worst_case_single_pilot;
    }
    pt.bit_energy_db = bit_energy_db_from_rate(snr, pt.rate_nats);
    out.push_back(pt);
  }
  return out;
}

} // namespace pilotcap

#endif
