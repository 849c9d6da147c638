#ifndef PILOTCAP_OPTIMIZE_HPP
#define PILOTCAP_OPTIMIZE_HPP

// Scalar minimization of the bit-energy curves and the sweep engines
// behind the minimum-bit-energy tables and plots.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pilotcap/training.hpp"

namespace pilotcap {

struct SweepGrid {
  double snr_min;
  double snr_max;
  int points;
  bool log_spacing = true;

  void validate() const {
    if (points < 2) throw std::invalid_argument("SweepGrid: points must be >= 2");
    if (!(snr_min < snr_max)) throw std::invalid_argument("SweepGrid: snr_min < snr_max required");
    if (log_spacing && !(snr_min > 0.0))
      throw std::invalid_argument("SweepGrid: log spacing requires snr_min > 0");
  }

  std::vector<double> abscissae() const {
    validate();
    std::vector<double> xs(points);
    if (log_spacing) {
      const double a = std::log(snr_min), b = std::log(snr_max);
      for (int i = 0; i < points; ++i)
        xs[i] = std::exp(a + (b - a) * i / (points - 1));
    } else {
      for (int i = 0; i < points; ++i)
        xs[i] = snr_min + (snr_max - snr_min) * i / (points - 1);
    }
    xs.front() = snr_min;
    xs.back() = snr_max;
    return xs;
  }
};

struct MinBitEnergyResult {
  int m;
  double snr_star;
  double eb_min_db;
  int iterations;
  std::pair<double, double> bracket;
};

namespace detail {

struct ScalarMinResult {
  double x;
  double fx;
  int iterations;
  std::pair<double, double> bracket;
};

// Coarse log-grid bracket followed by golden-section refinement in
// log(x). The grid guards against mis-bracketing on flat tails.
template <typename Fn>
ScalarMinResult minimize_log_bracketed(Fn&& fn, double lo, double hi,
                                       int grid_points = 200, double rel_tol = 1e-6) {
  const double la = std::log(lo), lb = std::log(hi);
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<double> lx(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    lx[i] = la + (lb - la) * i / (grid_points - 1);
    const double v = fn(std::exp(lx[i]));
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = lx[best > 0 ? best - 1 : 0];
  double b = lx[best < grid_points - 1 ? best + 1 : grid_points - 1];

  constexpr double invphi = 0.61803398874989484820;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = fn(std::exp(c));
  double fd = fn(std::exp(d));
  int iters = 0;
  while (b - a > rel_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = fn(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = fn(std::exp(d));
    }
    ++iters;
  }
  ScalarMinResult r;
  r.x = std::exp(0.5 * (a + b));
  r.fx = fn(r.x);
  r.iterations = iters;
  r.bracket = {std::exp(a), std::exp(b)};
  return r;
}

} // namespace detail

/// Minimum of the worst-case bit-energy curve over snr in [1e-4, 10].
inline MinBitEnergyResult min_bit_energy(int m, const QuadratureRule& rule) {
  auto obj = [&](double snr) { return bit_energy_db(m, snr, rule); };
  const auto r = detail::minimize_log_bracketed(obj, 1e-4, 10.0);
  return {m, r.x, r.fx, r.iterations, r.bracket};
}

inline MinBitEnergyResult min_bit_energy(int m, int quad_order = 96) {
  return min_bit_energy(m, cached_gauss_laguerre(quad_order));
}

/// Bit-energy curve over a grid, ascending in snr.
inline std::vector<CapacityPoint> sweep_bit_energy(int m, const SweepGrid& grid,
                                                   int quad_order = 96) {
  const auto& rule = cached_gauss_laguerre(quad_order);
  std::vector<CapacityPoint> out;
  out.reserve(grid.points);
  for (double snr : grid.abscissae()) {
    const double rate = capacity_lower_bound(m, snr, rule);
    out.push_back({snr, rate, bit_energy_db_from_rate(snr, rate),
                   BoundKind::worst_case_single_pilot});
  }
  return out;
}

/// Minimum bit energy as a function of 1/m, sorted by 1/m ascending
/// (i.e. by m descending). Feeds the block-length steepness diagnostic.
inline std::vector<std::pair<double, double>>
min_bit_energy_vs_m(std::vector<int> m_list, int quad_order = 96) {
  const auto& rule = cached_gauss_laguerre(quad_order);
  std::sort(m_list.begin(), m_list.end(), std::greater<int>());
  std::vector<std::pair<double, double>> out;
  out.reserve(m_list.size());
  for (int m : m_list)
    out.emplace_back(1.0 / m, min_bit_energy(m, rule).eb_min_db);
  return out;
}

} // namespace pilotcap

#endif
