#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "pilotcap/flash.hpp"

using namespace pilotcap;

namespace {

FlashPolicy random_policy(std::mt19937& gen) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_real_distribution<double> coeff(0.2, 3.0);
  switch (kind(gen)) {
    case 0:
      return FlashPolicy::category1(coeff(gen),
                                    std::uniform_real_distribution<double>(0.1, 0.9)(gen));
    case 1:
      return FlashPolicy::category2(coeff(gen),
                                    std::uniform_real_distribution<double>(1.1, 3.0)(gen));
    default:
      return FlashPolicy::category3(std::uniform_real_distribution<double>(0.1, 2.0)(gen));
  }
}

} // namespace

TEST_CASE("policy construction validates category shapes") {
  CHECK_THROWS_AS(FlashPolicy::category1(1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(FlashPolicy::category2(1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(FlashPolicy::category3(0.0), std::invalid_argument);
  CHECK_THROWS_AS(FlashPolicy::category3(-0.8), std::invalid_argument);
}

TEST_CASE("duty cycle is clamped to (0, 1]") {
  const auto pol = FlashPolicy::category3(0.8);
  CHECK(pol.nu(0.4) == Catch::Approx(0.5));
  CHECK(pol.nu(0.8) == 1.0);
  CHECK(pol.nu(5.0) == 1.0);
  CHECK_THROWS_AS(pol.nu(0.0), std::invalid_argument);

  std::mt19937 gen(5);
  for (int t = 0; t < 50; ++t) {
    const auto p = random_policy(gen);
    for (double snr : {1e-4, 0.1, 1.0, 10.0}) {
      const double v = p.nu(snr);
      CHECK(v > 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("unit duty cycle reduces to plain transmission") {
  // With scale far below every grid snr, nu clamps to 1 everywhere.
  const auto identity = FlashPolicy::category3(1e-12);
  for (double snr : {0.01, 0.1, 0.8, 3.0})
    CHECK(flash_capacity(10, snr, identity) ==
          Catch::Approx(capacity_lower_bound(10, snr)).epsilon(1e-14));
}

TEST_CASE("flash bit energy equals plain bit energy at the boosted snr") {
  std::mt19937 gen(17);
  for (int t = 0; t < 20; ++t) {
    const auto pol = random_policy(gen);
    for (int i = 0; i < 25; ++i) {
      const double snr = std::pow(10.0, -4.0 + 5.0 * i / 24.0);
      const double flash_eb = flash_bit_energy_db(10, snr, pol);
      const double plain_eb = bit_energy_db(10, snr / pol.nu(snr));
      CHECK(flash_eb == Catch::Approx(plain_eb).margin(1e-12));
    }
  }
}

TEST_CASE("flash never improves the minimum bit energy") {
  std::mt19937 gen(29);
  std::vector<double> grid(200);
  for (int i = 0; i < 200; ++i) grid[i] = std::pow(10.0, -4.0 + 5.0 * i / 199.0);
  // True minimum, not a grid minimum: flash policies evaluate off-grid
  // effective snrs and would otherwise "beat" the grid by its own error.
  const double plain_min = min_bit_energy(10).eb_min_db;
  for (int t = 0; t < 20; ++t) {
    const auto pol = random_policy(gen);
    double flash_min = std::numeric_limits<double>::infinity();
    for (double snr : grid)
      flash_min = std::min(flash_min, flash_bit_energy_db(10, snr, pol));
    CHECK(flash_min >= plain_min - 1e-9);
  }
}

TEST_CASE("matched linear duty cycle pins the bit energy at the optimum") {
  const auto pol = FlashPolicy::category3(0.8);
  CHECK(flash_bit_energy_db(10, 0.4, pol) ==
        Catch::Approx(bit_energy_db(10, 0.8)).margin(1e-6));
}

TEST_CASE("low-snr bit-energy limit per category") {
  CHECK(std::isinf(flash_bit_energy_limit(10, FlashPolicy::category1(1.0, 0.5))));
  CHECK(std::isinf(flash_bit_energy_limit(10, FlashPolicy::category2(1.0, 2.0))));

  // Category 3 at the optimal scale recovers the minimum bit energy.
  const auto r = min_bit_energy(10);
  const double lim = flash_bit_energy_limit(10, FlashPolicy::category3(r.snr_star));
  CHECK(lim == Catch::Approx(r.eb_min_db).margin(1e-3));
}

TEST_CASE("category-3 bit energy settles onto its limit at low snr") {
  const auto pol = FlashPolicy::category3(0.8);
  const double lim = flash_bit_energy_limit(10, pol);
  double prev_err = std::numeric_limits<double>::infinity();
  for (double snr : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const double err = std::abs(flash_bit_energy_db(10, snr, pol) - lim);
    CHECK(err <= prev_err + 1e-12);
    prev_err = err;
  }
  CHECK(prev_err < 1e-9);
}

TEST_CASE("composite curve holds the minimum below the optimum snr") {
  const auto opt = min_bit_energy(10);
  std::vector<double> grid;
  for (int i = 0; i < 80; ++i) grid.push_back(std::pow(10.0, -3.0 + 4.0 * i / 79.0));
  const auto curve = composite_bit_energy_curve(10, grid);
  REQUIRE(curve.size() == grid.size());
  for (const auto& pt : curve) {
    if (pt.snr < opt.snr_star) {
      CHECK(pt.bound_kind == BoundKind::flash);
      CHECK(pt.bit_energy_db == Catch::Approx(opt.eb_min_db).margin(1e-6));
    } else {
      CHECK(pt.bound_kind == BoundKind::worst_case_single_pilot);
      CHECK(pt.bit_energy_db == Catch::Approx(bit_energy_db(10, pt.snr)).margin(1e-12));
    }
  }
}

TEST_CASE("composite curve branch selection at and above the optimum") {
  const auto opt = min_bit_energy(10);
  const auto curve = composite_bit_energy_curve(10, {opt.snr_star, 2.0});
  // On the boundary the two branches coincide (nu = 1).
  CHECK(curve[0].bit_energy_db ==
        Catch::Approx(bit_energy_db(10, opt.snr_star)).margin(1e-12));
  CHECK(curve[1].bit_energy_db == Catch::Approx(bit_energy_db(10, 2.0)).margin(1e-12));
  CHECK_THROWS_AS(composite_bit_energy_curve(10, {}), std::invalid_argument);
}
