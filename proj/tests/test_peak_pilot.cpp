#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pilotcap/peak_pilot.hpp"

using namespace pilotcap;

namespace {
// Direct evaluation of the g formula at m=100, kappa=10, l=2, snr=0.28.
constexpr double kG_anchor = 0.18744769874476987448;
} // namespace

TEST_CASE("admissible pilot count range") {
  CHECK((PeakPilotConfig{100, 10.0}.l_max()) == 9);
  CHECK((PeakPilotConfig{50, 10.0}.l_max()) == 4);
  CHECK((PeakPilotConfig{10000, 10.0}.l_max()) == 999);
  CHECK((PeakPilotConfig{5, 1.0}.l_max()) == 4); // also capped at m-1
  CHECK((PeakPilotConfig{5, 10.0}.l_max()) == 0);
  CHECK_THROWS_AS((PeakPilotConfig{5, 10.0}.require_feasible()), infeasible_config_error);
  CHECK_THROWS_AS((PeakPilotConfig{2, 1.0}.l_max()), block_length_error);
  CHECK_THROWS_AS((PeakPilotConfig{100, -1.0}.l_max()), std::invalid_argument);
}

TEST_CASE("g factor anchors and edge cases") {
  const PeakPilotConfig cfg{100, 10.0};
  CHECK(g_factor(cfg, 2, 0.0) == 0.0);
  CHECK(g_factor(cfg, 2, 0.28) == Catch::Approx(kG_anchor).epsilon(1e-12));
  CHECK_THROWS_AS(g_factor(cfg, 0, 0.28), std::invalid_argument);
  CHECK_THROWS_AS(g_factor(cfg, 10, 0.28), std::invalid_argument);
  CHECK_THROWS_AS(g_factor(cfg, 2, -1.0), std::invalid_argument);

  // As l kappa approaches m the data branch starves and g collapses.
  const PeakPilotConfig tight{100, 9.9999};
  CHECK(g_factor(tight, 10, 0.28) < 1e-3 * g_factor(tight, 5, 0.28));
}

TEST_CASE("rate with peak pilots at known operating points") {
  const PeakPilotConfig cfg50{50, 10.0};
  const double rate = peak_capacity(cfg50, 1, 0.41);
  const double eb = bit_energy_db_from_rate(0.41, rate);
  CHECK(eb == Catch::Approx(1.441372865309369).margin(1e-6));

  // At m=100, snr=0.28, two pilots beat one and three.
  const PeakPilotConfig cfg100{100, 10.0};
  const double i1 = peak_capacity(cfg100, 1, 0.28);
  const double i2 = peak_capacity(cfg100, 2, 0.28);
  const double i3 = peak_capacity(cfg100, 3, 0.28);
  CHECK(i2 >= i1);
  CHECK(i2 >= i3);
}

TEST_CASE("optimal pilot count by exhaustive search") {
  CHECK(optimal_pilot_count(PeakPilotConfig{50, 10.0}, 0.41).first == 1);
  CHECK(optimal_pilot_count(PeakPilotConfig{500, 10.0}, 0.16).first == 5);
  CHECK(optimal_pilot_count(PeakPilotConfig{10000, 10.0}, 0.05).first == 44);
  CHECK_THROWS_AS(optimal_pilot_count(PeakPilotConfig{5, 10.0}, 0.5),
                  infeasible_config_error);
  CHECK_THROWS_AS(optimal_pilot_count(PeakPilotConfig{50, 10.0}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("joint minimum matches the reference table") {
  const auto r100 = min_bit_energy_peak(PeakPilotConfig{100, 10.0});
  CHECK(r100.snr_star == Catch::Approx(0.28).margin(0.01));
  CHECK(r100.l_star == 2);
  CHECK(r100.eb_min_db == Catch::Approx(0.897).margin(0.01));

  const auto r1000 = min_bit_energy_peak(PeakPilotConfig{1000, 10.0});
  CHECK(r1000.snr_star == Catch::Approx(0.12).margin(0.01));
  CHECK(r1000.l_star == 9);
  CHECK(r1000.eb_min_db == Catch::Approx(-0.375).margin(0.01));
}

TEST_CASE("peak constraint costs almost nothing at m=200") {
  const double peak = min_bit_energy_peak(PeakPilotConfig{200, 10.0}).eb_min_db;
  const double unconstrained = min_bit_energy(200).eb_min_db;
  CHECK(peak > unconstrained);
  CHECK(peak - unconstrained < 0.01);
}

TEST_CASE("the cap is inactive when the optimal pilot fits under it") {
  // At m=50, snr=0.5 the unconstrained pilot power fraction satisfies
  // delta* m <= kappa, so capping changes nothing.
  const PeakPilotConfig cfg{50, 10.0};
  const double snr = 0.5;
  REQUIRE(pilot_fraction(cfg.m, snr) * cfg.m <= cfg.kappa);
  CHECK(peak_bit_energy_db(cfg, snr) ==
        Catch::Approx(bit_energy_db(cfg.m, snr)).margin(1e-6));
}

TEST_CASE("a peak constraint can only cost energy") {
  for (auto [m, kappa] : std::vector<std::pair<int, double>>{
           {50, 10.0}, {100, 10.0}, {100, 3.0}, {20, 5.0}}) {
    const double peak = min_bit_energy_peak(PeakPilotConfig{m, kappa}).eb_min_db;
    const double unc = min_bit_energy(m).eb_min_db;
    CHECK(peak >= unc - 1e-9);
    CHECK(peak > kBitEnergyFloorDb);
  }
}

TEST_CASE("more pilots are needed as snr falls") {
  const PeakPilotConfig cfg{1000, 10.0};
  int prev = 0;
  for (double snr : {0.5, 0.2, 0.1, 0.05}) {
    const int l = optimal_pilot_count(cfg, snr).first;
    CHECK(l >= prev);
    prev = l;
  }
}

TEST_CASE("minimum bit energy falls with block length under the cap") {
  double prev = std::numeric_limits<double>::infinity();
  for (int m : {50, 100, 200, 500}) {
    const double eb = min_bit_energy_peak(PeakPilotConfig{m, 10.0}).eb_min_db;
    CHECK(eb < prev);
    CHECK(eb > kBitEnergyFloorDb);
    prev = eb;
  }
}
