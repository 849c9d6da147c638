// pilotcap — bit-energy analysis of pilot-assisted transmission over
// block Rayleigh fading. Emits plot-ready CSV/JSON; see README.
//
// Exit codes: 0 success, 1 validation-check failure, 2 invalid arguments.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pilotcap/pilotcap.hpp"

namespace {

using nlohmann::json;
using namespace pilotcap;

struct OutputTarget {
  std::ostream& stream() { return file.is_open() ? file : std::cout; }
  void open(const std::string& path) {
    if (!path.empty()) {
      file.open(path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ofstream file;
};

double to_linear_snr(double v, const std::string& unit) {
  return unit == "db" ? std::pow(10.0, v / 10.0) : v;
}

int run_bitenergy_sweep(int m, const SweepGrid& grid, int quad_order,
                        const std::string& out) {
  RunManifest manifest;
  manifest.command = "bitenergy-sweep";
  manifest.parameters = {{"m", std::to_string(m)},
                         {"points", std::to_string(grid.points)},
                         {"snr_max", format_double(grid.snr_max)},
                         {"snr_min", format_double(grid.snr_min)},
                         {"spacing", grid.log_spacing ? "log" : "linear"}};
  manifest.quad_order = quad_order;

  const auto points = sweep_bit_energy(m, grid, quad_order);
  OutputTarget target;
  target.open(out);
  CsvWriter csv(target.stream(), manifest,
                {"snr", "rate_nats_per_symbol", "eb_n0_db"});
  for (const auto& pt : points) csv.row({pt.snr, pt.rate_nats, pt.bit_energy_db});
  return 0;
}

int run_flash_curve(int m, const SweepGrid& grid, int quad_order,
                    const std::string& out) {
  RunManifest manifest;
  manifest.command = "flash-curve";
  manifest.parameters = {{"m", std::to_string(m)},
                         {"points", std::to_string(grid.points)},
                         {"snr_max", format_double(grid.snr_max)},
                         {"snr_min", format_double(grid.snr_min)},
                         {"spacing", grid.log_spacing ? "log" : "linear"}};
  manifest.quad_order = quad_order;

  const double a_star = min_bit_energy(m, quad_order).snr_star;
  const auto points = composite_bit_energy_curve(m, grid.abscissae(), quad_order);
  OutputTarget target;
  target.open(out);
  CsvWriter csv(target.stream(), manifest, {"snr", "nu", "eb_n0_db"});
  for (const auto& pt : points) {
    const double nu = pt.snr < a_star ? pt.snr / a_star : 1.0;
    csv.row({pt.snr, nu, pt.bit_energy_db});
  }
  return 0;
}

int run_table1(double kappa, const std::vector<int>& m_list, int quad_order,
               const std::string& out, const std::string& format) {
  RunManifest manifest;
  manifest.command = "table1";
  std::string ms;
  for (int m : m_list) ms += (ms.empty() ? "" : " ") + std::to_string(m);
  manifest.parameters = {{"kappa", format_double(kappa)}, {"m_list", ms}};
  manifest.quad_order = quad_order;

  OutputTarget target;
  target.open(out);
  std::ostream& os = target.stream();

  struct Row {
    int m;
    PeakMinResult peak;
    double eb_unconstrained;
  };
  std::vector<Row> rows;
  bool any_infeasible = false;
  for (int m : m_list) {
    PeakPilotConfig cfg{m, kappa};
    Row row{m, {}, min_bit_energy(m, quad_order).eb_min_db};
    try {
      row.peak = min_bit_energy_peak(cfg, quad_order);
    } catch (const infeasible_config_error&) {
      any_infeasible = true;
      row.peak = {std::nan(""), -1, std::nan("")};
    }
    rows.push_back(row);
  }

  if (format == "text") {
    os << "# " << manifest.to_json() << "\n";
    os << "      m  eb_min_db_peak  n_pilots  snr_star  eb_min_db_unconstrained\n";
    for (const auto& r : rows) {
      std::ostringstream line;
      line << std::setw(7) << r.m;
      if (r.peak.l_star < 0) {
        line << "  infeasible";
      } else {
        line << std::setw(16) << format_fixed(r.peak.eb_min_db, 3)
             << std::setw(10) << r.peak.l_star
             << std::setw(10) << format_fixed(r.peak.snr_star, 3)
             << std::setw(25) << format_fixed(r.eb_unconstrained, 3);
      }
      os << line.str() << "\n";
    }
  } else {
    CsvWriter csv(os, manifest,
                  {"m", "eb_min_db_peak", "n_pilots", "snr_star",
                   "eb_min_db_unconstrained"});
    for (const auto& r : rows)
      csv.row({static_cast<double>(r.m), r.peak.eb_min_db,
               static_cast<double>(r.peak.l_star), r.peak.snr_star,
               r.eb_unconstrained});
  }
  return any_infeasible ? 2 : 0;
}

int run_validate(std::uint64_t seed, long n_samples, int quad_order,
                 const std::string& out) {
  json checks = json::array();
  auto add_check = [&](const std::string& name, double tolerance, double observed) {
    checks.push_back({{"name", name},
                      {"tolerance", tolerance},
                      {"observed", observed},
                      {"pass", observed <= tolerance}});
  };

  // Quadrature vs closed form over a log grid of c.
  const auto& rule = cached_gauss_laguerre(quad_order);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double c = std::pow(10.0, -6.0 + 9.0 * i / 49.0);
    worst = std::max(worst, std::abs(expected_log1p_exp(c, rule) -
                                     expected_log1p_exp(c)));
  }
  add_check("quadrature_vs_closed_form_abs", 1e-8, worst);

  // Monte Carlo rate estimate vs quadrature at m=10, snr=0.8.
  const auto [mc_mean, mc_se] = empirical_capacity(10, 0.8, n_samples, seed);
  const double quad_val = capacity_lower_bound(10, 0.8, rule);
  add_check("montecarlo_vs_quadrature_sigmas", 3.0,
            std::abs(mc_mean - quad_val) / mc_se);

  // MMSE estimator variances vs their analytic values.
  ChannelConfig cfg{10, 1.0, 1.0, 1.0};
  const long n_blocks = 100000;
  const auto rep = simulate_mmse(cfg, 5.0, n_blocks, seed + 1);
  // |z|^2 of a CN(0, s) variable is Exp(s), so the sample variance has
  // standard error s / sqrt(n).
  add_check("mmse_var_hhat_abs", 4.0 * rep.analytic_var_hhat / std::sqrt(n_blocks),
            std::abs(rep.est_var_hhat - rep.analytic_var_hhat));
  add_check("mmse_var_htilde_abs", 4.0 * rep.analytic_var_htilde / std::sqrt(n_blocks),
            std::abs(rep.est_var_htilde - rep.analytic_var_htilde));
  add_check("mmse_variance_sum_identity_abs", 1e-14,
            std::abs(rep.analytic_var_hhat + rep.analytic_var_htilde - cfg.gamma_sq));

  bool all_pass = true;
  for (const auto& c : checks) all_pass = all_pass && c["pass"].get<bool>();

  json report = {{"checks", checks}, {"seed", seed}, {"version", kToolVersion}};
  OutputTarget target;
  target.open(out);
  target.stream() << report.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bit-energy analysis of pilot-assisted block-fading transmission"};
  app.require_subcommand(1);

  int m = 10;
  double kappa = 10.0;
  double snr_min = 0.01, snr_max = 10.0;
  int points = 200;
  bool log_spacing = true;
  int quad_order = 96;
  std::uint64_t seed = 20250824;
  long n_samples = 1000000;
  std::string out, format = "csv", snr_unit = "linear";
  std::vector<int> m_list = {50, 100, 200, 500, 1000, 10000};

  auto add_grid_opts = [&](CLI::App* cmd) {
    cmd->add_option("--snr-min", snr_min, "Lower end of the SNR grid");
    cmd->add_option("--snr-max", snr_max, "Upper end of the SNR grid");
    cmd->add_option("--points", points, "Grid size");
    cmd->add_flag("--log,!--linear", log_spacing, "Log-spaced grid (default)");
    cmd->add_option("--snr-unit", snr_unit, "Unit of --snr-min/--snr-max: linear or db")
        ->check(CLI::IsMember({"linear", "db"}));
  };

  auto* sweep = app.add_subcommand("bitenergy-sweep",
                                   "Bit energy vs SNR for one block length");
  sweep->add_option("--m", m, "Block length in symbols (>= 3)");
  add_grid_opts(sweep);
  sweep->add_option("--quad-order", quad_order, "Gauss-Laguerre order");
  sweep->add_option("--out", out, "Output file (default stdout)");

  auto* flash = app.add_subcommand("flash-curve",
                                   "Composite bit-energy curve with duty-cycled "
                                   "transmission below the optimum SNR");
  flash->add_option("--m", m, "Block length in symbols (>= 3)");
  add_grid_opts(flash);
  flash->add_option("--quad-order", quad_order, "Gauss-Laguerre order");
  flash->add_option("--out", out, "Output file (default stdout)");

  auto* table = app.add_subcommand("table1",
                                   "Minimum bit energy, pilot count and optimum SNR "
                                   "per block length under a pilot peak-power cap");
  table->add_option("--kappa", kappa, "Peak-to-average power ratio of a pilot");
  table->add_option("--m-list", m_list, "Block lengths");
  table->add_option("--quad-order", quad_order, "Gauss-Laguerre order");
  table->add_option("--out", out, "Output file (default stdout)");
  table->add_option("--format", format, "csv or text")
      ->check(CLI::IsMember({"csv", "text"}));

  auto* validate = app.add_subcommand("validate",
                                      "Run the simulation/quadrature cross-checks "
                                      "and emit a JSON report");
  validate->add_option("--seed", seed, "RNG seed");
  validate->add_option("--n-samples", n_samples, "Monte Carlo sample count");
  validate->add_option("--quad-order", quad_order, "Gauss-Laguerre order");
  validate->add_option("--out", out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::ostringstream msg;
    app.exit(e, std::cout, msg);
    std::cerr << msg.str();
    return 2;
  }

  try {
    SweepGrid grid{to_linear_snr(snr_min, snr_unit), to_linear_snr(snr_max, snr_unit),
                   points, log_spacing};
    if (sweep->parsed()) return run_bitenergy_sweep(m, grid, quad_order, out);
    if (flash->parsed()) return run_flash_curve(m, grid, quad_order, out);
    if (table->parsed()) return run_table1(kappa, m_list, quad_order, out, format);
    if (validate->parsed()) return run_validate(seed, n_samples, quad_order, out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
