#include "icts/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "icts/coherence.hpp"
#include "icts/constants.hpp"
#include "icts/fock.hpp"
#include "icts/io.hpp"
#include "icts/moments.hpp"
#include "icts/numerics.hpp"
#include "icts/spectral.hpp"
#include "icts/tomography.hpp"

namespace icts::validate {

namespace {

spectral::CrystalParams reference_crystal(double sigma) {
  spectral::CrystalParams c;
  c.length_m = 0.02;
  c.sigma_per_m = sigma;
  c.inv_gv_signal_s_per_m = 7.54e-9;
  // D L = 4.45033e-12 s, the 1.6 nm idler bandwidth at 1552.3 nm
  c.inv_gv_idler_s_per_m = 7.54e-9 + 2.2251632314126107e-10;
  c.lambda_pump_m = 532e-9;
  c.lambda_idler_m = 1552.3e-9;
  c.lambda_signal_m = spectral::CrystalParams::derive_signal_wavelength(
      532e-9, 1552.3e-9);
  return c;
}

CheckResult check_squeezer_unitarity() {
  CheckResult check{"squeezer_unitarity", false, 0.0, 1e-10, ""};
  double worst = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double r = i * 0.05;
    worst = std::max(
        worst, moments::SqueezerCoeffs::from_gain(r).unitarity_defect());
  }
  // general-gain spectral coefficients; sigma L = 2 puts the Gamma = 0
  // crossover well inside the sampled band
  const auto crystal = reference_crystal(100.0);
  const auto grid = spectral::FrequencyGrid::for_spectrum(crystal, 4097);
  for (int k = 0; k < grid.count; ++k) {
    const auto uv = spectral::bogoliubov_coeffs(crystal, grid.omega(k),
                                                spectral::GainModel::general);
    worst = std::max(worst, uv.unitarity_defect());
  }
  check.measured = worst;
  check.pass = worst <= check.tolerance;
  check.detail = "max | |u|^2 - |v|^2 - 1 | over gain and frequency grids";
  return check;
}

CheckResult check_flux_closed_form() {
  CheckResult check{"flux_closed_form", false, 0.0, 1e-6, ""};
  const auto crystal = reference_crystal(50.0);
  const double flux = spectral::signal_flux(crystal);
  const double sigma_l =
      crystal.sigma_per_m * crystal.sigma_per_m * crystal.length_m;
  const double closed = sigma_l / std::abs(crystal.group_velocity_mismatch());
  check.measured = std::abs(flux / closed - 1.0);
  check.pass = check.measured <= check.tolerance;
  check.detail = "quadrature flux x D / (sigma^2 L) vs 1";
  return check;
}

CheckResult check_triangle_vs_quadrature() {
  CheckResult check{"triangle_vs_quadrature", false, 0.0, 1e-3, ""};
  const auto crystal = reference_crystal(0.05);
  const spectral::GeometryParams geom;
  const auto grid = spectral::FrequencyGrid::for_source(crystal);
  const std::complex<double> tau{0.8, 0.0};

  const int n = 51;
  std::vector<double> delays(n);
  for (int i = 0; i < n; ++i)
    delays[i] = spectral::delay_for_offset(crystal, geom,
                                           -1.5 + 3.0 * i / double(n - 1));
  const auto g1 = spectral::g1_delay_scan(crystal, geom, tau, delays, grid);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double analytic = spectral::g1_triangle(crystal, geom, tau, delays[i]);
    worst = std::max(worst, std::abs(std::abs(g1[(std::size_t)i]) - analytic));
  }
  check.measured = worst;
  check.pass = worst <= check.tolerance;
  check.detail = "max |g1| quadrature error vs the triangular closed form";
  return check;
}

CheckResult check_oracle_grid() {
  CheckResult check{"oracle_grid", false, 0.0, 1e-5, ""};
  const double gains[] = {0.05, 0.1, 0.3};
  const double mus[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  double worst = 0.0;
  double worst_leak = 0.0;
  for (const double r : gains) {
    for (const double mu : mus) {
      coherence::SingleModeSetup setup;
      setup.gain = r;
      setup.mu = mu;
      const double engine = coherence::degree_of_coherence(setup);
      const double closed = coherence::coherence_closed_form(r, mu);
      const auto oracle = fock::oracle_induced_coherence(r, mu, 12);
      worst_leak = std::max(worst_leak, oracle.leakage);
      worst = std::max({worst, std::abs(engine - closed),
                        std::abs(engine - oracle.g1_abs),
                        std::abs(closed - oracle.g1_abs)});
    }
  }
  check.measured = worst;
  check.pass = worst <= check.tolerance && worst_leak < 1e-6;
  check.detail = "moment engine vs closed form vs Fock oracle, leakage " +
                 io::format_double(worst_leak);
  return check;
}

CheckResult check_loss_composition() {
  CheckResult check{"loss_composition", false, 0.0, 1e-12, ""};
  double worst = 0.0;
  const double mu_values[] = {0.1, 0.5, 0.9, 1.0};
  for (const double mu1 : mu_values) {
    for (const double mu2 : mu_values) {
      moments::MomentState base;
      const auto a = base.add_mode("a");
      const auto b = base.add_mode("b");
      const auto f1 = base.add_mode("f1");
      const auto f2 = base.add_mode("f2");
      const auto f3 = base.add_mode("f3");
      base = apply_two_mode_squeezer(base, a, b,
                                     moments::SqueezerCoeffs::from_gain(0.4));

      auto split = apply_loss(base, a, mu1, f1);
      split = apply_loss(split, a, mu2, f2);
      const auto direct = apply_loss(base, a, mu1 * mu2, f3);

      // compare moments of the original (non-noise) modes
      for (const auto i : {a, b}) {
        for (const auto j : {a, b}) {
          worst = std::max(worst, std::abs(split.normal(i, j) - direct.normal(i, j)));
          worst = std::max(worst,
                           std::abs(split.anomalous(i, j) - direct.anomalous(i, j)));
        }
      }
    }
  }
  check.measured = worst;
  check.pass = worst <= check.tolerance;
  check.detail = "loss(mu1) then loss(mu2) vs loss(mu1 mu2) on shared modes";
  return check;
}

CheckResult check_moment_structure() {
  CheckResult check{"moment_structure", false, 0.0, 1e-12, ""};
  double worst = 0.0;
  for (int variant = 0; variant < 6; ++variant) {
    coherence::SingleModeSetup setup;
    setup.gain = 0.1 + 0.15 * variant;
    setup.mu = std::polar(0.2 + 0.13 * variant, 0.7 * variant);
    setup.pump_phase_diff = 0.3 * variant;
    const auto chain = coherence::build_chain(setup);
    worst = std::max({worst, chain.state.max_hermiticity_defect(),
                      chain.state.max_symmetry_defect()});
    chain.state.check_physical();
  }
  check.measured = worst;
  check.pass = worst <= check.tolerance;
  check.detail = "Hermiticity of <a^dag a> and symmetry of <a a> after chains";
  return check;
}

CheckResult check_determinism() {
  CheckResult check{"determinism", false, 0.0, 0.0, ""};
  const auto crystal = reference_crystal(0.05);
  const spectral::GeometryParams geom;

  tomo::Sample sample;
  sample.layers.push_back({1e-3, {1.0, 0.0}});
  tomo::ScanConfig scan;
  scan.delay_start_m = 0.0;
  scan.delay_stop_m = 4e-3;
  scan.coarse_step_m = 5e-5;
  scan.fine_count = 16;
  scan.fine_step_m = crystal.lambda_signal_m / 12.0;
  tomo::DetectionParams det;
  det.mean_counts_n0 = 1e5;
  det.dark_counts = 2000.0;
  det.system_visibility = 0.9;
  det.rng_seed = 20260314;

  const auto first = tomo::simulate_axial_scan(sample, crystal, geom, scan, det);
  const auto second = tomo::simulate_axial_scan(sample, crystal, geom, scan, det);
  const bool identical = io::scan_csv(first) == io::scan_csv(second);
  check.measured = identical ? 0.0 : 1.0;
  check.pass = identical;
  check.detail = "repeated scan with one seed serializes byte-identically";
  return check;
}

}  // namespace

std::vector<CheckResult> run_validation_suite() {
  std::vector<CheckResult> checks;
  checks.push_back(check_squeezer_unitarity());
  checks.push_back(check_flux_closed_form());
  checks.push_back(check_triangle_vs_quadrature());
  checks.push_back(check_oracle_grid());
  checks.push_back(check_loss_composition());
  checks.push_back(check_moment_structure());
  checks.push_back(check_determinism());

  if (const char* fault = std::getenv("ICTS_VALIDATE_FAULT")) {
    for (auto& check : checks) {
      if (check.name == fault) {
        check.pass = false;
        check.detail += " [fault injected]";
      }
    }
  }
  return checks;
}

nlohmann::json to_json(const std::vector<CheckResult>& checks) {
  nlohmann::json items = nlohmann::json::array();
  bool all = true;
  for (const auto& check : checks) {
    all = all && check.pass;
    items.push_back({{"name", check.name},
                     {"pass", check.pass},
                     {"measured", check.measured},
                     {"tolerance", check.tolerance},
                     {"detail", check.detail}});
  }
  return {{"checks", items}, {"all_pass", all}};
}

}  // namespace icts::validate
