#include "icts/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "icts/constants.hpp"
#include "icts/errors.hpp"
#include "icts/numerics.hpp"

namespace icts::spectral {

namespace {
constexpr double kC = constants::speed_of_light;
constexpr double kPi = constants::pi;

double omega_of_wavelength(double lambda) { return 2.0 * kPi * kC / lambda; }
}  // namespace

double CrystalParams::omega_signal() const {
  return omega_of_wavelength(lambda_signal_m);
}

double CrystalParams::omega_idler() const {
  return omega_of_wavelength(lambda_idler_m);
}

double CrystalParams::derive_signal_wavelength(double lambda_pump_m,
                                               double lambda_idler_m) {
  if (lambda_pump_m <= 0.0 || lambda_idler_m <= lambda_pump_m)
    throw InvalidArgument("need 0 < lambda_pump < lambda_idler");
  return 1.0 / (1.0 / lambda_pump_m - 1.0 / lambda_idler_m);
}

void CrystalParams::validate() const {
  if (length_m <= 0.0) throw InvalidArgument("crystal length must be > 0");
  if (!(sigma_per_m >= 0.0)) throw InvalidArgument("sigma must be >= 0");
  if (group_velocity_mismatch() == 0.0)
    throw InvalidArgument("group-velocity mismatch D must be nonzero");
  if (lambda_pump_m <= 0.0 || lambda_signal_m <= 0.0 || lambda_idler_m <= 0.0)
    throw InvalidArgument("wavelengths must be > 0");
  const double lhs = 1.0 / lambda_pump_m;
  const double rhs = 1.0 / lambda_signal_m + 1.0 / lambda_idler_m;
  if (std::abs(lhs - rhs) > 1e-6 * lhs)
    throw InvalidArgument(
        "wavelengths violate energy conservation 1/lp = 1/ls + 1/li");
}

void PumpParams::validate() const {
  if (pump_flux_per_s_m2 < 0.0) throw InvalidArgument("pump flux must be >= 0");
  if (chi2_m_per_v <= 0.0 || n_signal <= 0.0 || n_idler <= 0.0 || n_pump <= 0.0 ||
      omega_signal_rad_s <= 0.0 || omega_idler_rad_s <= 0.0 ||
      omega_pump_rad_s <= 0.0)
    throw InvalidArgument("pump parameters must be positive");
}

double sigma_from_pump(const PumpParams& pump) {
  pump.validate();
  // c^3 makes the assembled units come out as 1/m (see the unit-audit test).
  const double numerator = constants::hbar * pump.omega_signal_rad_s *
                           pump.omega_idler_rad_s * pump.omega_pump_rad_s *
                           pump.chi2_m_per_v * pump.chi2_m_per_v *
                           pump.pump_flux_per_s_m2;
  const double denominator = 8.0 * constants::vacuum_permittivity * kC * kC * kC *
                             pump.n_signal * pump.n_idler * pump.n_pump;
  return std::sqrt(numerator / denominator);
}

void FilterSpec::validate() const {
  if (center_wavelength_m <= 0.0)
    throw InvalidArgument("filter center wavelength must be > 0");
  if (bandwidth_fwhm_m <= 0.0) throw InvalidArgument("filter bandwidth must be > 0");
  if (bandwidth_fwhm_m >= center_wavelength_m)
    throw InvalidArgument("filter bandwidth must be below its center wavelength");
}

namespace {

struct FilterBand {
  double center_rad_s;
  double fwhm_rad_s;
  bool idler_side;
};

FilterBand filter_band(const FilterSpec& filter, const CrystalParams& params) {
  filter.validate();
  const double hi = omega_of_wavelength(filter.center_wavelength_m -
                                        0.5 * filter.bandwidth_fwhm_m);
  const double lo = omega_of_wavelength(filter.center_wavelength_m +
                                        0.5 * filter.bandwidth_fwhm_m);
  FilterBand band;
  band.center_rad_s = 0.5 * (hi + lo);
  band.fwhm_rad_s = hi - lo;
  band.idler_side =
      std::abs(filter.center_wavelength_m - params.lambda_idler_m) <
      std::abs(filter.center_wavelength_m - params.lambda_signal_m);
  return band;
}

// Offset of the filter center from the corresponding beam center, expressed on
// the signal-detuning axis.
double filter_offset_on_grid(const FilterBand& band, const CrystalParams& params) {
  if (band.idler_side) {
    // idler frequency w_i - Omega: transmission at Omega = w_i - center
    return params.omega_idler() - band.center_rad_s;
  }
  return band.center_rad_s - params.omega_signal();
}

}  // namespace

double filter_intensity_transmission(const FilterSpec& filter,
                                     const CrystalParams& params,
                                     double omega_detuning) {
  const FilterBand band = filter_band(filter, params);
  const double d = omega_detuning - filter_offset_on_grid(band, params);
  if (filter.shape == FilterShape::rectangular)
    return std::abs(d) <= 0.5 * band.fwhm_rad_s ? 1.0 : 0.0;
  const double ln2 = 0.6931471805599453;
  const double s = d / band.fwhm_rad_s;
  return std::exp(-4.0 * ln2 * s * s);
}

void FrequencyGrid::validate() const {
  if (count < 2) throw InvalidArgument("frequency grid needs >= 2 samples");
  if (!(span_rad_s > 0.0)) throw InvalidArgument("frequency grid span must be > 0");
}

FrequencyGrid FrequencyGrid::for_source(const CrystalParams& params, int lobes,
                                        int count) {
  params.validate();
  const double dl = params.coherence_time_s();
  // x = D L Omega / 2; lobes of width pi per side
  return FrequencyGrid{2.0 * (lobes * kPi) * 2.0 / dl, count};
}

FrequencyGrid FrequencyGrid::for_spectrum(const CrystalParams& params, int count) {
  return for_source(params, 8, count);
}

FrequencyGrid FrequencyGrid::for_filter(const CrystalParams& params,
                                        const FilterSpec& filter, int count) {
  params.validate();
  const FilterBand band = filter_band(filter, params);
  const double offset = std::abs(filter_offset_on_grid(band, params));
  if (filter.shape == FilterShape::rectangular) {
    // exact support; with a band-centered filter the endpoints sit on the edges
    return FrequencyGrid{band.fwhm_rad_s + 2.0 * offset, count};
  }
  return FrequencyGrid{8.0 * band.fwhm_rad_s + 2.0 * offset, count};
}

moments::SqueezerCoeffs bogoliubov_coeffs(const CrystalParams& params,
                                          double omega_detuning, GainModel model) {
  params.validate();
  const double L = params.length_m;
  const double sigma = params.sigma_per_m;
  const double delta = params.group_velocity_mismatch() * omega_detuning;
  const Complex half_phase = std::polar(1.0, 0.5 * delta * L);

  if (model == GainModel::low_gain) {
    const double x = 0.5 * params.coherence_time_s() * omega_detuning;
    return {Complex(1.0, 0.0),
            Complex(0.0, 1.0) * (sigma * L * numerics::sinc(x)) * half_phase};
  }

  // t = Gamma^2 is real either way; cosh(Gamma L) and sinh(Gamma L)/Gamma are
  // even functions of Gamma, evaluated through cos/sin when t < 0 and by
  // series near t = 0.
  const double t = sigma * sigma - 0.25 * delta * delta;
  const double tl2 = t * L * L;
  double ch;        // cosh(Gamma L)
  double sh_over_g; // sinh(Gamma L) / Gamma
  if (std::abs(tl2) < 1e-8) {
    ch = 1.0 + tl2 / 2.0 + tl2 * tl2 / 24.0;
    sh_over_g = L * (1.0 + tl2 / 6.0 + tl2 * tl2 / 120.0);
  } else if (t > 0.0) {
    const double g = std::sqrt(t);
    ch = std::cosh(g * L);
    sh_over_g = std::sinh(g * L) / g;
  } else {
    const double g = std::sqrt(-t);
    ch = std::cos(g * L);
    sh_over_g = std::sin(g * L) / g;
  }

  const Complex u = half_phase * Complex(ch, -0.5 * delta * sh_over_g);
  const Complex v = Complex(0.0, 1.0) * (sigma * sh_over_g) * half_phase;
  return {u, v};
}

SpectrumResult idler_spectrum(const CrystalParams& params,
                              const FrequencyGrid& grid) {
  params.validate();
  grid.validate();

  SpectrumResult result;
  result.omega_detunings.resize(static_cast<std::size_t>(grid.count));
  result.intensity.resize(static_cast<std::size_t>(grid.count));
  const double sigma_l = params.sigma_per_m * params.length_m;
  const double dl = params.coherence_time_s();
  for (int k = 0; k < grid.count; ++k) {
    const double omega = grid.omega(k);
    const double v = sigma_l * numerics::sinc(0.5 * dl * omega);
    result.omega_detunings[static_cast<std::size_t>(k)] = omega;
    result.intensity[static_cast<std::size_t>(k)] = v * v;
  }

  const auto fwhm = numerics::measure_fwhm(result.omega_detunings, result.intensity);
  result.fwhm_rad_s = fwhm.width;

  // idler frequency w_i - Omega
  const double w_i = params.omega_idler();
  const double lam_left = 2.0 * kPi * kC / (w_i - fwhm.left);
  const double lam_right = 2.0 * kPi * kC / (w_i - fwhm.right);
  result.fwhm_nm = std::abs(lam_left - lam_right) * 1e9;
  result.center_wavelength_m = 2.0 * kPi * kC / (w_i - fwhm.peak_x);
  return result;
}

double signal_flux(const CrystalParams& params, int lobes, int points_per_lobe) {
  params.validate();
  const double dl = params.coherence_time_s();
  const double sigma_l = params.sigma_per_m * params.length_m;

  // integral of sinc^2 over x in [-X, X] with X = lobes * pi, trapezoid
  const double X = lobes * kPi;
  const std::int64_t n = 2LL * lobes * points_per_lobe;
  const double h = 2.0 * X / static_cast<double>(n);
  double acc = numerics::sinc(-X) * numerics::sinc(-X) * 0.5;
  for (std::int64_t k = 1; k < n; ++k) {
    const double x = -X + h * static_cast<double>(k);
    const double s = numerics::sinc(x);
    acc += s * s;
  }
  acc += numerics::sinc(X) * numerics::sinc(X) * 0.5;
  double integral_x = acc * h;

  // analytic tail of sin^2(x)/x^2 beyond +-X; X is a multiple of pi, where
  // 2 (pi/2 - Si(2X)) = 1/X - 1/(2X^3) + O(X^-5)
  integral_x += 1.0 / X - 0.5 / (X * X * X);

  const double integral_omega = integral_x * 2.0 / dl;
  return sigma_l * sigma_l / (2.0 * kPi) * integral_omega;
}

double path_mismatch_m(const CrystalParams& params, const GeometryParams& geom,
                       double delay_s) {
  return (geom.z1_m + kC * delay_s) -
         (geom.z4_m - kC * params.inv_gv_idler_s_per_m * params.length_m -
          geom.z2_m - geom.z3_m);
}

double delay_for_offset(const CrystalParams& params, const GeometryParams& geom,
                        double offset) {
  const double target = offset * kC * params.coherence_time_s();
  // invert path_mismatch_m(T) = target
  const double base = path_mismatch_m(params, geom, 0.0);
  return (target - base) / kC;
}

namespace {

struct SpectralWeights {
  std::vector<double> omega;
  std::vector<double> weight;  // trapezoid coefficient * |V|^2 * H
  double flux = 0.0;           // sum of weights (the filtered flux quadrature)
};

SpectralWeights spectral_weights(const CrystalParams& params,
                                 const FrequencyGrid& grid,
                                 const FilterSpec* filter) {
  params.validate();
  grid.validate();
  if (filter) filter->validate();

  SpectralWeights w;
  w.omega.resize(static_cast<std::size_t>(grid.count));
  w.weight.resize(static_cast<std::size_t>(grid.count));
  const double sigma_l = params.sigma_per_m * params.length_m;
  const double dl = params.coherence_time_s();
  for (int k = 0; k < grid.count; ++k) {
    const double omega = grid.omega(k);
    const double v = sigma_l * numerics::sinc(0.5 * dl * omega);
    double value = v * v;
    if (filter) value *= filter_intensity_transmission(*filter, params, omega);
    if (k == 0 || k == grid.count - 1) value *= 0.5;
    w.omega[static_cast<std::size_t>(k)] = omega;
    w.weight[static_cast<std::size_t>(k)] = value;
    w.flux += value;
  }
  return w;
}

}  // namespace

std::vector<Complex> g1_delay_scan(const CrystalParams& params,
                                   const GeometryParams& geom, Complex tau,
                                   std::span<const double> delays_s,
                                   const FrequencyGrid& grid,
                                   const FilterSpec* filter) {
  if (std::abs(tau) > 1.0 + 1e-12)
    throw InvalidArgument("sample reflectivity needs |tau| <= 1");
  const SpectralWeights w = spectral_weights(params, grid, filter);
  if (!(w.flux > 0.0))
    throw UndefinedCoherence("no spectral flux remains after filtering");

  const double tau_abs = std::abs(tau);
  std::vector<Complex> out(delays_s.size());
  for (std::size_t j = 0; j < delays_s.size(); ++j) {
    const double xi = path_mismatch_m(params, geom, delays_s[j]);
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < w.omega.size(); ++k) {
      acc += w.weight[k] * std::polar(1.0, w.omega[k] * xi / kC);
    }
    out[j] = tau_abs * acc / w.flux;
  }
  return out;
}

Complex g1_of_delay(const CrystalParams& params, const GeometryParams& geom,
                    Complex tau, double delay_s, const FrequencyGrid& grid,
                    const FilterSpec* filter) {
  const double delays[1] = {delay_s};
  return g1_delay_scan(params, geom, tau, delays, grid, filter)[0];
}

double g1_triangle(const CrystalParams& params, const GeometryParams& geom,
                   Complex tau, double delay_s) {
  const double x =
      path_mismatch_m(params, geom, delay_s) / (kC * params.coherence_time_s());
  return std::abs(tau) * numerics::tri(x);
}

CoherenceLength coherence_length(const CrystalParams& params,
                                 const FilterSpec* filter) {
  params.validate();
  if (!filter) return {kC * params.coherence_time_s(), false};
  filter->validate();
  return {filter->center_wavelength_m * filter->center_wavelength_m /
              filter->bandwidth_fwhm_m,
          true};
}

}  // namespace icts::spectral
