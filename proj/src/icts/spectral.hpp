#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "icts/moments.hpp"

namespace icts::spectral {

using Complex = std::complex<double>;

// Phase-matching and gain description of one nonlinear crystal. Detunings
// enter through Delta(Omega) = D * Omega with D the difference of inverse
// group velocities; dispersion beyond first order is out of scope and the
// group-velocity parameters are plain inputs.
struct CrystalParams {
  double length_m = 0.0;            // L > 0
  double sigma_per_m = 0.0;         // nonlinear gain coefficient, >= 0
  double inv_gv_signal_s_per_m = 0.0;  // N_s
  double inv_gv_idler_s_per_m = 0.0;   // N_i
  double lambda_pump_m = 0.0;
  double lambda_signal_m = 0.0;
  double lambda_idler_m = 0.0;

  double group_velocity_mismatch() const {  // D = N_i - N_s (signed)
    return inv_gv_idler_s_per_m - inv_gv_signal_s_per_m;
  }
  double coherence_time_s() const {  // |D| L, the triangle FWHM in delay
    return std::abs(group_velocity_mismatch()) * length_m;
  }
  double omega_signal() const;
  double omega_idler() const;

  void validate() const;

  // Signal wavelength fixed by energy conservation with a monochromatic pump.
  static double derive_signal_wavelength(double lambda_pump_m,
                                         double lambda_idler_m);
};

struct PumpParams {
  double pump_flux_per_s_m2 = 0.0;  // F0, photons / (s m^2)
  double chi2_m_per_v = 0.0;
  double n_signal = 1.0;
  double n_idler = 1.0;
  double n_pump = 1.0;
  double omega_signal_rad_s = 0.0;
  double omega_idler_rad_s = 0.0;
  double omega_pump_rad_s = 0.0;

  void validate() const;
};

// sigma = sqrt(hbar w_s w_i w_p chi2^2 F0 / (8 eps0 c^3 n_s n_i n_p)), in 1/m.
double sigma_from_pump(const PumpParams& pump);

// Arm segment lengths entering the correlation phase.
struct GeometryParams {
  double z1_m = 0.0;
  double z2_m = 0.0;
  double z3_m = 0.0;
  double z4_m = 0.0;
};

enum class FilterShape { rectangular, gaussian };

// Narrowband spectral filter in the detection path. The filter acts on
// whichever beam its center wavelength falls closest to; with a monochromatic
// pump a signal detuning +Omega pairs with idler detuning -Omega, so either
// placement enters the correlation integrand directly in Omega.
struct FilterSpec {
  double center_wavelength_m = 0.0;
  double bandwidth_fwhm_m = 0.0;  // B > 0, FWHM in wavelength
  FilterShape shape = FilterShape::rectangular;

  void validate() const;
};

// Intensity transmission H(Omega) at signal detuning Omega.
double filter_intensity_transmission(const FilterSpec& filter,
                                     const CrystalParams& params,
                                     double omega_detuning);

// Uniform symmetric detuning grid for the spectral quadratures.
struct FrequencyGrid {
  double span_rad_s = 0.0;  // total extent; samples run from -span/2 to span/2
  int count = 0;            // odd counts place a sample exactly at Omega = 0

  double step() const { return span_rad_s / (count - 1); }
  double omega(int k) const { return -0.5 * span_rad_s + step() * k; }

  void validate() const;

  // Default for correlation work: 192 sinc lobes per side. The truncated tail
  // of sinc^2 enters |g1| at the few-1e-4 level at this span, inside the 1e-3
  // quadrature budget.
  static FrequencyGrid for_source(const CrystalParams& params, int lobes = 192,
                                  int count = 8193);
  // Narrow default for spectrum export: 8 lobes per side resolves the line
  // shape finely.
  static FrequencyGrid for_spectrum(const CrystalParams& params, int count = 4097);
  // Matched to the filter passband: a rectangular filter gets its exact
  // support (grid endpoints on the edges), a gaussian gets 8 FWHM.
  static FrequencyGrid for_filter(const CrystalParams& params,
                                  const FilterSpec& filter, int count = 8193);
};

enum class GainModel { general, low_gain };

// Spectral Bogoliubov coefficients U(Omega), V(Omega).
// general: Gamma = sqrt(sigma^2 - Delta^2/4) on the principal branch, with the
//          imaginary-Gamma region evaluated through cos/sin continuity and the
//          Gamma -> 0 limit by series.
// low_gain: U = 1, V = sigma L sinc(D L Omega / 2) e^{i Delta L / 2}.
moments::SqueezerCoeffs bogoliubov_coeffs(const CrystalParams& params,
                                          double omega_detuning, GainModel model);

struct SpectrumResult {
  std::vector<double> omega_detunings;
  std::vector<double> intensity;      // |V(Omega)|^2, low gain
  double fwhm_rad_s = 0.0;
  double fwhm_nm = 0.0;               // at the idler wavelength
  double center_wavelength_m = 0.0;   // wavelength of the intensity peak
};

// Low-gain idler spectrum on the grid plus derived widths.
// Throws InsufficientSpan when the grid cannot bracket the FWHM.
SpectrumResult idler_spectrum(const CrystalParams& params,
                              const FrequencyGrid& grid);

// Photon flux of either signal beam: quadrature of
// (sigma L)^2/(2 pi) * integral sinc^2(D L Omega / 2) dOmega,
// equal to sigma^2 L / D in closed form. Trapezoid over many lobes plus the
// analytic sin^2(x)/x^2 tail beyond the truncation.
double signal_flux(const CrystalParams& params, int lobes = 256,
                   int points_per_lobe = 64);

// Path mismatch (z1 + cT) - (z4 - c N_i L - z2 - z3) in meters.
double path_mismatch_m(const CrystalParams& params, const GeometryParams& geom,
                       double delay_s);
// Delay T such that the mismatch equals `offset` triangle widths (c D L).
double delay_for_offset(const CrystalParams& params, const GeometryParams& geom,
                        double offset);

// Normalized first-order correlation between the two signal beams at delay T,
// by quadrature of the (filtered) spectral intensity against the delay phase.
// Throws UndefinedCoherence when the filtered flux vanishes.
Complex g1_of_delay(const CrystalParams& params, const GeometryParams& geom,
                    Complex tau, double delay_s, const FrequencyGrid& grid,
                    const FilterSpec* filter = nullptr);

// Same integrand evaluated for many delays with the spectral weights computed
// once. Results are identical to per-delay g1_of_delay calls.
std::vector<Complex> g1_delay_scan(const CrystalParams& params,
                                   const GeometryParams& geom, Complex tau,
                                   std::span<const double> delays_s,
                                   const FrequencyGrid& grid,
                                   const FilterSpec* filter = nullptr);

// Analytic form |tau| tri(mismatch / (c D L)).
double g1_triangle(const CrystalParams& params, const GeometryParams& geom,
                   Complex tau, double delay_s);

struct CoherenceLength {
  double meters = 0.0;
  bool estimate = false;  // true for the filtered inverse-bandwidth value
};

// Unfiltered: c D L (the triangle base half-width). Filtered: lambda^2 / B of
// the filter, flagged as an estimate.
CoherenceLength coherence_length(const CrystalParams& params,
                                 const FilterSpec* filter = nullptr);

}  // namespace icts::spectral
