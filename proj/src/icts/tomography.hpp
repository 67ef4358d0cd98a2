#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icts/spectral.hpp"

namespace icts::tomo {

using Complex = std::complex<double>;

struct Layer {
  double depth_m = 0.0;
  Complex tau{0.0, 0.0};  // complex reflectivity, |tau| <= 1
};

// Layered sample probed by the idler. path_multiplier 2 models the reflective
// geometry (a mirror displaced by d changes the idler path by 2d); 1 models a
// transmissive layout.
struct Sample {
  std::vector<Layer> layers;
  int path_multiplier = 2;

  void validate() const;
};

struct DetectionParams {
  double mean_counts_n0 = 0.0;     // counts/bin at unit visibility, > 0
  double dark_counts = 0.0;        // counts/bin, >= 0
  double system_visibility = 1.0;  // V_sys in [0, 1]
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct ScanConfig {
  double delay_start_m = 0.0;  // interferometer path difference, referenced to
  double delay_stop_m = 0.0;   // the zero-depth coherence point
  double coarse_step_m = 0.0;
  int fine_count = 16;
  double fine_step_m = 0.0;  // must resolve the signal fringe (>= 8 samples/period)
  std::optional<spectral::FilterSpec> filter;

  void validate(double lambda_signal_m) const;
  int coarse_count() const;
};

struct ScanPoint {
  double delay_m = 0.0;
  double visibility = 0.0;  // raw fit, not clamped; noise may exceed 1
  double phase_rad = 0.0;
  double stderr_vis = 0.0;
  std::vector<std::uint64_t> fine_counts;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  std::uint64_t seed = 0;
  std::string config_hash;
  double coherence_length_m = 0.0;  // c D L of the source used for the scan
  int path_multiplier = 2;
  double lambda_signal_m = 0.0;
  std::vector<std::string> warnings;
};

struct ProfileLayer {
  double depth_m = 0.0;
  double tau_abs = 0.0;          // clamped to [0, 1]
  double peak_visibility = 0.0;  // raw
  double uncertainty_m = 0.0;
};

struct Profile {
  std::vector<ProfileLayer> layers;
  double threshold = 0.0;  // visibility level peaks had to exceed
  std::vector<std::string> warnings;
};

// Expected counts of the diagonal-polarizer fringe:
// dark + (N0/2)(1 + V_sys * visibility * cos(phase)).
double fringe_counts(double phase_rad, double visibility,
                     const DetectionParams& det);

struct VisibilityFit {
  double visibility = 0.0;
  double phase_rad = 0.0;
  double stderr_vis = 0.0;
};

// Least-squares fit of dark-subtracted counts to a + b cos(phi + c);
// visibility = b/a. Needs >= 8 samples spanning >= 1 fringe period.
// Throws EstimationFailed on a singular or degenerate design.
VisibilityFit estimate_visibility(std::span<const double> counts,
                                  std::span<const double> phases_rad,
                                  const DetectionParams& det);

// Sum of per-layer triangular envelopes at a given path delay, clipped at 1.
// A detection filter stretches the envelope width from c D L to the filter's
// inverse-bandwidth coherence length.
double envelope_visibility(const Sample& sample,
                           const spectral::CrystalParams& crystal,
                           double delay_m,
                           const spectral::FilterSpec* filter = nullptr);

// Full synthetic delay scan: per coarse point a fine fringe scan is sampled
// with Poisson noise and fitted. Deterministic for a given seed, and
// independent of thread count (per-point counter-based RNG streams).
ScanResult simulate_axial_scan(const Sample& sample,
                               const spectral::CrystalParams& crystal,
                               const spectral::GeometryParams& geom,
                               const ScanConfig& scan,
                               const DetectionParams& det);

// Peak detection on the visibility envelope and conversion to layer estimates.
// Threshold: median + 3 scaled-MAD of the visibility samples; nearby maxima
// within 1.05 c D L of a stronger peak are suppressed.
Profile reconstruct_profile(const ScanResult& scan, double calib_system_visibility);

struct VisVsTauRow {
  double tau_abs = 0.0;
  double vis_noiseless = 0.0;  // exactly V_sys * |tau|
  double vis_noisy = 0.0;      // Poisson-sampled apex fringe, fitted
};

// Peak visibility at the apex delay for each reflectivity value.
std::vector<VisVsTauRow> visibility_vs_reflectivity_curve(
    const spectral::CrystalParams& crystal, const spectral::GeometryParams& geom,
    const DetectionParams& det, std::span<const double> tau_values);

}  // namespace icts::tomo
