#include "icts/tomography.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "icts/constants.hpp"
#include "icts/errors.hpp"
#include "icts/numerics.hpp"
#include "icts/parallel.hpp"
#include "icts/rng.hpp"

namespace icts::tomo {

namespace {
constexpr double kTwoPi = 2.0 * constants::pi;

double median_of(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  double m = values[mid];
  if (values.size() % 2 == 0) {
    const auto lower = std::max_element(values.begin(), values.begin() + mid);
    m = 0.5 * (m + *lower);
  }
  return m;
}
}  // namespace

void Sample::validate() const {
  if (path_multiplier != 1 && path_multiplier != 2)
    throw InvalidArgument("path_multiplier must be 1 or 2");
  double prev = -1.0;
  for (const auto& layer : layers) {
    if (std::abs(layer.tau) > 1.0 + 1e-12)
      throw InvalidArgument("layer reflectivity needs |tau| <= 1");
    if (layer.depth_m < 0.0)
      throw InvalidArgument("layer depths must be >= 0");
    if (layer.depth_m <= prev)
      throw InvalidArgument("layer depths must be strictly increasing");
    prev = layer.depth_m;
  }
}

void DetectionParams::validate() const {
  if (!(mean_counts_n0 > 0.0)) throw InvalidArgument("N0 must be > 0");
  if (dark_counts < 0.0) throw InvalidArgument("dark counts must be >= 0");
  if (system_visibility < 0.0 || system_visibility > 1.0)
    throw InvalidArgument("system visibility must lie in [0, 1]");
}

void ScanConfig::validate(double lambda_signal_m) const {
  if (!(coarse_step_m > 0.0)) throw InvalidArgument("coarse step must be > 0");
  if (delay_stop_m < delay_start_m)
    throw InvalidArgument("scan stop must be >= start");
  if (fine_count < 8) throw InvalidArgument("need >= 8 fine fringe samples");
  if (!(fine_step_m > 0.0)) throw InvalidArgument("fine step must be > 0");
  if (fine_step_m > lambda_signal_m / 8.0)
    throw InvalidArgument("fine step must resolve the signal fringe (>= 8 samples/period)");
  if ((fine_count - 1) * fine_step_m < lambda_signal_m)
    throw InvalidArgument("fine scan must span at least one fringe period");
  if (filter) filter->validate();
}

int ScanConfig::coarse_count() const {
  return 1 + static_cast<int>(
                 std::floor((delay_stop_m - delay_start_m) / coarse_step_m + 1e-9));
}

double fringe_counts(double phase_rad, double visibility,
                     const DetectionParams& det) {
  det.validate();
  if (visibility < 0.0 || visibility > 1.0 + 1e-12)
    throw InvalidArgument("fringe visibility must lie in [0, 1]");
  return det.dark_counts +
         0.5 * det.mean_counts_n0 *
             (1.0 + det.system_visibility * visibility * std::cos(phase_rad));
}

VisibilityFit estimate_visibility(std::span<const double> counts,
                                  std::span<const double> phases_rad,
                                  const DetectionParams& det) {
  det.validate();
  const auto n = counts.size();
  if (n != phases_rad.size())
    throw InvalidArgument("counts and phases must have equal length");
  if (n < 8) throw EstimationFailed("need >= 8 fringe samples");
  const auto [lo, hi] = std::minmax_element(phases_rad.begin(), phases_rad.end());
  if (*hi - *lo < kTwoPi * (1.0 - 1e-9))
    throw EstimationFailed("fringe samples must span at least one period");

  // linear model y = a + p cos(phi) + q sin(phi)
  Eigen::MatrixXd design(static_cast<Eigen::Index>(n), 3);
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    design(row, 0) = 1.0;
    design(row, 1) = std::cos(phases_rad[k]);
    design(row, 2) = std::sin(phases_rad[k]);
    y(row) = counts[k] - det.dark_counts;
  }

  const Eigen::Matrix3d gram = design.transpose() * design;
  Eigen::FullPivLU<Eigen::Matrix3d> lu(gram);
  if (!lu.isInvertible())
    throw EstimationFailed("singular fringe design (degenerate phase grid)");
  const Eigen::Matrix3d gram_inv = lu.inverse();
  const Eigen::Vector3d beta = gram_inv * (design.transpose() * y);

  const double a = beta(0);
  const double p = beta(1);
  const double q = beta(2);
  if (!(a > 0.0))
    throw EstimationFailed("nonpositive mean count after dark subtraction");
  const double b = std::hypot(p, q);

  VisibilityFit fit;
  fit.visibility = std::max(0.0, b / a);
  fit.phase_rad = std::atan2(-q, p);

  // delta-method propagation of the fit covariance to b/a
  const Eigen::VectorXd residual = y - design * beta;
  const double dof = static_cast<double>(n) - 3.0;
  const double s2 = residual.squaredNorm() / dof;
  const Eigen::Matrix3d cov = s2 * gram_inv;
  Eigen::Vector3d grad;
  if (b > 0.0) {
    grad << -b / (a * a), p / (b * a), q / (b * a);
  } else {
    grad << 0.0, 1.0 / a, 0.0;
  }
  const double var = grad.transpose() * cov * grad;
  fit.stderr_vis = std::sqrt(std::max(0.0, var));
  return fit;
}

double envelope_visibility(const Sample& sample,
                           const spectral::CrystalParams& crystal,
                           double delay_m, const spectral::FilterSpec* filter) {
  const double width = spectral::coherence_length(crystal, filter).meters;
  double env = 0.0;
  for (const auto& layer : sample.layers) {
    const double apex = sample.path_multiplier * layer.depth_m;
    env += std::abs(layer.tau) * numerics::tri((delay_m - apex) / width);
  }
  return std::min(env, 1.0);
}

ScanResult simulate_axial_scan(const Sample& sample,
                               const spectral::CrystalParams& crystal,
                               const spectral::GeometryParams& geom,
                               const ScanConfig& scan,
                               const DetectionParams& det) {
  (void)geom;  // the delay axis is referenced to the zero-depth coherence point
  sample.validate();
  crystal.validate();
  scan.validate(crystal.lambda_signal_m);
  det.validate();

  const spectral::FilterSpec* filter = scan.filter ? &*scan.filter : nullptr;
  ScanResult result;
  result.seed = det.rng_seed;
  result.path_multiplier = sample.path_multiplier;
  result.lambda_signal_m = crystal.lambda_signal_m;
  result.coherence_length_m = spectral::coherence_length(crystal, filter).meters;

  // incoherent triangle sum; warn when neighbouring layers overlap above half
  // of either peak (apex separation below one coherence length)
  for (std::size_t i = 0; i + 1 < sample.layers.size(); ++i) {
    const double gap = sample.path_multiplier *
                       (sample.layers[i + 1].depth_m - sample.layers[i].depth_m);
    if (gap < result.coherence_length_m) {
      result.warnings.push_back(
          "layers overlap above 50% of either peak; visibility estimates are biased");
      break;
    }
  }

  const int n_coarse = scan.coarse_count();
  result.points.resize(static_cast<std::size_t>(n_coarse));

  std::vector<double> local_phases(static_cast<std::size_t>(scan.fine_count));
  for (int k = 0; k < scan.fine_count; ++k)
    local_phases[static_cast<std::size_t>(k)] =
        kTwoPi * (k * scan.fine_step_m) / crystal.lambda_signal_m;

  parallel::parallel_for(static_cast<std::size_t>(n_coarse), [&](std::size_t j) {
    ScanPoint& point = result.points[j];
    point.delay_m = scan.delay_start_m + static_cast<double>(j) * scan.coarse_step_m;
    const double env = envelope_visibility(sample, crystal, point.delay_m, filter);

    point.fine_counts.resize(static_cast<std::size_t>(scan.fine_count));
    std::vector<double> counts(static_cast<std::size_t>(scan.fine_count));
    for (int k = 0; k < scan.fine_count; ++k) {
      const double pos = point.delay_m + k * scan.fine_step_m;
      const double phase = kTwoPi * pos / crystal.lambda_signal_m;
      const double expected = fringe_counts(phase, env, det);
      auto stream = rng::stream_for(det.rng_seed, j, static_cast<std::uint64_t>(k));
      const std::uint64_t sampled = rng::poisson(stream, expected);
      point.fine_counts[static_cast<std::size_t>(k)] = sampled;
      counts[static_cast<std::size_t>(k)] = static_cast<double>(sampled);
    }

    const VisibilityFit fit = estimate_visibility(counts, local_phases, det);
    point.visibility = fit.visibility;
    point.phase_rad = fit.phase_rad;
    point.stderr_vis = fit.stderr_vis;
  });

  int above_unity = 0;
  for (const auto& point : result.points)
    if (point.visibility > 1.0) ++above_unity;
  if (above_unity > 0)
    result.warnings.push_back(std::to_string(above_unity) +
                              " point(s) fit above unit visibility (noise); "
                              "raw values kept, clamped at reconstruction");

  return result;
}

Profile reconstruct_profile(const ScanResult& scan,
                            double calib_system_visibility) {
  if (!(calib_system_visibility > 0.0) || calib_system_visibility > 1.0)
    throw InvalidArgument("calibration visibility must lie in (0, 1]");
  Profile profile;
  profile.warnings = scan.warnings;
  if (scan.points.size() < 3) return profile;

  std::vector<double> vis(scan.points.size());
  for (std::size_t i = 0; i < scan.points.size(); ++i)
    vis[i] = scan.points[i].visibility;

  // robust noise floor: median + 3 * (1.4826 MAD)
  const double med = median_of(vis);
  std::vector<double> dev(vis.size());
  for (std::size_t i = 0; i < vis.size(); ++i) dev[i] = std::abs(vis[i] - med);
  const double mad = median_of(dev);
  profile.threshold = med + 3.0 * 1.4826 * mad;

  // prominence of a sample: height above the higher of the two minima walked
  // to the nearest higher terrain (array edges count as terrain ends)
  const auto prominence_of = [&vis](std::size_t i) {
    double left_base = vis[i];
    for (std::size_t k = i; k-- > 0;) {
      left_base = std::min(left_base, vis[k]);
      if (vis[k] > vis[i]) break;
    }
    double right_base = vis[i];
    for (std::size_t k = i + 1; k < vis.size(); ++k) {
      right_base = std::min(right_base, vis[k]);
      if (vis[k] > vis[i]) break;
    }
    return vis[i] - std::max(left_base, right_base);
  };
  // noise excursions reach a few sigma of prominence; genuine layer peaks sit
  // orders of magnitude above, so the cut is uncritical inside that gap
  const double prominence_min = 4.0 * (profile.threshold - med);

  struct Candidate {
    std::size_t index;
    double visibility;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 1; i + 1 < vis.size(); ++i) {
    if (vis[i] > vis[i - 1] && vis[i] > vis[i + 1] &&
        vis[i] > profile.threshold && prominence_of(i) >= prominence_min)
      candidates.push_back({i, vis[i]});
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return a.visibility > b.visibility;
            });

  // one peak per triangle: suppress weaker maxima inside the base half-width
  // (1.05 c D L keeps noise bumps on a peak's own shoulders out while leaving
  // genuine neighbours beyond 1.2 c D L untouched)
  const double radius = 1.05 * scan.coherence_length_m;
  std::vector<std::size_t> kept;
  for (const auto& cand : candidates) {
    const double delay = scan.points[cand.index].delay_m;
    bool shadowed = false;
    for (const std::size_t k : kept) {
      if (std::abs(scan.points[k].delay_m - delay) < radius) {
        shadowed = true;
        break;
      }
    }
    if (!shadowed) kept.push_back(cand.index);
  }
  std::sort(kept.begin(), kept.end());

  const double multiplier = static_cast<double>(scan.path_multiplier);
  double coarse_step = 0.0;
  if (scan.points.size() >= 2)
    coarse_step = scan.points[1].delay_m - scan.points[0].delay_m;
  for (const std::size_t k : kept) {
    ProfileLayer layer;
    layer.peak_visibility = scan.points[k].visibility;
    layer.depth_m = scan.points[k].delay_m / multiplier;
    layer.tau_abs = std::clamp(
        scan.points[k].visibility / calib_system_visibility, 0.0, 1.0);
    layer.uncertainty_m = 0.5 * coarse_step;
    profile.layers.push_back(layer);
  }
  return profile;
}

std::vector<VisVsTauRow> visibility_vs_reflectivity_curve(
    const spectral::CrystalParams& crystal, const spectral::GeometryParams& geom,
    const DetectionParams& det, std::span<const double> tau_values) {
  (void)geom;
  crystal.validate();
  det.validate();

  const int fine_count = 16;
  const double fine_step = crystal.lambda_signal_m / 12.0;
  std::vector<double> phases(fine_count);
  for (int k = 0; k < fine_count; ++k)
    phases[static_cast<std::size_t>(k)] =
        kTwoPi * (k * fine_step) / crystal.lambda_signal_m;

  std::vector<VisVsTauRow> rows;
  rows.reserve(tau_values.size());
  for (std::size_t i = 0; i < tau_values.size(); ++i) {
    const double tau = tau_values[i];
    if (tau < 0.0 || tau > 1.0)
      throw InvalidArgument("reflectivity values must lie in [0, 1]");

    std::vector<double> expected(static_cast<std::size_t>(fine_count));
    std::vector<double> noisy(static_cast<std::size_t>(fine_count));
    for (int k = 0; k < fine_count; ++k) {
      const double mean = fringe_counts(phases[static_cast<std::size_t>(k)], tau, det);
      expected[static_cast<std::size_t>(k)] = mean;
      auto stream = rng::stream_for(det.rng_seed, i, static_cast<std::uint64_t>(k));
      noisy[static_cast<std::size_t>(k)] =
          static_cast<double>(rng::poisson(stream, mean));
    }

    VisVsTauRow row;
    row.tau_abs = tau;
    row.vis_noiseless = estimate_visibility(expected, phases, det).visibility;
    row.vis_noisy = estimate_visibility(noisy, phases, det).visibility;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace icts::tomo
