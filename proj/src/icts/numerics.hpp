#pragma once

#include <cstddef>
#include <span>

namespace icts::numerics {

// max(0, 1 - |x|); Fourier transform of the sinc^2 spectral intensity.
inline double tri(double x) {
  const double a = x < 0 ? -x : x;
  return a >= 1.0 ? 0.0 : 1.0 - a;
}

// sin(x)/x with the removable singularity handled by series.
double sinc(double x);

struct Fwhm {
  double width = 0.0;
  double left = 0.0;    // half-maximum crossing positions
  double right = 0.0;
  double peak_x = 0.0;
  double peak_y = 0.0;
};

// Full width at half maximum of sampled data, with linear interpolation at the
// half-power crossings. Throws InsufficientSpan when the samples do not
// bracket both crossings.
Fwhm measure_fwhm(std::span<const double> xs, std::span<const double> ys);

}  // namespace icts::numerics
