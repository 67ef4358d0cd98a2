#include "icts/numerics.hpp"

#include <cmath>

#include "icts/errors.hpp"

namespace icts::numerics {

double sinc(double x) {
  const double a = std::abs(x);
  if (a < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

Fwhm measure_fwhm(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 3)
    throw InvalidArgument("measure_fwhm needs matching arrays with >= 3 samples");

  std::size_t peak = 0;
  for (std::size_t i = 1; i < ys.size(); ++i)
    if (ys[i] > ys[peak]) peak = i;

  const double half = ys[peak] / 2.0;
  Fwhm result;
  result.peak_x = xs[peak];
  result.peak_y = ys[peak];

  // walk outwards from the peak to the first crossings below half maximum
  std::size_t i = peak;
  while (i > 0 && ys[i] >= half) --i;
  if (ys[i] >= half)
    throw InsufficientSpan("samples do not bracket the left half-maximum crossing");
  {
    const double t = (half - ys[i]) / (ys[i + 1] - ys[i]);
    result.left = xs[i] + t * (xs[i + 1] - xs[i]);
  }

  std::size_t j = peak;
  while (j + 1 < ys.size() && ys[j] >= half) ++j;
  if (ys[j] >= half)
    throw InsufficientSpan("samples do not bracket the right half-maximum crossing");
  {
    const double t = (half - ys[j]) / (ys[j - 1] - ys[j]);
    result.right = xs[j] + t * (xs[j - 1] - xs[j]);
  }

  result.width = std::abs(result.right - result.left);
  return result;
}

}  // namespace icts::numerics
