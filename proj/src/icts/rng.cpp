#include "icts/rng.hpp"

#include <cmath>

#include "icts/errors.hpp"

namespace icts::rng {

namespace {

std::uint64_t poisson_inversion(Xoshiro256& gen, double mean) {
  const double limit = std::exp(-mean);
  std::uint64_t k = 0;
  double p = gen.uniform();
  while (p > limit) {
    ++k;
    p *= gen.uniform();
  }
  return k;
}

double log_factorial(double k) {
  return std::lgamma(k + 1.0);
}

// Hormann (1993), "The transformed rejection method for generating Poisson
// random variables", algorithm PTRS.
std::uint64_t poisson_ptrs(Xoshiro256& gen, double mean) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);

  for (;;) {
    const double u = gen.uniform() - 0.5;
    const double v = gen.uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    const double rhs = -mean + k * loglam - log_factorial(k);
    if (lhs <= rhs) return static_cast<std::uint64_t>(k);
  }
}

}  // namespace

std::uint64_t poisson(Xoshiro256& gen, double mean) {
  if (!(mean >= 0.0)) throw InvalidArgument("poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  if (mean < 10.0) return poisson_inversion(gen, mean);
  return poisson_ptrs(gen, mean);
}

}  // namespace icts::rng
