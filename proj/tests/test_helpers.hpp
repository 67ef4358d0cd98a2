#pragma once

#include "icts/spectral.hpp"

namespace icts::testing {

// 20 mm crystal with the group-velocity mismatch calibrated so the idler line
// has a 1.6 nm FWHM at 1552.3 nm (D L = 4.45033e-12 s, c D L = 1.3342 mm).
inline spectral::CrystalParams reference_crystal(double sigma = 0.05) {
  spectral::CrystalParams c;
  c.length_m = 0.02;
  c.sigma_per_m = sigma;
  c.inv_gv_signal_s_per_m = 7.54e-9;
  c.inv_gv_idler_s_per_m = 7.54e-9 + 2.2251632314126107e-10;
  c.lambda_pump_m = 532e-9;
  c.lambda_idler_m = 1552.3e-9;
  c.lambda_signal_m =
      spectral::CrystalParams::derive_signal_wavelength(532e-9, 1552.3e-9);
  return c;
}

}  // namespace icts::testing
