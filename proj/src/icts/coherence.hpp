#pragma once

#include <complex>
#include <utility>

#include "icts/moments.hpp"

namespace icts::coherence {

using Complex = std::complex<double>;

// Single-mode two-crystal model: squeezer on (b_s, b_i), loss mu on the idler,
// squeezer on (c_s, idler).
struct SingleModeSetup {
  double gain = 0.0;            // r >= 0; u = cosh r, v = e^{i v_phase} sinh r
  Complex mu{1.0, 0.0};         // sample transmissivity/reflectivity, |mu| <= 1
  double pump_phase_diff = 0.0; // relative pump phase, applied to crystal 2's v
  double v_phase = 1.5707963267948966;  // convention v = i sinh r

  void validate() const;
};

struct ChainState {
  moments::MomentState state;
  moments::ModeId signal_1;  // b_s wire after crystal 1
  moments::ModeId signal_2;  // c_s wire after crystal 2
  moments::ModeId idler;
  moments::ModeId noise;
};

// Builds the full operator chain and returns the state plus the handles of
// the two signal modes.
ChainState build_chain(const SingleModeSetup& setup);

// |g1| between the two signal modes, computed from the moment chain.
// Throws UndefinedCoherence for gain = 0 (both fluxes vanish).
double degree_of_coherence(const SingleModeSetup& setup);

// Complex <a_s1^dag a_s2> / sqrt(flux1 flux2) from the moment chain.
Complex complex_coherence(const SingleModeSetup& setup);

// Gain -> 0 limit of the coherence: exactly |mu|.
double low_gain_coherence(Complex mu);

// |mu| sqrt((1 + |V|^2) / (1 + |mu|^2 |V|^2)) with |V| = sinh r. Closed form,
// independent of the moment engine; used as a cross-check route.
double coherence_closed_form(double gain, double mu_abs);

// (flux_s1, flux_s2) from the moment chain.
std::pair<double, double> signal_fluxes(const SingleModeSetup& setup);

}  // namespace icts::coherence
