#include "icts/coherence.hpp"

#include <cmath>

#include "icts/errors.hpp"

namespace icts::coherence {

using moments::MomentState;
using moments::SqueezerCoeffs;

void SingleModeSetup::validate() const {
  if (!std::isfinite(gain) || gain < 0.0)
    throw InvalidArgument("setup gain must be finite and >= 0");
  if (std::abs(mu) > 1.0 + 1e-12)
    throw InvalidArgument("setup needs |mu| <= 1");
}

ChainState build_chain(const SingleModeSetup& setup) {
  setup.validate();

  MomentState state;
  const auto b_s = state.add_mode("b_s");
  const auto b_i = state.add_mode("b_i");
  const auto c_s = state.add_mode("c_s");
  const auto f = state.add_mode("f");

  const auto coeffs1 = SqueezerCoeffs::from_gain(setup.gain, setup.v_phase);
  const auto coeffs2 =
      SqueezerCoeffs::from_gain(setup.gain, setup.v_phase + setup.pump_phase_diff);

  state = apply_two_mode_squeezer(state, b_s, b_i, coeffs1);
  state = apply_loss(state, b_i, setup.mu, f);
  state = apply_two_mode_squeezer(state, c_s, b_i, coeffs2);

  return ChainState{std::move(state), b_s, c_s, b_i, f};
}

Complex complex_coherence(const SingleModeSetup& setup) {
  const ChainState chain = build_chain(setup);
  const double flux1 = chain.state.normal(chain.signal_1, chain.signal_1).real();
  const double flux2 = chain.state.normal(chain.signal_2, chain.signal_2).real();
  if (flux1 <= 0.0 || flux2 <= 0.0)
    throw UndefinedCoherence("degree of coherence undefined at zero flux (r = 0)");
  const Complex cross =
      cross_correlation(chain.state, chain.signal_1, chain.signal_2);
  return cross / std::sqrt(flux1 * flux2);
}

double degree_of_coherence(const SingleModeSetup& setup) {
  return std::abs(complex_coherence(setup));
}

double low_gain_coherence(Complex mu) {
  if (std::abs(mu) > 1.0 + 1e-12)
    throw InvalidArgument("low_gain_coherence needs |mu| <= 1");
  return std::abs(mu);
}

double coherence_closed_form(double gain, double mu_abs) {
  const double v2 = std::pow(std::sinh(gain), 2);
  return mu_abs * std::sqrt((1.0 + v2) / (1.0 + mu_abs * mu_abs * v2));
}

std::pair<double, double> signal_fluxes(const SingleModeSetup& setup) {
  const ChainState chain = build_chain(setup);
  return {chain.state.normal(chain.signal_1, chain.signal_1).real(),
          chain.state.normal(chain.signal_2, chain.signal_2).real()};
}

}  // namespace icts::coherence
