#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace icts::fock {

using Complex = std::complex<double>;

// Dense truncated Fock-basis state over m modes with a common per-mode photon
// cutoff. Amplitudes are stored flat; mode 0 has the largest stride.
class FockState {
 public:
  FockState(int modes, int cutoff);  // vacuum

  int modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  std::int64_t dimension() const { return static_cast<std::int64_t>(data_.size()); }

  double norm() const { return data_.norm(); }

  // Probability mass sitting on the cutoff boundary (any occupation == cutoff);
  // the standard truncation-quality proxy, since the truncated generators stay
  // anti-Hermitian and the norm itself is conserved.
  double boundary_leakage() const;

  Complex amplitude(const std::vector<int>& occupation) const;

  double mode_occupation(int mode) const;          // <n_mode>
  Complex cross_correlation(int a, int b) const;   // <a_a^dag a_b>

  Eigen::VectorXcd& data() { return data_; }
  const Eigen::VectorXcd& data() const { return data_; }

  // out = (annihilation on `mode`) applied to this state.
  Eigen::VectorXcd apply_annihilation(int mode) const;

  std::int64_t stride(int mode) const { return strides_[static_cast<std::size_t>(mode)]; }

 private:
  int modes_;
  int cutoff_;
  std::vector<std::int64_t> strides_;
  Eigen::VectorXcd data_;
};

// exp(xi a^dag b^dag - conj(xi) a b) with xi = r e^{i phase}, evaluated by
// scaling-and-squaring (sub-stepped Taylor applied to the state vector).
// Throws CutoffTooSmall when the boundary leakage reaches leakage_tol.
FockState two_mode_squeeze(const FockState& state, int mode_a, int mode_b,
                           double r, double phase = 1.5707963267948966,
                           double leakage_tol = 1e-6);

// Beam-splitter purification of the loss channel: rotation angle
// theta = arccos(mu) between `mode` and a vacuum `ancilla`.
FockState beam_splitter_loss(const FockState& state, int mode, int ancilla,
                             double mu);

struct OracleReport {
  double flux_s1 = 0.0;
  double flux_s2 = 0.0;
  Complex cross{0.0, 0.0};
  double g1_abs = 0.0;
  double leakage = 0.0;
  int cutoff = 0;
};

// Brute-force verification of the two-crystal chain: 4 modes
// (b_s, b_i -> idler, c_s, loss ancilla), squeeze-loss-squeeze, then dense
// operator expectations. Escalates the cutoff (doubling, hard cap 20) until
// the leakage criterion holds; throws CutoffTooSmall if the cap is reached.
OracleReport oracle_induced_coherence(double r, double mu, int cutoff = 12,
                                      double pump_phase_diff = 0.0,
                                      double leakage_tol = 1e-6);

}  // namespace icts::fock
