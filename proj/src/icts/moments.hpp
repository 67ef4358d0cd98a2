#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace icts::moments {

using Complex = std::complex<double>;

// Handle into a MomentState mode registry. Stable after creation.
struct ModeId {
  int index = -1;
  friend bool operator==(ModeId a, ModeId b) { return a.index == b.index; }
};

// Bogoliubov coefficients of a two-mode squeezer, a -> u a + v b^dag.
// A physical pair satisfies |u|^2 - |v|^2 = 1.
struct SqueezerCoeffs {
  Complex u{1.0, 0.0};
  Complex v{0.0, 0.0};

  // u = cosh(r), v = e^{i phase} sinh(r). The default phase pi/2 matches the
  // convention v = i sinh(r) used by the spectral coefficients.
  static SqueezerCoeffs from_gain(double r, double v_phase = 1.5707963267948966);

  // | (|u|^2 - |v|^2) - 1 |
  double unitarity_defect() const;
};

// Exact Gaussian second-moment bookkeeping over a registry of bosonic modes:
// normal moments <a_i^dag a_j> and anomalous moments <a_i a_j>. First moments
// are identically zero for every circuit built here and are not stored.
//
// The state is a value type: transformations return a new state.
class MomentState {
 public:
  MomentState() = default;

  ModeId add_mode(std::string label);

  int mode_count() const { return static_cast<int>(labels_.size()); }
  const std::string& label(ModeId m) const;

  Complex normal(ModeId i, ModeId j) const;     // <a_i^dag a_j>
  Complex anomalous(ModeId i, ModeId j) const;  // <a_i a_j>
  const Eigen::MatrixXcd& normal_matrix() const { return normal_; }
  const Eigen::MatrixXcd& anomalous_matrix() const { return anomalous_; }

  // All moments involving the mode are zero.
  bool is_vacuum_mode(ModeId m) const;

  double max_hermiticity_defect() const;  // of the normal matrix
  double max_symmetry_defect() const;     // of the anomalous matrix

  // Cauchy-Schwarz physicality <a^dag a><a a^dag> >= |<a a>|^2 per mode;
  // throws ContractViolation when violated beyond tol.
  void check_physical(double tol = 1e-9) const;

  // General linear mode transform a_i -> sum_j P_ij a_j + Q_ij a_j^dag.
  // Rows of (P|Q) for untouched modes must be identity; callers below
  // guarantee that, which keeps spectator moments bit-exact.
  MomentState transformed(const Eigen::MatrixXcd& P,
                          const Eigen::MatrixXcd& Q) const;

  void require_mode(ModeId m, const char* what) const;

 private:
  std::vector<std::string> labels_;
  Eigen::MatrixXcd normal_;     // Hermitian, non-negative real diagonal
  Eigen::MatrixXcd anomalous_;  // symmetric
};

// Two-mode squeezer on (a, b): a -> u a + v b^dag, b -> u b + v a^dag.
// Throws InvalidArgument for identical modes, InvalidCoefficients when the
// unitarity defect exceeds 1e-8.
MomentState apply_two_mode_squeezer(const MomentState& state, ModeId mode_a,
                                    ModeId mode_b, const SqueezerCoeffs& coeffs);

// Loss channel a -> mu a + f with a fresh vacuum noise operator of commutator
// norm 1 - |mu|^2, realized as a unitary beam splitter onto noise_mode so the
// commutator bookkeeping stays explicit. noise_mode must be vacuum.
MomentState apply_loss(const MomentState& state, ModeId mode, Complex mu,
                       ModeId noise_mode);

// <a^dag b> e^{i extra_phase}; pure read.
Complex cross_correlation(const MomentState& state, ModeId mode_a, ModeId mode_b,
                          double extra_phase = 0.0);

}  // namespace icts::moments
