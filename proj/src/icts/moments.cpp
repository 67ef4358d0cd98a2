#include "icts/moments.hpp"

#include <cmath>
#include <utility>

#include "icts/errors.hpp"

namespace icts::moments {

SqueezerCoeffs SqueezerCoeffs::from_gain(double r, double v_phase) {
  if (!std::isfinite(r) || r < 0.0)
    throw InvalidArgument("squeezer gain must be finite and >= 0");
  return {Complex(std::cosh(r), 0.0),
          std::polar(std::sinh(r), v_phase)};
}

double SqueezerCoeffs::unitarity_defect() const {
  return std::abs(std::norm(u) - std::norm(v) - 1.0);
}

ModeId MomentState::add_mode(std::string label) {
  const int n = mode_count();
  labels_.push_back(std::move(label));
  normal_.conservativeResizeLike(Eigen::MatrixXcd::Zero(n + 1, n + 1));
  anomalous_.conservativeResizeLike(Eigen::MatrixXcd::Zero(n + 1, n + 1));
  return ModeId{n};
}

void MomentState::require_mode(ModeId m, const char* what) const {
  if (m.index < 0 || m.index >= mode_count())
    throw InvalidArgument(std::string("unknown mode handle for ") + what);
}

const std::string& MomentState::label(ModeId m) const {
  require_mode(m, "label");
  return labels_[static_cast<std::size_t>(m.index)];
}

Complex MomentState::normal(ModeId i, ModeId j) const {
  require_mode(i, "normal moment");
  require_mode(j, "normal moment");
  return normal_(i.index, j.index);
}

Complex MomentState::anomalous(ModeId i, ModeId j) const {
  require_mode(i, "anomalous moment");
  require_mode(j, "anomalous moment");
  return anomalous_(i.index, j.index);
}

bool MomentState::is_vacuum_mode(ModeId m) const {
  require_mode(m, "vacuum check");
  const int k = m.index;
  return normal_.row(k).isZero(0.0) && normal_.col(k).isZero(0.0) &&
         anomalous_.row(k).isZero(0.0) && anomalous_.col(k).isZero(0.0);
}

double MomentState::max_hermiticity_defect() const {
  if (mode_count() == 0) return 0.0;
  return (normal_ - normal_.adjoint()).cwiseAbs().maxCoeff();
}

double MomentState::max_symmetry_defect() const {
  if (mode_count() == 0) return 0.0;
  return (anomalous_ - anomalous_.transpose()).cwiseAbs().maxCoeff();
}

void MomentState::check_physical(double tol) const {
  for (int k = 0; k < mode_count(); ++k) {
    const double n = normal_(k, k).real();
    if (n < -tol)
      throw ContractViolation("negative occupation on mode " + labels_[k]);
    const double lhs = n * (n + 1.0);
    const double rhs = std::norm(anomalous_(k, k));
    if (rhs > lhs + tol)
      throw ContractViolation("Cauchy-Schwarz violation on mode " + labels_[k]);
  }
}

// With N = <a^dag a>, M = <a a> and the map a_i -> P_ij a_j + Q_ij a_j^dag:
//   N' = conj(P) N P^T + conj(P) conj(M) Q^T + conj(Q) M P^T
//        + conj(Q) (N^T + I) Q^T
//   M' = P M P^T + P (N^T + I) Q^T + Q N P^T + Q conj(M) Q^T
// The (N^T + I) terms carry the commutator [a, a^dag] = 1.
MomentState MomentState::transformed(const Eigen::MatrixXcd& P,
                                     const Eigen::MatrixXcd& Q) const {
  const int n = mode_count();
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd nt_comm = normal_.transpose() + identity;
  const Eigen::MatrixXcd mc = anomalous_.conjugate();

  MomentState out = *this;
  out.normal_ = P.conjugate() * normal_ * P.transpose() +
                P.conjugate() * mc * Q.transpose() +
                Q.conjugate() * anomalous_ * P.transpose() +
                Q.conjugate() * nt_comm * Q.transpose();
  out.anomalous_ = P * anomalous_ * P.transpose() +
                   P * nt_comm * Q.transpose() + Q * normal_ * P.transpose() +
                   Q * mc * Q.transpose();
  return out;
}

MomentState apply_two_mode_squeezer(const MomentState& state, ModeId mode_a,
                                    ModeId mode_b,
                                    const SqueezerCoeffs& coeffs) {
  state.require_mode(mode_a, "squeezer");
  state.require_mode(mode_b, "squeezer");
  if (mode_a == mode_b)
    throw InvalidArgument("two-mode squeezer needs two distinct modes");
  if (coeffs.unitarity_defect() > 1e-8)
    throw InvalidCoefficients("squeezer coefficients violate |u|^2-|v|^2=1");

  const int n = state.mode_count();
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(n, n);
  P(mode_a.index, mode_a.index) = coeffs.u;
  P(mode_b.index, mode_b.index) = coeffs.u;
  Q(mode_a.index, mode_b.index) = coeffs.v;
  Q(mode_b.index, mode_a.index) = coeffs.v;
  return state.transformed(P, Q);
}

MomentState apply_loss(const MomentState& state, ModeId mode, Complex mu,
                       ModeId noise_mode) {
  state.require_mode(mode, "loss");
  state.require_mode(noise_mode, "loss noise");
  if (mode == noise_mode)
    throw InvalidArgument("loss noise mode must differ from the lossy mode");
  if (std::abs(mu) > 1.0 + 1e-12)
    throw InvalidArgument("loss transmissivity must satisfy |mu| <= 1");
  if (!state.is_vacuum_mode(noise_mode))
    throw ContractViolation("loss noise mode " + state.label(noise_mode) +
                            " is not vacuum");

  // Unitary completion [[mu, nu], [-nu, conj(mu)]] of the lossy map keeps the
  // output commutator exactly 1; the injected noise operator is nu * a_f with
  // nu^2 = 1 - |mu|^2.
  const double nu = std::sqrt(std::max(0.0, 1.0 - std::norm(mu)));
  const int n = state.mode_count();
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(n, n);
  P(mode.index, mode.index) = mu;
  P(mode.index, noise_mode.index) = nu;
  P(noise_mode.index, mode.index) = -nu;
  P(noise_mode.index, noise_mode.index) = std::conj(mu);
  return state.transformed(P, Q);
}

Complex cross_correlation(const MomentState& state, ModeId mode_a, ModeId mode_b,
                          double extra_phase) {
  const Complex raw = state.normal(mode_a, mode_b);
  return raw * std::polar(1.0, extra_phase);
}

}  // namespace icts::moments
