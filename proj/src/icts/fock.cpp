#include "icts/fock.hpp"

#include <cmath>
#include <string>

#include "icts/errors.hpp"

namespace icts::fock {

namespace {

// Generator applied to a state vector: out = (g ladder_up - conj(g) ladder_down) in,
// where ladder_up/down are either {a^dag b^dag, a b} (squeezer form) or
// {a^dag b, a b^dag} (beam-splitter form, second mode lowered on the way up).
struct TwoModeGenerator {
  std::int64_t stride_a, stride_b;
  int cutoff;
  std::int64_t dim;
  Complex gain;
  bool squeezer;  // true: pair creation/annihilation; false: excitation hop

  // occupation of a mode recovered from the flat index
  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out,
             const std::vector<int>& occ_a, const std::vector<int>& occ_b) const {
    out.setZero();
    const Complex g = gain;
    const Complex gc = std::conj(gain);
    for (std::int64_t idx = 0; idx < dim; ++idx) {
      const Complex amp = in[idx];
      if (amp == Complex{}) continue;
      const int na = occ_a[static_cast<std::size_t>(idx)];
      const int nb = occ_b[static_cast<std::size_t>(idx)];
      if (squeezer) {
        // g a^dag b^dag |na, nb> -> sqrt((na+1)(nb+1)) |na+1, nb+1>
        if (na < cutoff && nb < cutoff) {
          const double w = std::sqrt(double(na + 1) * double(nb + 1));
          out[idx + stride_a + stride_b] += g * w * amp;
        }
        // -conj(g) a b |na, nb> -> -conj(g) sqrt(na nb) |na-1, nb-1>
        if (na > 0 && nb > 0) {
          const double w = std::sqrt(double(na) * double(nb));
          out[idx - stride_a - stride_b] -= gc * w * amp;
        }
      } else {
        // g a^dag b |na, nb> -> sqrt((na+1) nb) |na+1, nb-1>
        if (na < cutoff && nb > 0) {
          const double w = std::sqrt(double(na + 1) * double(nb));
          out[idx + stride_a - stride_b] += g * w * amp;
        }
        // -conj(g) a b^dag
        if (na > 0 && nb < cutoff) {
          const double w = std::sqrt(double(na) * double(nb + 1));
          out[idx - stride_a + stride_b] -= gc * w * amp;
        }
      }
    }
  }
};

std::vector<int> occupation_table(std::int64_t dim, std::int64_t stride, int base) {
  std::vector<int> occ(static_cast<std::size_t>(dim));
  for (std::int64_t idx = 0; idx < dim; ++idx)
    occ[static_cast<std::size_t>(idx)] = static_cast<int>((idx / stride) % base);
  return occ;
}

// exp(G) psi via s Taylor sub-steps of exp(G/s); G is anti-Hermitian so each
// sub-step is unitary up to roundoff.
void exponentiate_in_place(const TwoModeGenerator& gen, Eigen::VectorXcd& psi,
                           int mode_a, int mode_b, int base) {
  const double gnorm = 2.0 * std::abs(gen.gain) * base;  // coarse bound on ||G||
  const int substeps = std::max(1, static_cast<int>(std::ceil(gnorm)));
  const auto occ_a = occupation_table(gen.dim, gen.stride_a, base);
  const auto occ_b = occupation_table(gen.dim, gen.stride_b, base);
  (void)mode_a;
  (void)mode_b;

  TwoModeGenerator scaled = gen;
  scaled.gain = gen.gain / static_cast<double>(substeps);

  Eigen::VectorXcd term(psi.size());
  Eigen::VectorXcd next(psi.size());
  for (int s = 0; s < substeps; ++s) {
    Eigen::VectorXcd acc = psi;
    term = psi;
    for (int k = 1; k < 64; ++k) {
      scaled.apply(term, next, occ_a, occ_b);
      term = next / static_cast<double>(k);
      acc += term;
      if (term.norm() < 1e-18 * acc.norm()) break;
    }
    psi = acc;
  }
}

}  // namespace

FockState::FockState(int modes, int cutoff) : modes_(modes), cutoff_(cutoff) {
  if (modes < 1 || cutoff < 1)
    throw InvalidArgument("FockState needs >= 1 mode and cutoff >= 1");
  const int base = cutoff + 1;
  std::int64_t dim = 1;
  strides_.assign(static_cast<std::size_t>(modes), 0);
  for (int m = modes - 1; m >= 0; --m) {
    strides_[static_cast<std::size_t>(m)] = dim;
    dim *= base;
  }
  data_ = Eigen::VectorXcd::Zero(dim);
  data_[0] = 1.0;
}

double FockState::boundary_leakage() const {
  const int base = cutoff_ + 1;
  double leak = 0.0;
  for (std::int64_t idx = 0; idx < dimension(); ++idx) {
    const double p = std::norm(data_[idx]);
    if (p == 0.0) continue;
    for (int m = 0; m < modes_; ++m) {
      if ((idx / strides_[static_cast<std::size_t>(m)]) % base == cutoff_) {
        leak += p;
        break;
      }
    }
  }
  return leak;
}

Complex FockState::amplitude(const std::vector<int>& occupation) const {
  if (static_cast<int>(occupation.size()) != modes_)
    throw InvalidArgument("occupation length mismatch");
  std::int64_t idx = 0;
  for (int m = 0; m < modes_; ++m) {
    const int n = occupation[static_cast<std::size_t>(m)];
    if (n < 0 || n > cutoff_) throw InvalidArgument("occupation out of range");
    idx += n * strides_[static_cast<std::size_t>(m)];
  }
  return data_[idx];
}

Eigen::VectorXcd FockState::apply_annihilation(int mode) const {
  if (mode < 0 || mode >= modes_) throw InvalidArgument("mode out of range");
  const int base = cutoff_ + 1;
  const std::int64_t stride = strides_[static_cast<std::size_t>(mode)];
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dimension());
  for (std::int64_t idx = 0; idx < dimension(); ++idx) {
    const int n = static_cast<int>((idx / stride) % base);
    if (n == 0) continue;
    const Complex amp = data_[idx];
    if (amp == Complex{}) continue;
    out[idx - stride] += std::sqrt(static_cast<double>(n)) * amp;
  }
  return out;
}

double FockState::mode_occupation(int mode) const {
  return apply_annihilation(mode).squaredNorm();
}

Complex FockState::cross_correlation(int a, int b) const {
  return apply_annihilation(a).dot(apply_annihilation(b));
}

FockState two_mode_squeeze(const FockState& state, int mode_a, int mode_b,
                           double r, double phase, double leakage_tol) {
  if (mode_a == mode_b) throw InvalidArgument("squeezer needs distinct modes");
  if (!std::isfinite(r) || r < 0.0) throw InvalidArgument("gain must be >= 0");
  FockState out = state;
  if (r == 0.0) return out;

  TwoModeGenerator gen;
  gen.stride_a = state.stride(mode_a);
  gen.stride_b = state.stride(mode_b);
  gen.cutoff = state.cutoff();
  gen.dim = state.dimension();
  gen.gain = std::polar(r, phase);
  gen.squeezer = true;
  exponentiate_in_place(gen, out.data(), mode_a, mode_b, state.cutoff() + 1);

  const double leak = out.boundary_leakage();
  if (leak >= leakage_tol) {
    const int suggested = std::min(20, 2 * state.cutoff());
    throw CutoffTooSmall(
        "two_mode_squeeze leakage " + std::to_string(leak) + " at cutoff " +
            std::to_string(state.cutoff()) + "; try cutoff >= " +
            std::to_string(suggested),
        suggested);
  }
  return out;
}

FockState beam_splitter_loss(const FockState& state, int mode, int ancilla,
                             double mu) {
  if (mode == ancilla) throw InvalidArgument("loss ancilla must differ");
  if (mu < 0.0 || mu > 1.0)
    throw InvalidArgument("beam-splitter loss needs 0 <= mu <= 1");
  // vacuum ancilla: every nonzero amplitude has ancilla occupation 0
  const int base = state.cutoff() + 1;
  const std::int64_t astride = state.stride(ancilla);
  for (std::int64_t idx = 0; idx < state.dimension(); ++idx) {
    if ((idx / astride) % base != 0 && state.data()[idx] != Complex{})
      throw ContractViolation("loss ancilla is not vacuum");
  }

  FockState out = state;
  if (mu == 1.0) return out;
  const double theta = std::acos(mu);

  TwoModeGenerator gen;
  gen.stride_a = state.stride(mode);
  gen.stride_b = astride;
  gen.cutoff = state.cutoff();
  gen.dim = state.dimension();
  gen.gain = Complex(theta, 0.0);
  gen.squeezer = false;  // theta (a^dag f - a f^dag)
  exponentiate_in_place(gen, out.data(), mode, ancilla, base);
  return out;
}

OracleReport oracle_induced_coherence(double r, double mu, int cutoff,
                                      double pump_phase_diff,
                                      double leakage_tol) {
  if (mu < 0.0 || mu > 1.0) throw InvalidArgument("oracle needs 0 <= mu <= 1");
  constexpr int kHardCap = 20;
  int current = std::max(2, cutoff);
  for (;;) {
    try {
      // modes: 0 = b_s (signal 1), 1 = idler wire, 2 = c_s (signal 2), 3 = ancilla
      FockState psi(4, current);
      psi = two_mode_squeeze(psi, 0, 1, r, 1.5707963267948966, leakage_tol);
      psi = beam_splitter_loss(psi, 1, 3, mu);
      psi = two_mode_squeeze(psi, 2, 1, r, 1.5707963267948966 + pump_phase_diff,
                             leakage_tol);

      OracleReport report;
      report.cutoff = current;
      report.leakage = psi.boundary_leakage();
      if (report.leakage >= leakage_tol)
        throw CutoffTooSmall("oracle chain leakage too large",
                             std::min(kHardCap, 2 * current));
      report.flux_s1 = psi.mode_occupation(0);
      report.flux_s2 = psi.mode_occupation(2);
      report.cross = psi.cross_correlation(0, 2);
      const double denom = std::sqrt(report.flux_s1 * report.flux_s2);
      if (denom == 0.0)
        throw UndefinedCoherence("oracle fluxes vanish (r = 0)");
      report.g1_abs = std::abs(report.cross) / denom;
      return report;
    } catch (const CutoffTooSmall&) {
      if (current >= kHardCap) throw;
      current = std::min(kHardCap, 2 * current);
    }
  }
}

}  // namespace icts::fock
