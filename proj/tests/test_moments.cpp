#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "icts/errors.hpp"
#include "icts/moments.hpp"
#include "icts/rng.hpp"

using namespace icts;
using moments::ModeId;
using moments::MomentState;
using moments::SqueezerCoeffs;
using Complex = std::complex<double>;

namespace {

struct TwoModes {
  MomentState state;
  ModeId a, b;
};

TwoModes vacuum_pair() {
  TwoModes out;
  out.a = out.state.add_mode("a");
  out.b = out.state.add_mode("b");
  return out;
}

}  // namespace

TEST_CASE("squeezer coefficients from gain satisfy unitarity") {
  for (int i = 0; i <= 40; ++i) {
    const double r = 0.025 * i;
    CHECK(SqueezerCoeffs::from_gain(r).unitarity_defect() <= 1e-10);
    CHECK(SqueezerCoeffs::from_gain(r, 0.37).unitarity_defect() <= 1e-10);
  }
}

TEST_CASE("zero-gain squeezer is the identity") {
  auto [state, a, b] = vacuum_pair();
  // make the input non-trivial first
  state = apply_two_mode_squeezer(state, a, b, SqueezerCoeffs::from_gain(0.4));
  const auto before_n = state.normal_matrix();
  const auto before_m = state.anomalous_matrix();
  state = apply_two_mode_squeezer(state, a, b, SqueezerCoeffs::from_gain(0.0));
  CHECK(state.normal_matrix() == before_n);
  CHECK(state.anomalous_matrix() == before_m);
}

TEST_CASE("two-mode squeezed vacuum occupations and pair moment") {
  // frozen against the truncated Fock oracle (see test_fock) and the
  // closed forms sinh^2 r and cosh r sinh r
  auto [state, a, b] = vacuum_pair();
  state = apply_two_mode_squeezer(state, a, b,
                                  SqueezerCoeffs::from_gain(0.3, 0.0));
  CHECK(state.normal(a, a).real() == doctest::Approx(0.0927326091211339).epsilon(1e-12));
  CHECK(state.normal(b, b).real() == doctest::Approx(0.0927326091211339).epsilon(1e-12));
  CHECK(state.anomalous(a, b).real() ==
        doctest::Approx(0.3183267910741206).epsilon(1e-12));
  CHECK(std::abs(state.anomalous(a, b).imag()) < 1e-15);

  // with the default v = i sinh r convention only the phase moves
  auto [state2, c, d] = vacuum_pair();
  state2 = apply_two_mode_squeezer(state2, c, d, SqueezerCoeffs::from_gain(0.3));
  CHECK(std::abs(state2.anomalous(c, d)) ==
        doctest::Approx(0.3183267910741206).epsilon(1e-12));
  CHECK(std::arg(state2.anomalous(c, d)) ==
        doctest::Approx(1.5707963267948966).epsilon(1e-12));
}

TEST_CASE("lossless channel leaves the state untouched") {
  auto [state, a, b] = vacuum_pair();
  const auto f = state.add_mode("f");
  state = apply_two_mode_squeezer(state, a, b, SqueezerCoeffs::from_gain(0.3));
  const auto before_n = state.normal_matrix();
  const auto before_m = state.anomalous_matrix();
  state = apply_loss(state, a, Complex{1.0, 0.0}, f);
  CHECK((state.normal_matrix() - before_n).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((state.anomalous_matrix() - before_m).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("full absorption empties the mode") {
  auto [state, a, b] = vacuum_pair();
  const auto f = state.add_mode("f");
  state = apply_two_mode_squeezer(state, a, b, SqueezerCoeffs::from_gain(0.3));
  state = apply_loss(state, a, Complex{0.0, 0.0}, f);
  CHECK(std::abs(state.normal(a, a)) < 1e-15);
  CHECK(std::abs(state.normal(a, b)) < 1e-15);
  CHECK(std::abs(state.anomalous(a, b)) < 1e-15);
}

TEST_CASE("half-amplitude loss scales the occupation by |mu|^2") {
  auto [state, a, b] = vacuum_pair();
  const auto f = state.add_mode("f");
  state = apply_two_mode_squeezer(state, a, b, SqueezerCoeffs::from_gain(0.3));
  state = apply_loss(state, a, Complex{0.5, 0.0}, f);
  // 0.25 sinh^2(0.3), cross-checked against the Fock oracle
  CHECK(state.normal(a, a).real() ==
        doctest::Approx(0.0231831522802835).epsilon(1e-12));
}

TEST_CASE("two cascaded losses equal one loss with the product transmissivity") {
  const Complex mu1 = std::polar(0.8, 0.3);
  const Complex mu2 = std::polar(0.6, -1.1);

  MomentState base;
  const auto a = base.add_mode("a");
  const auto b = base.add_mode("b");
  const auto f1 = base.add_mode("f1");
  const auto f2 = base.add_mode("f2");
  const auto f3 = base.add_mode("f3");
  base = apply_two_mode_squeezer(base, a, b, SqueezerCoeffs::from_gain(0.45));

  auto twice = apply_loss(base, a, mu1, f1);
  twice = apply_loss(twice, a, mu2, f2);
  const auto once = apply_loss(base, a, mu1 * mu2, f3);

  for (const auto i : {a, b}) {
    for (const auto j : {a, b}) {
      CHECK(std::abs(twice.normal(i, j) - once.normal(i, j)) <= 1e-12);
      CHECK(std::abs(twice.anomalous(i, j) - once.anomalous(i, j)) <= 1e-12);
    }
  }
}

TEST_CASE("spectator modes are bit-exactly untouched") {
  MomentState state;
  const auto a = state.add_mode("a");
  const auto b = state.add_mode("b");
  const auto c = state.add_mode("c");
  const auto d = state.add_mode("d");
  const auto f = state.add_mode("f");
  state = apply_two_mode_squeezer(state, c, d, SqueezerCoeffs::from_gain(0.7));

  const Complex ncc = state.normal(c, c);
  const Complex mcd = state.anomalous(c, d);
  auto next = apply_two_mode_squeezer(state, a, b, SqueezerCoeffs::from_gain(0.3));
  CHECK(next.normal(c, c) == ncc);
  CHECK(next.anomalous(c, d) == mcd);

  next = apply_loss(next, a, Complex{0.4, 0.1}, f);
  CHECK(next.normal(c, c) == ncc);
  CHECK(next.anomalous(c, d) == mcd);
}

TEST_CASE("random squeezer/loss chains keep matrix structure and physicality") {
  rng::Xoshiro256 gen(2024);
  for (int trial = 0; trial < 25; ++trial) {
    MomentState state;
    std::vector<ModeId> modes;
    for (int m = 0; m < 4; ++m)
      modes.push_back(state.add_mode("m" + std::to_string(m)));

    for (int step = 0; step < 6; ++step) {
      const auto i = static_cast<std::size_t>(gen.next() % 4);
      auto j = static_cast<std::size_t>(gen.next() % 4);
      if (j == i) j = (j + 1) % 4;
      if (gen.uniform() < 0.6) {
        const double r = gen.uniform();
        const double phase = 6.28 * gen.uniform();
        state = apply_two_mode_squeezer(state, modes[i], modes[j],
                                        SqueezerCoeffs::from_gain(r, phase));
      } else {
        const auto noise = state.add_mode("f" + std::to_string(step));
        const Complex mu = std::polar(gen.uniform(), 6.28 * gen.uniform());
        state = apply_loss(state, modes[i], mu, noise);
      }
    }
    CHECK(state.max_hermiticity_defect() <= 1e-12);
    CHECK(state.max_symmetry_defect() <= 1e-12);
    CHECK_NOTHROW(state.check_physical());
  }
}

TEST_CASE("cross correlation reads") {
  auto [state, a, b] = vacuum_pair();
  CHECK(cross_correlation(state, a, b) == Complex{0.0, 0.0});

  state = apply_two_mode_squeezer(state, a, b, SqueezerCoeffs::from_gain(0.3));
  const Complex diag = cross_correlation(state, a, a, 0.0);
  CHECK(diag.imag() == doctest::Approx(0.0));
  CHECK(diag.real() == doctest::Approx(0.0927326091211339).epsilon(1e-12));

  // extra phase multiplies the raw moment exactly
  const Complex base = cross_correlation(state, a, a, 0.0);
  const Complex rotated = cross_correlation(state, a, a, 0.9);
  CHECK(std::abs(rotated - base * std::polar(1.0, 0.9)) < 1e-15);
}

TEST_CASE("precondition violations raise typed errors") {
  auto [state, a, b] = vacuum_pair();
  const auto f = state.add_mode("f");

  CHECK_THROWS_AS(apply_two_mode_squeezer(state, a, a, SqueezerCoeffs::from_gain(0.2)),
                  InvalidArgument);
  CHECK_THROWS_AS(
      apply_two_mode_squeezer(state, a, b, SqueezerCoeffs{{1.0, 0.0}, {1.0, 0.0}}),
      InvalidCoefficients);
  CHECK_THROWS_AS(apply_loss(state, a, Complex{1.5, 0.0}, f), InvalidArgument);
  CHECK_THROWS_AS(cross_correlation(state, a, ModeId{17}), InvalidArgument);

  // a non-vacuum noise mode breaks the loss contract
  auto squeezed = apply_two_mode_squeezer(state, b, f, SqueezerCoeffs::from_gain(0.2));
  CHECK_THROWS_AS(apply_loss(squeezed, a, Complex{0.5, 0.0}, f), ContractViolation);
}

TEST_CASE("squeezed vacuum saturates the Cauchy-Schwarz bound") {
  auto [state, a, b] = vacuum_pair();
  state = apply_two_mode_squeezer(state, a, b, SqueezerCoeffs::from_gain(0.6));
  const double n = state.normal(a, a).real();
  const double m2 = std::norm(state.anomalous(a, b));
  // <n_a>(<n_a>+1) = |<ab>|^2 holds exactly for the two-mode squeezed vacuum
  CHECK(n * (n + 1.0) == doctest::Approx(m2).epsilon(1e-12));
  CHECK_NOTHROW(state.check_physical());
}
