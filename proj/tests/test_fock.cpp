#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "geomsense/fock.hpp"

using namespace geomsense;

namespace {
const HilbertParams h60(60);

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("hilbert params validation") {
  CHECK_THROWS_AS(HilbertParams(0), std::invalid_argument);
  CHECK(HilbertParams(1).dim() == 2);
  CHECK(HilbertParams(200).joint_dim() == 402);
}

TEST_CASE("annihilation operator entries") {
  const HilbertParams h1(1);
  const Mat a1 = annihilation(h1);
  CHECK(a1(0, 1).real() == doctest::Approx(1.0));
  CHECK(max_abs(a1 - (Mat(2, 2) << 0, 1, 0, 0).finished()) == doctest::Approx(0.0));

  const HilbertParams h2(2);
  CHECK(annihilation(h2)(1, 2).real() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("truncated commutator [a, a_dag]") {
  const Mat a = annihilation(h60);
  const Mat comm = a * a.adjoint() - a.adjoint() * a;
  const int n = h60.cutoff;
  CHECK(max_abs(comm.topLeftCorner(n, n) - Mat::Identity(n, n)) < 1e-12);
  CHECK(comm(n, n).real() == doctest::Approx(-double(n)));
}

TEST_CASE("matrix exponential basics") {
  const Mat zero = Mat::Zero(7, 7);
  CHECK(max_abs(matrix_exponential(zero) - Mat::Identity(7, 7)) < 1e-14);

  // diagonal generator i pi sigma_z / 2 on the joint space
  const HilbertParams h3(3);
  const Mat gen = cxd(0, kPi / 2.0) * lift_qubit(sigma_z(), h3);
  const Mat u = matrix_exponential(gen);
  for (int k = 0; k < h3.dim(); ++k) {
    CHECK(u(k, k).imag() == doctest::Approx(1.0));
    CHECK(u(h3.dim() + k, h3.dim() + k).imag() == doctest::Approx(-1.0));
  }
  CHECK((u.cwiseAbs().sum() - 2 * h3.dim()) == doctest::Approx(0.0).epsilon(1e-10));

  const cxd alpha(0.7, 0.2);
  const Mat a = annihilation(h60);
  const Mat g = alpha * a.adjoint() - std::conj(alpha) * a;
  CHECK(max_abs(matrix_exponential(g) * matrix_exponential(Mat(-g)) -
                Mat::Identity(h60.dim(), h60.dim())) < 1e-10);

  Mat bad = Mat::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(matrix_exponential(bad), std::invalid_argument);
}

TEST_CASE("expm_apply matches dense exponential") {
  const Mat a = annihilation(h60);
  const cxd alpha(0.9, -0.4);
  const Mat g = alpha * a.adjoint() - std::conj(alpha) * a;
  SparseMat gs = g.sparseView();
  Vec v = Vec::Zero(h60.dim());
  v(0) = 1.0 / std::sqrt(2.0);
  v(3) = cxd(0.5, 0.5);
  const Vec dense = matrix_exponential(g) * v;
  CHECK((expm_apply(gs, v) - dense).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("displacement basics") {
  CHECK(max_abs(displacement(0.0, h60) - Mat::Identity(h60.dim(), h60.dim())) < 1e-12);

  // <0|D(1)|0> = e^{-1/2}
  const Mat d1 = displacement(1.0, h60);
  CHECK(d1(0, 0).real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-10));
  CHECK(d1(0, 0).imag() == doctest::Approx(0.0));

  // D(1) D(i) = e^{-i} D(1+i)
  const Mat lhs = displacement(1.0, h60) * displacement(cxd(0, 1), h60);
  const Mat rhs = std::exp(cxd(0, -1)) * displacement(cxd(1, 1), h60);
  const int m = trusted_levels(h60, 2.0);
  CHECK(max_abs((lhs - rhs).leftCols(m)) < 1e-9);
}

TEST_CASE("displacement cutoff warning") {
  WarningList warnings;
  displacement(1.0, h60, &warnings);
  CHECK(warnings.empty());
  displacement(9.0, h60, &warnings);  // mean photons ~81 > cutoff
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("cutoff too small") != std::string::npos);
}

TEST_CASE("displacement composition law on random amplitudes") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> mag(0.0, 1.5), ang(0.0, 2 * kPi);
  for (int trial = 0; trial < 12; ++trial) {
    const cxd a = std::polar(mag(rng), ang(rng));
    const cxd b = std::polar(mag(rng), ang(rng));
    const Mat lhs = displacement(a, h60) * displacement(b, h60);
    const cxd phase = std::exp(cxd(0, std::imag(a * std::conj(b))));
    const Mat rhs = phase * displacement(a + b, h60);
    const int m = trusted_levels(h60, std::abs(a) + std::abs(b));
    CHECK(max_abs((lhs - rhs).leftCols(m)) < 1e-8);
  }
}

TEST_CASE("truncation-aware unitarity of generated unitaries") {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> mag(0.0, 1.5), ang(0.0, 2 * kPi);
  for (int trial = 0; trial < 8; ++trial) {
    const cxd a = std::polar(mag(rng), ang(rng));
    const int m = h60.cutoff - 4 * int(std::ceil(std::norm(a)));
    CHECK(unitarity_defect(displacement(a, h60), m) < 1e-8);
  }
  CHECK(unitarity_defect(squeeze(0.8, h60), h60.cutoff - 4 * 4) < 1e-8);
}

TEST_CASE("squeeze basics and conjugation") {
  CHECK(max_abs(squeeze(0.0, h60) - Mat::Identity(h60.dim(), h60.dim())) < 1e-12);

  // S†(0.5) D(0.3) S(0.5) = D(0.3 e^{0.5}); squeezed |n> tails at the cutoff
  // decay like tanh(r)^(N - n e^{2r}), so only low columns are trusted
  const Mat s = squeeze(0.5, h60);
  const Mat lhs = s.adjoint() * displacement(0.3, h60) * s;
  const Mat rhs = displacement(0.3 * std::exp(0.5), h60);
  CHECK(max_abs((lhs - rhs).leftCols(3)) < 1e-9);

  // quadrature variance of squeezed vacuum: Var(x) = e^{-2r}/2
  const double r = 0.3;
  const Vec sv = squeeze(r, h60).col(0);
  const Mat a = annihilation(h60);
  const Mat x_op = (a + Mat(a.adjoint())) / std::sqrt(2.0);
  const double mean = (sv.adjoint() * x_op * sv)(0).real();
  const double second = (sv.adjoint() * x_op * x_op * sv)(0).real();
  CHECK(second - mean * mean == doctest::Approx(std::exp(-2 * r) / 2).epsilon(1e-8));
}

TEST_CASE("squeeze conjugation law up to r = 1.2") {
  // Moderate squeezing: operator-level check on the low columns at N = 120.
  {
    const HilbertParams h(120);
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> mag(0.0, 1.0), ang(0.0, 2 * kPi);
    const std::pair<double, int> cases[] = {{0.3, 24}, {0.55, 12}, {0.7, 6}};
    for (const auto& [r, cols] : cases) {
      const cxd a = std::polar(mag(rng), ang(rng));
      const Mat s = squeeze(r, h);
      const Mat lhs = s.adjoint() * displacement(a, h) * s;
      const cxd mapped = a * std::cosh(r) + std::conj(a) * std::sinh(r);
      CHECK(max_abs((lhs - displacement(mapped, h)).leftCols(cols)) < 1e-8);
    }
  }
  // Strong squeezing: the squeezed-vacuum tail at the cutoff shrinks only
  // like tanh(r)^N, so r = 1.2 needs a large space even for the vacuum action.
  {
    const HilbertParams h(240);
    for (const cxd a : {cxd(1.0, 0.0), cxd(0.5, 0.5)}) {
      const double r = 1.2;
      const Mat s = squeeze(r, h);
      const Mat lhs = s.adjoint() * (displacement(a, h) * s.col(0));
      const cxd mapped = a * std::cosh(r) + std::conj(a) * std::sinh(r);
      const Mat rhs = displacement(mapped, h).col(0);
      CHECK(max_abs(lhs - rhs) < 1e-8);
    }
  }
}

TEST_CASE("spin conditional blocks") {
  const int d = h60.dim();
  const Mat eye = Mat::Identity(d, d);
  CHECK(max_abs(spin_conditional(eye, eye) - Mat::Identity(2 * d, 2 * d)) == 0.0);
  CHECK_THROWS_AS(spin_conditional(eye, Mat::Identity(3, 3)), std::invalid_argument);

  // off-diagonal qubit blocks are identically zero
  const Mat joint = spin_conditional(displacement(0.4, h60), displacement(-0.4, h60));
  CHECK(max_abs(joint.topRightCorner(d, d)) == 0.0);
  CHECK(max_abs(joint.bottomLeftCorner(d, d)) == 0.0);

  // conditional phases produce the expected qubit coherence e^{-2i theta}/2
  const double theta = 0.1;
  const Mat u = spin_conditional(std::exp(cxd(0, theta)) * eye, std::exp(cxd(0, -theta)) * eye);
  Mat rho_osc = Mat::Zero(d, d);
  rho_osc(0, 0) = 0.6;
  rho_osc(1, 1) = 0.4;
  Mat rho = tensor_with_qubit(plus_projector(), rho_osc);
  rho = u * rho * u.adjoint();
  const cxd c = qubit_coherence(rho);
  CHECK(std::abs(c - 0.5 * std::exp(cxd(0, -2 * theta))) < 1e-12);
}

TEST_CASE("pi pulse") {
  const HilbertParams h5(5);
  const Mat x = pi_pulse(h5);
  CHECK(max_abs(x * x - joint_identity(h5)) == 0.0);

  const Mat a = spin_conditional(displacement(0.3, h5), displacement(cxd(0, 0.2), h5));
  const Mat swapped = spin_conditional(displacement(cxd(0, 0.2), h5), displacement(0.3, h5));
  CHECK(max_abs(x * a * x - swapped) == 0.0);

  // |+> x |0> is invariant
  Mat rho_osc = Mat::Zero(h5.dim(), h5.dim());
  rho_osc(0, 0) = 1.0;
  const Mat rho = tensor_with_qubit(plus_projector(), rho_osc);
  CHECK(max_abs(x * rho * x.adjoint() - rho) < 1e-15);
}

TEST_CASE("partial traces") {
  const int d = h60.dim();
  Mat rho_osc = Mat::Zero(d, d);
  rho_osc(0, 0) = 0.25;
  rho_osc(1, 1) = 0.75;
  rho_osc(0, 1) = rho_osc(1, 0) = 0.2;
  const Mat rho = tensor_with_qubit(plus_projector(), rho_osc);

  const Mat2 q = partial_trace_oscillator(rho);
  CHECK(std::abs(q(0, 0) - 0.5) < 1e-14);
  CHECK(std::abs(q(0, 1) - 0.5) < 1e-14);
  CHECK(std::abs(q.trace() - 1.0) < 1e-14);

  const Mat osc = partial_trace_qubit(rho);
  CHECK(max_abs(osc - rho_osc) < 1e-14);

  // maximally entangled (|up,0> + |down,1>)/sqrt(2) reduces to I/2
  Vec psi = Vec::Zero(2 * d);
  psi(0) = 1 / std::sqrt(2.0);
  psi(d + 1) = 1 / std::sqrt(2.0);
  const Mat2 q2 = partial_trace_oscillator(psi * psi.adjoint());
  CHECK(std::abs(q2(0, 0) - 0.5) < 1e-14);
  CHECK(std::abs(q2(0, 1)) < 1e-14);
}

TEST_CASE("parity") {
  const Mat p = parity(h60);
  CHECK(max_abs(p * p - Mat::Identity(h60.dim(), h60.dim())) == 0.0);
  CHECK(p(0, 0).real() == doctest::Approx(1.0));

  // thermal nbar=1: Tr[P rho] = sum (1/2)^{n+1} (-1)^n = 1/3
  Mat rho = Mat::Zero(h60.dim(), h60.dim());
  for (int n = 0; n <= h60.cutoff; ++n) rho(n, n) = std::pow(0.5, n + 1);
  rho /= rho.trace().real();
  CHECK((p * rho).trace().real() == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("joint state check accepts valid states and partial trace preserves them") {
  const int d = h60.dim();
  Mat rho_osc = Mat::Zero(d, d);
  for (int n = 0; n < 6; ++n) rho_osc(n, n) = std::pow(0.5, n + 1);
  rho_osc /= rho_osc.trace().real();
  const Mat rho = tensor_with_qubit(plus_projector(), rho_osc);
  const StateCheck check = check_joint_state(rho);
  CHECK(check.ok);
  const Mat2 q = partial_trace_oscillator(rho);
  CHECK(std::abs(q.trace() - 1.0) < 1e-8);
  Eigen::SelfAdjointEigenSolver<Mat2> es(q);
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
}
