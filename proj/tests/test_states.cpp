#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geomsense/states.hpp"

using namespace geomsense;

namespace {
double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("vacuum") {
  const HilbertParams h(60);
  const Mat rho = make_state(OscStateSpec::vacuum(), h);
  CHECK(rho(0, 0).real() == doctest::Approx(1.0));
  CHECK(max_abs(rho) == doctest::Approx(1.0));
  CHECK(std::abs(rho.trace() - 1.0) < 1e-14);
}

TEST_CASE("coherent state") {
  const HilbertParams h(60);
  const Mat rho = make_state(OscStateSpec::coherent(1.0), h);
  CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
  // <n> = |alpha|^2 = 1
  const Mat n_op = number_operator(h);
  CHECK((n_op * rho).trace().real() == doctest::Approx(1.0).epsilon(1e-10));
  // purity
  CHECK((rho * rho).trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("thermal state") {
  const HilbertParams h(60);
  WarningList w;
  const Mat rho = make_state(OscStateSpec::thermal(1.0), h, &w);
  CHECK(w.empty());
  CHECK(rho(3, 3).real() == doctest::Approx(std::pow(0.5, 4)).epsilon(1e-10));
  CHECK(max_abs(rho - Mat(rho.diagonal().asDiagonal())) == 0.0);  // exactly diagonal
  const Mat n_op = number_operator(h);
  CHECK((n_op * rho).trace().real() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("even cat state") {
  const HilbertParams h(60);
  const Mat rho = make_state(OscStateSpec::cat(1.0), h);
  // normalization N^2 = 1/(2(1+e^{-2})): check via overlap with |0>
  // <0|cat> = 2 N e^{-1/2}
  const double n2 = 1.0 / (2.0 * (1.0 + std::exp(-2.0)));
  CHECK(rho(0, 0).real() == doctest::Approx(4 * n2 * std::exp(-1.0)).epsilon(1e-10));
  // even photon parity
  CHECK((parity(h) * rho).trace().real() == doctest::Approx(1.0).epsilon(1e-8));
  // purity
  CHECK((rho * rho).trace().real() == doctest::Approx(1.0).epsilon(1e-8));
  // odd Fock components vanish
  CHECK(std::abs(rho(1, 1)) < 1e-14);
  CHECK(std::abs(rho(3, 3)) < 1e-14);
}

TEST_CASE("gkp logical state") {
  const HilbertParams h(200);
  WarningList w;
  const Mat rho = make_state(OscStateSpec::gkp(0.3, 3), h, &w);
  CHECK(w.empty());
  CHECK(std::abs(rho.trace() - 1.0) < 1e-10);

  // stabilizer displacement expectations: for the finite-energy comb the
  // analytic value is e^{-pi delta^2} ~ 0.754 at delta = 0.3
  const double expected = std::exp(-kPi * 0.3 * 0.3);
  const Mat stab_p = displacement(cxd(0, std::sqrt(2 * kPi)), h);
  const double sp = std::abs((rho * stab_p).trace());
  CHECK(sp > 0.7);
  CHECK(sp == doctest::Approx(expected).epsilon(0.01));
  const Mat stab_x = displacement(std::sqrt(2 * kPi), h);
  CHECK(std::abs((rho * stab_x).trace()) == doctest::Approx(expected).epsilon(0.01));

  // cutoff flag fires when the comb does not fit
  WarningList w2;
  make_state(OscStateSpec::gkp(0.3, 3), HilbertParams(40), &w2);
  CHECK_FALSE(w2.empty());
}

TEST_CASE("all five reference states are valid density matrices") {
  const HilbertParams h(200);
  for (const auto& spec : reference_states()) {
    WarningList w;
    const Mat rho = make_state(spec, h, &w);
    INFO(spec.name());
    CHECK(w.empty());
    CHECK(max_abs(rho - rho.adjoint()) < 1e-10);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-8);
    Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > -1e-8);
  }
}

TEST_CASE("joint plus state") {
  const HilbertParams h(30);
  const Mat rho_osc = make_state(OscStateSpec::thermal(0.5), h);
  const Mat joint = joint_plus_state(rho_osc);
  CHECK(std::abs(joint.trace() - 1.0) < 1e-12);
  const Mat2 q = partial_trace_oscillator(joint);
  CHECK(std::abs(q(0, 0) - 0.5) < 1e-12);
  CHECK(std::abs(q(0, 1) - 0.5) < 1e-12);
  // sigma_x expectation 1
  CHECK((q * sigma_x()).trace().real() == doctest::Approx(1.0));
}

TEST_CASE("spec parsing and naming") {
  CHECK(osc_state_kind_from_string("vacuum") == OscStateKind::Vacuum);
  CHECK(osc_state_kind_from_string("gkp") == OscStateKind::Gkp);
  CHECK_THROWS_AS(osc_state_kind_from_string("squeezed"), std::invalid_argument);
  CHECK(OscStateSpec::coherent(1.0).name() == "coherent(1)");
  CHECK(OscStateSpec::thermal(1.0).name() == "thermal(1)");
  CHECK(OscStateSpec::gkp().name() == "gkp(delta=0.3)");
  CHECK(reference_states().size() == 5);
}

TEST_CASE("construction rejects invalid parameters") {
  const HilbertParams h(20);
  CHECK_THROWS_AS(make_state(OscStateSpec::thermal(-1.0), h), std::invalid_argument);
  CHECK_THROWS_AS(make_state(OscStateSpec::gkp(0.0, 3), h), std::invalid_argument);
  CHECK_THROWS_AS(make_state(OscStateSpec::gkp(0.3, 0), h), std::invalid_argument);
}
