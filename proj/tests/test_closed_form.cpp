#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geomsense/closed_form.hpp"

using namespace geomsense;

namespace {
SensingParams fig_params() {
  SensingParams p;
  p.omega = 1.0;
  p.gamma = 0.2;
  p.eta = 1e-5;
  return p;
}
}  // namespace

TEST_CASE("parameter validation") {
  SensingParams p = fig_params();
  CHECK_NOTHROW(p.validate());
  p.omega = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = fig_params();
  p.omega_prime = 2.0;  // above omega
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  DispersiveParams d;
  d.chi = -1;
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}

TEST_CASE("free phase") {
  const SensingParams p = fig_params();
  CHECK(free_phase(p, 0.0) == 0.0);
  // one period: phi0 = 8 pi eta gamma
  CHECK(free_phase(p, 2 * kPi) == doctest::Approx(5.0265482e-5).epsilon(1e-7));
  CHECK(free_phase(p, 2 * kPi) == doctest::Approx(dynamical_phase_per_loop(p)));

  // omega appears squared: scaling t -> t/omega and the prefactor
  SensingParams q = p;
  q.omega = 2.0;
  CHECK(free_phase(q, kPi) ==
        doctest::Approx(4 * q.eta * q.gamma * (2 * kPi - 0) / 4.0));
}

TEST_CASE("branch displacement") {
  const SensingParams p = fig_params();
  CHECK(std::abs(branch_displacement(p, +1, 2 * kPi)) < 1e-14);  // loop closure
  const cxd half = branch_displacement(p, +1, kPi);
  CHECK(half.real() == doctest::Approx(0.40002));
  CHECK(half.imag() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(branch_alpha(p, +1) == doctest::Approx(0.20001));
  CHECK(branch_alpha(p, -1) == doctest::Approx(-0.19999));
}

TEST_CASE("overlap damping") {
  const SensingParams p = fig_params();
  CHECK(overlap_damping(p, 2 * kPi) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(overlap_damping(p, kPi) == doctest::Approx(0.32));
  // independent of eta
  SensingParams q = p;
  q.eta = 0;
  CHECK(overlap_damping(q, 1.7) == overlap_damping(p, 1.7));
  q.eta = 1e-3;
  CHECK(overlap_damping(q, 1.7) == overlap_damping(p, 1.7));
}

TEST_CASE("sigma_x interference signal") {
  const SensingParams p = fig_params();
  CHECK(sigma_x_free(p, 0.0) == 1.0);
  CHECK(sigma_x_free(p, kPi) ==
        doctest::Approx(std::exp(-0.32) * std::cos(free_phase(p, kPi))).epsilon(1e-12));
  CHECK(sigma_x_free(p, kPi) == doctest::Approx(0.726149).epsilon(1e-5));
}

TEST_CASE("free-evolution QFI") {
  const SensingParams p = fig_params();
  CHECK(qfi_free(p, 0.0) == 0.0);
  // at one period: 64 pi^2 gamma^2
  CHECK(qfi_free(p, 2 * kPi) == doctest::Approx(25.2661873).epsilon(1e-7));
  CHECK(qfi_free(p, 2 * kPi) ==
        doctest::Approx(64 * kPi * kPi * p.gamma * p.gamma).epsilon(1e-12));
  // eta independence
  SensingParams q = p;
  q.eta = 1e-3;
  CHECK(qfi_free(q, 1.3) == qfi_free(p, 1.3));
}

TEST_CASE("classical Fisher information and its limit") {
  const SensingParams p = fig_params();
  // generic times: CFI <= QFI
  for (double t : {0.3, 1.0, 2.5, 4.0, 5.9}) {
    CHECK(cfi_free(p, t) <= qfi_free(p, t) * (1 + 1e-12));
  }
  // periodic times saturate the bound
  CHECK(cfi_free(p, 2 * kPi) == doctest::Approx(qfi_free(p, 2 * kPi)).epsilon(1e-9));
  CHECK(cfi_free(p, 4 * kPi) == doctest::Approx(qfi_free(p, 4 * kPi)).epsilon(1e-9));
  // removable singularity at eta = 0 (phi = 0, d = 0) returns the limit
  SensingParams q = p;
  q.eta = 0;
  CHECK(cfi_free(q, 2 * kPi) == doctest::Approx(qfi_free(q, 2 * kPi)).epsilon(1e-9));
  CHECK(std::isfinite(cfi_free(q, 2 * kPi)));
}

TEST_CASE("geometric loop phase") {
  SensingParams p = fig_params();
  p.r = 0;
  CHECK(geometric_phase_total(p, +1) == doctest::Approx(5.0265482e-5).epsilon(1e-7));
  p.r = std::log(2.0);
  CHECK(geometric_phase_total(p, +1) ==
        doctest::Approx(5.0265482e-5 + 6.4e-5).epsilon(1e-7));
  // odd in s
  CHECK(geometric_phase_total(p, -1) == doctest::Approx(-geometric_phase_total(p, +1)));
}

TEST_CASE("geometric QFI") {
  SensingParams p = fig_params();
  p.r = 0;
  CHECK(qfi_geometric(p) == doctest::Approx(qfi_free(p, 2 * kPi)).epsilon(1e-12));
  p.r = db_to_r(10.0);
  const double lever = kPi + 4 * (std::exp(p.r) - 1.0);
  CHECK(qfi_geometric(p) == doctest::Approx(64 * lever * lever * 0.04).epsilon(1e-12));
  CHECK(qfi_geometric(p) == doctest::Approx(355.893).epsilon(1e-4));
  // eta independence
  SensingParams q = p;
  for (double eta : {0.0, 1e-5, 1e-3}) {
    q.eta = eta;
    CHECK(qfi_geometric(q) == qfi_geometric(p));
  }
  // loop-count scaling
  q = p;
  q.n_loops = 3;
  CHECK(qfi_geometric(q) == doctest::Approx(9 * qfi_geometric(p)));
}

TEST_CASE("relative sensitivity of the geometric protocol") {
  SensingParams p = fig_params();
  p.r = 0;
  CHECK(relative_sensitivity_geometric(p) == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));

  // strictly increasing in r
  double prev = 0;
  for (double r = 0; r <= 2.0; r += 0.05) {
    p.r = r;
    const double v = relative_sensitivity_geometric(p);
    CHECK(v > prev);
    prev = v;
  }

  // break-even root brackets
  p.r = 0.4542;
  CHECK(relative_sensitivity_geometric(p) < 1.0);
  p.r = 0.4543;
  CHECK(relative_sensitivity_geometric(p) > 1.0);

  // 15 dB value from the definition Δη0/Δηg (independent route):
  // sqrt( (F_g / (3 tau)) / (F_free(tau) / tau) )
  p.r = db_to_r(15.0);
  const double from_definition =
      std::sqrt((qfi_geometric(p) / (3 * p.tau())) / (qfi_free(p, p.tau()) / p.tau()));
  CHECK(relative_sensitivity_geometric(p) == doctest::Approx(from_definition).epsilon(1e-12));
  CHECK(relative_sensitivity_geometric(p) == doctest::Approx(3.976045).epsilon(3e-7));
}

TEST_CASE("dB conversion") {
  CHECK(db_to_r(0.0) == 0.0);
  CHECK(db_to_r(10.0) == doctest::Approx(1.1512925465).epsilon(1e-10));
  CHECK(db_to_r(15.0) == doctest::Approx(1.7269388198).epsilon(1e-10));
  CHECK(r_to_db(db_to_r(7.3)) == doctest::Approx(7.3).epsilon(1e-12));
  CHECK_THROWS_AS(db_to_r(-1.0), std::invalid_argument);
}

TEST_CASE("frequency-switch quantities") {
  SensingParams p = fig_params();
  p.omega_prime = p.omega;  // no quench
  FreqSwitchQuantities q = freq_switch_quantities(p);
  CHECK(q.r == 0.0);
  CHECK(q.relative_sensitivity == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
  SensingParams base = fig_params();
  base.r = 0;
  CHECK(q.qfi == doctest::Approx(qfi_geometric(base)).epsilon(1e-12));
  CHECK(q.loop_time == doctest::Approx(3 * p.tau()).epsilon(1e-12));

  // r = 0.8 quench
  p.omega_prime = p.omega * std::exp(-1.6);
  q = freq_switch_quantities(p);
  CHECK(q.r == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(q.relative_sensitivity == doctest::Approx(1.28306).epsilon(1e-4));

  // sensitivity from first principles: free evolution at omega' vs the loop
  SensingParams at_prime = fig_params();
  at_prime.omega = p.omega_prime;
  const double tau_prime = 2 * kPi / p.omega_prime;
  const double from_definition =
      std::sqrt((q.qfi / q.loop_time) / (qfi_free(at_prime, tau_prime) / tau_prime));
  CHECK(q.relative_sensitivity == doctest::Approx(from_definition).epsilon(1e-10));

  // rejected anti-squeezing
  p.omega_prime = 2.0;
  CHECK_THROWS_AS(freq_switch_quantities(p), std::invalid_argument);
}

TEST_CASE("dispersive quantities") {
  DispersiveParams d;
  d.alpha = 1.0;
  d.r = 0.0;
  d.chi = 1.0;
  d.t = kPi;  // chi t = pi
  DispersiveQuantities q = dispersive_quantities(d);
  CHECK(q.phase == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(q.qfi_alpha == doctest::Approx(64.0).epsilon(1e-12));
  CHECK(q.qfi_chi == doctest::Approx(0.0).epsilon(1e-20));

  d.r = db_to_r(15.0);
  q = dispersive_quantities(d);
  CHECK(q.relative_sensitivity == doctest::Approx(5.6234133).epsilon(1e-6));

  // F_chi / F_alpha = t^2 alpha^2 cot^2(chi t/2) / 16 wherever both nonzero
  d.alpha = 0.7;
  d.r = 0.4;
  d.chi = 0.9;
  d.t = 1.3;
  q = dispersive_quantities(d);
  const double half = d.chi * d.t / 2;
  const double cot = std::cos(half) / std::sin(half);
  CHECK(q.qfi_chi / q.qfi_alpha ==
        doctest::Approx(d.t * d.t * d.alpha * d.alpha * cot * cot / 16.0).epsilon(1e-12));
}
