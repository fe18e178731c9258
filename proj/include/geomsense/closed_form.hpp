#pragma once
// Analytic expressions for the sensing protocols: interference signal,
// Fisher information, loop phases and relative sensitivities. These are the
// oracles every numerical path is tested against, and the generators of the
// sensitivity curves.
//
// Squeezing in dB follows the variance convention dB = 10 log10(e^{2r}),
// so 10 dB corresponds to r ~ 1.1513.

#include <complex>

#include "geomsense/fock.hpp"

namespace geomsense {

struct SensingParams {
  double omega = 1.0;        // oscillator angular frequency
  double gamma = 0.2;        // longitudinal coupling strength
  double eta = 1e-5;         // force amplitude in frequency units
  double r = 0.0;            // squeeze magnitude
  int n_loops = 1;
  double omega_prime = 0.0;  // post-quench frequency; 0 = unused

  void validate() const;
  double tau() const { return 2.0 * kPi / omega; }
};

struct DispersiveParams {
  double chi = 0.0;    // dispersive shift
  double alpha = 0.0;  // real drive displacement
  double r = 0.0;      // squeeze magnitude
  double t = 0.0;      // free-evolution duration per arm
  int n_loops = 1;

  void validate() const;
};

// phi(t) = 4 eta gamma (omega t - sin omega t) / omega^2
double free_phase(const SensingParams& p, double t);
double free_phase_eta_derivative(const SensingParams& p, double t);

// alpha_s(t) = alpha_s (1 - e^{i omega t}),  alpha_s = (eta + gamma s)/omega
double branch_alpha(const SensingParams& p, int s);
cxd branch_displacement(const SensingParams& p, int s, double t);

// d(t) = 8 gamma^2 sin^2(omega t / 2) / omega^2
double overlap_damping(const SensingParams& p, double t);

// <sigma_x> = e^{-d(t)} cos(phi(t))
double sigma_x_free(const SensingParams& p, double t);

// F_eta(t) = e^{-2 d(t)} (d phi / d eta)^2
double qfi_free(const SensingParams& p, double t);

// F^c(t) = (d phi/d eta)^2 sin^2(phi) / (e^{2d} - cos^2(phi)); returns the
// analytic limit (equal to qfi_free) at the removable singularities where
// both d and phi vanish.
double cfi_free(const SensingParams& p, double t);

// phi_T per loop: phi0 s + 4 A_s with A_s = 8(e^r - 1) s gamma eta / omega^2
double dynamical_phase_per_loop(const SensingParams& p);  // phi0 = 8 pi eta gamma / omega^2
double geometric_phase_total(const SensingParams& p, int s);

// F^g = 64 n^2 (pi + 4(e^r - 1))^2 gamma^2 / omega^4
double qfi_geometric(const SensingParams& p);

// (pi + 4(e^r - 1)) / (pi sqrt(3)); >1 means the loop beats free evolution
double relative_sensitivity_geometric(const SensingParams& p);

double db_to_r(double db);  // rejects negative dB
double r_to_db(double r);

struct FreqSwitchQuantities {
  double r = 0;                     // ln(omega/omega')/2
  double phi0_prime = 0;            // phi0 e^{4r}
  double area = 0;                  // 8(e^{3r} - 1) gamma eta / omega^2, s = +1
  double phase_total = 0;           // phi0' + 4 area, per loop, s = +1
  double qfi = 0;                   // 64 n^2 (e^{4r} pi + 4(e^{3r}-1))^2 gamma^2/omega^4
  double loop_time = 0;             // tau (2 + e^{2r})
  double relative_sensitivity = 0;  // vs free evolution at omega'
};
FreqSwitchQuantities freq_switch_quantities(const SensingParams& p);

struct DispersiveQuantities {
  double phase = 0;     // 4 alpha^2 e^r sin(chi t / 2), per loop
  double qfi_alpha = 0; // 64 n^2 alpha^2 e^{2r} sin^2(chi t/2)
  double qfi_chi = 0;   // 4 n^2 t^2 alpha^4 e^{2r} cos^2(chi t/2)
  double relative_sensitivity = 0;  // e^r
};
DispersiveQuantities dispersive_quantities(const DispersiveParams& d);

}  // namespace geomsense
