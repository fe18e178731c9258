#pragma once
// Joint unitaries for the three sensing protocols (longitudinal geometric
// loop, frequency-switch variant, dispersive loop) built from closed forms,
// plus a brute-force Schrodinger integrator used as an independent oracle.
//
// Two constructions of the longitudinal loop are first-class: the
// closed-form displacement products and the pi-pulse-interleaved free
// evolutions. They must agree; the cross-check is part of the test suite.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "geomsense/closed_form.hpp"
#include "geomsense/fock.hpp"

namespace geomsense {

struct ProtocolStep {
  Mat unitary;  // joint-space operator
  double duration = 0;
  std::string label;
};

struct ProtocolPlan {
  std::vector<ProtocolStep> steps;
  double total_time = 0;
  int pi_pulse_count = 0;
  double max_excursion = 0;  // phase-space amplitude bound, for trust margins
  HilbertParams space{1};
  WarningList warnings;
};

struct LoopResult {
  Mat total;               // product of all step unitaries
  double phase_up = 0;     // arg of the up-block (raw, includes global part)
  double phase_down = 0;
  double relative_phase = 0;  // phase_up - phase_down; the observable phase
  double global_phase = 0;    // (phase_up + phase_down)/2, unobservable
  double closure_error = 0;   // deviation of the oscillator blocks from
                              // identity, max-norm over the trusted block
};

// Supplemental free-evolution propagator for qubit branch s:
//   U_s(t1, t0) = e^{i (2 eta gamma s / omega)(t1 - t0)}
//                 D†(alpha_s e^{i omega t1}) D(alpha_s e^{i omega t0}).
// The s-independent dynamical phase is dropped (it is a global phase).
Mat free_evolution_unitary(const SensingParams& p, int s, double t0, double t1,
                           const HilbertParams& h, WarningList* warnings = nullptr);

// spin_conditional(U_{+1}, U_{-1}) for the same interval
Mat joint_free_evolution(const SensingParams& p, double t0, double t1,
                         const HilbertParams& h, WarningList* warnings = nullptr);

// Fixed-step 4th-order integration of dU/dt = -i H(t) U, U(t0) = I.
// Dimension follows H(t0). When check_convergence is set, the integration is
// repeated at dt/2 and `converged` reports whether the two results agree.
struct PropagateResult {
  Mat u;
  bool converged = true;
  double step_halving_delta = 0;
};
PropagateResult schrodinger_propagate(const std::function<Mat(double)>& hamiltonian,
                                      double t0, double t1, double dt,
                                      bool check_convergence = false,
                                      double tol = 1e-8);

// Rotating-frame Hamiltonian (a e^{-i omega t} + a† e^{i omega t})(eta + gamma s)
// for one qubit branch; the integrand of the brute-force oracle.
std::function<Mat(double)> branch_hamiltonian(const SensingParams& p, int s,
                                              const HilbertParams& h);

// Four-step loop from the closed-form displacement products.
// Durations (tau/2, tau, tau/2, tau).
ProtocolPlan build_geometric_loop(const SensingParams& p, const HilbertParams& h);

// Same loop with steps 2 and 4 assembled from free evolutions interleaved
// with pi pulses at the given fractional offsets of each step (the physical
// sequence). Offsets other than (1/4, 3/4) are miscalibrated controls.
ProtocolPlan build_geometric_loop_pulsed(const SensingParams& p, const HilbertParams& h,
                                         double pulse_offset_a = 0.25,
                                         double pulse_offset_b = 0.75);

// Steps 2 and 4 replaced by plain free evolution (no pulses): the loop still
// closes but the geometric signal collapses to pure dynamical phase.
ProtocolPlan build_geometric_loop_unpulsed(const SensingParams& p, const HilbertParams& h);

// Frequency-quench variant: steps 1 and 3 rescaled by the Bogoliubov factor
// e^{3r}, r = ln(omega/omega')/2; durations (tau'/2, tau, tau'/2, tau).
ProtocolPlan build_freq_switch_loop(const SensingParams& p, const HilbertParams& h);

// Dispersive parallelogram loop U4 U3 U2 U1 with
// U1 = D(alpha e^{i s chi t/2}), U2 = D(alpha e^r), U3 = U1†, U4 = U2†.
ProtocolPlan build_dispersive_loop(const DispersiveParams& d, const HilbertParams& h);

Mat plan_total_unitary(const ProtocolPlan& plan);

// Phase and closure extraction on the truncation-trusted block.
LoopResult evaluate_loop(const ProtocolPlan& plan, int trusted_dim = 0);

struct InterferenceResult {
  Mat final_state;      // joint density matrix after n loops
  Mat2 qubit_rho;
  double sigma_x = 0;
  double sigma_y = 0;
  cxd coherence;        // <down|rho_q|up>
  WarningList warnings;
};

// Start from |+><+| (x) rho_osc, apply the plan n_loops times, reduce.
InterferenceResult run_interference(const ProtocolPlan& plan, const Mat& rho_osc,
                                    int n_loops = 1);

}  // namespace geomsense
