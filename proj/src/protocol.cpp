#include "geomsense/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace geomsense {

Mat free_evolution_unitary(const SensingParams& p, int s, double t0, double t1,
                           const HilbertParams& h, WarningList* warnings) {
  if (t1 < t0) throw std::invalid_argument("free_evolution_unitary: t1 must be >= t0");
  const double alpha = branch_alpha(p, s);
  const cxd phase = std::exp(cxd(0, 2.0 * p.eta * p.gamma * double(s) / p.omega * (t1 - t0)));
  const Mat d1 = displacement(alpha * std::exp(cxd(0, p.omega * t1)), h, warnings);
  const Mat d0 = displacement(alpha * std::exp(cxd(0, p.omega * t0)), h, warnings);
  return phase * (d1.adjoint() * d0);
}

Mat joint_free_evolution(const SensingParams& p, double t0, double t1,
                         const HilbertParams& h, WarningList* warnings) {
  return spin_conditional(free_evolution_unitary(p, +1, t0, t1, h, warnings),
                          free_evolution_unitary(p, -1, t0, t1, h, warnings));
}

PropagateResult schrodinger_propagate(const std::function<Mat(double)>& hamiltonian,
                                      double t0, double t1, double dt,
                                      bool check_convergence, double tol) {
  if (!(dt > 0)) throw std::invalid_argument("schrodinger_propagate: dt must be > 0");
  const auto integrate = [&](double step) {
    Mat h0 = hamiltonian(t0);
    const int d = int(h0.rows());
    Mat u = Mat::Identity(d, d);
    const long n_steps = std::max(1L, long(std::ceil((t1 - t0) / step)));
    const double h_step = (t1 - t0) / double(n_steps);
    const cxd mi(0, -1);
    for (long k = 0; k < n_steps; ++k) {
      const double t = t0 + double(k) * h_step;
      const Mat k1 = mi * (hamiltonian(t) * u);
      const Mat k2 = mi * (hamiltonian(t + h_step / 2) * (u + (h_step / 2) * k1));
      const Mat k3 = mi * (hamiltonian(t + h_step / 2) * (u + (h_step / 2) * k2));
      const Mat k4 = mi * (hamiltonian(t + h_step) * (u + h_step * k3));
      u += (h_step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return u;
  };

  PropagateResult result;
  result.u = (t1 > t0) ? integrate(dt) : Mat::Identity(hamiltonian(t0).rows(), hamiltonian(t0).cols());
  if (check_convergence && t1 > t0) {
    const Mat half = integrate(dt / 2);
    result.step_halving_delta = (result.u - half).cwiseAbs().maxCoeff();
    result.converged = result.step_halving_delta <= 10.0 * tol;
  }
  return result;
}

std::function<Mat(double)> branch_hamiltonian(const SensingParams& p, int s,
                                              const HilbertParams& h) {
  const Mat a = annihilation(h);
  const Mat ad = a.adjoint();
  const double g = p.eta + p.gamma * double(s);
  return [a, ad, g, omega = p.omega](double t) -> Mat {
    return g * (std::exp(cxd(0, -omega * t)) * a + std::exp(cxd(0, omega * t)) * ad);
  };
}

namespace {

struct LoopPieces {
  Mat d_alpha_up, d_alpha_dn;  // D(alpha_s)
  Mat d_beta_up, d_beta_dn;    // D(beta_s), beta_s = 4 i gamma s / omega
};

LoopPieces make_pieces(const SensingParams& p, const HilbertParams& h, WarningList* w) {
  LoopPieces lp;
  lp.d_alpha_up = displacement(branch_alpha(p, +1), h, w);
  lp.d_alpha_dn = displacement(branch_alpha(p, -1), h, w);
  lp.d_beta_up = displacement(cxd(0, 4.0 * p.gamma / p.omega), h, w);
  lp.d_beta_dn = lp.d_beta_up.adjoint();  // beta_{-1} = -beta_{+1}
  return lp;
}

// D(alpha_s) D(beta_s) D†(alpha_s) per branch, lifted to the joint space
Mat conjugated_kick(const LoopPieces& lp) {
  return spin_conditional(lp.d_alpha_up * lp.d_beta_up * lp.d_alpha_up.adjoint(),
                          lp.d_alpha_dn * lp.d_beta_dn * lp.d_alpha_dn.adjoint());
}

// D†(alpha_s) D†(beta_s) D(alpha_s) per branch. Note this is the reversal of
// the kick with the conjugation direction flipped, not the plain adjoint;
// the two differ by an s-odd phase that the adjoint would get wrong.
Mat conjugated_kick_reversal(const LoopPieces& lp) {
  return spin_conditional(lp.d_alpha_up.adjoint() * lp.d_beta_up.adjoint() * lp.d_alpha_up,
                          lp.d_alpha_dn.adjoint() * lp.d_beta_dn.adjoint() * lp.d_alpha_dn);
}

Mat squeezed_drive(const SensingParams& p, const HilbertParams& h, double amp_factor,
                   double phase_quarter, WarningList* w) {
  // e^{i s phase_quarter} D(2 amp_factor alpha_s) on the joint space
  const Mat up = displacement(2.0 * amp_factor * branch_alpha(p, +1), h, w);
  const Mat dn = displacement(2.0 * amp_factor * branch_alpha(p, -1), h, w);
  const cxd ph = std::exp(cxd(0, phase_quarter));
  return spin_conditional(ph * up, std::conj(ph) * dn);
}

ProtocolPlan four_step_plan(const SensingParams& p, const HilbertParams& h,
                            double amp_factor, double quarter_phase,
                            double half_duration) {
  ProtocolPlan plan;
  plan.space = h;
  const LoopPieces lp = make_pieces(p, h, &plan.warnings);
  const Mat u1 = squeezed_drive(p, h, amp_factor, quarter_phase, &plan.warnings);
  const Mat u2 = conjugated_kick(lp);
  const Mat u3 = squeezed_drive(p, h, -amp_factor, quarter_phase, &plan.warnings);
  const Mat u4 = conjugated_kick_reversal(lp);
  const double tau = p.tau();
  plan.steps = {{u1, half_duration, "U1"},
                {u2, tau, "U2"},
                {u3, half_duration, "U3"},
                {u4, tau, "U4"}};
  plan.total_time = 2.0 * half_duration + 2.0 * tau;
  plan.max_excursion = 2.0 * std::abs(amp_factor) * std::abs(branch_alpha(p, +1)) +
                       4.0 * p.gamma / p.omega;
  return plan;
}

}  // namespace

ProtocolPlan build_geometric_loop(const SensingParams& p, const HilbertParams& h) {
  p.validate();
  return four_step_plan(p, h, std::exp(p.r), dynamical_phase_per_loop(p) / 4.0, p.tau() / 2.0);
}

ProtocolPlan build_geometric_loop_pulsed(const SensingParams& p, const HilbertParams& h,
                                         double pulse_offset_a, double pulse_offset_b) {
  p.validate();
  if (!(pulse_offset_a > 0 && pulse_offset_a < pulse_offset_b && pulse_offset_b < 1))
    throw std::invalid_argument("build_geometric_loop_pulsed: offsets must satisfy 0 < a < b < 1");
  ProtocolPlan plan = build_geometric_loop(p, h);
  const double tau = p.tau();
  const Mat x = pi_pulse(h);

  const auto pulsed_leg = [&](double t_start) -> Mat {
    const double ta = t_start + pulse_offset_a * tau;
    const double tb = t_start + pulse_offset_b * tau;
    // evolve, flip, evolve, flip, evolve; the spin is inverted between pulses
    return joint_free_evolution(p, tb, t_start + tau, h, &plan.warnings) * x *
           joint_free_evolution(p, ta, tb, h, &plan.warnings) * x *
           joint_free_evolution(p, t_start, ta, h, &plan.warnings);
  };

  plan.steps[1].unitary = pulsed_leg(tau / 2.0);
  plan.steps[1].label = "U2 (pulsed)";
  plan.steps[3].unitary = pulsed_leg(2.0 * tau);
  plan.steps[3].label = "U4 (pulsed)";
  plan.pi_pulse_count = 4;
  return plan;
}

ProtocolPlan build_geometric_loop_unpulsed(const SensingParams& p, const HilbertParams& h) {
  p.validate();
  ProtocolPlan plan = build_geometric_loop(p, h);
  const double tau = p.tau();
  plan.steps[1].unitary = joint_free_evolution(p, tau / 2.0, 3.0 * tau / 2.0, h, &plan.warnings);
  plan.steps[1].label = "U2 (no pulses)";
  plan.steps[3].unitary = joint_free_evolution(p, 2.0 * tau, 3.0 * tau, h, &plan.warnings);
  plan.steps[3].label = "U4 (no pulses)";
  plan.pi_pulse_count = 0;
  return plan;
}

ProtocolPlan build_freq_switch_loop(const SensingParams& p, const HilbertParams& h) {
  const FreqSwitchQuantities q = freq_switch_quantities(p);
  const double tau_prime = 2.0 * kPi / p.omega_prime;
  ProtocolPlan plan =
      four_step_plan(p, h, std::exp(3.0 * q.r), q.phi0_prime / 4.0, tau_prime / 2.0);
  plan.steps[0].label = "U1 (quenched)";
  plan.steps[2].label = "U3 (quenched)";
  return plan;
}

ProtocolPlan build_dispersive_loop(const DispersiveParams& d, const HilbertParams& h) {
  d.validate();
  ProtocolPlan plan;
  plan.space = h;
  const cxd rotated = d.alpha * std::exp(cxd(0, d.chi * d.t / 2.0));
  const Mat u1 = spin_conditional(displacement(rotated, h, &plan.warnings),
                                  displacement(std::conj(rotated), h, &plan.warnings));
  const Mat u2 = lift_oscillator(displacement(d.alpha * std::exp(d.r), h, &plan.warnings));
  plan.steps = {{u1, d.t, "U1"},
                {u2, 0.0, "U2"},
                {Mat(u1.adjoint()), d.t, "U3"},
                {Mat(u2.adjoint()), 0.0, "U4"}};
  plan.total_time = 2.0 * d.t;
  plan.max_excursion = d.alpha * (1.0 + std::exp(d.r));
  return plan;
}

Mat plan_total_unitary(const ProtocolPlan& plan) {
  Mat total = Mat::Identity(plan.space.joint_dim(), plan.space.joint_dim());
  for (const auto& step : plan.steps) total = step.unitary * total;
  return total;
}

LoopResult evaluate_loop(const ProtocolPlan& plan, int trusted_dim) {
  const int d = plan.space.dim();
  const int m = (trusted_dim > 0) ? std::min(trusted_dim, d)
                                  : trusted_levels(plan.space, plan.max_excursion);
  LoopResult res;
  res.total = plan_total_unitary(plan);

  const Mat up = res.total.topLeftCorner(m, m);
  const Mat dn = res.total.bottomRightCorner(plan.space.dim(), plan.space.dim())
                     .topLeftCorner(m, m);
  const auto block_phase = [m](const Mat& b) { return std::arg(b.trace() / double(m)); };
  res.phase_up = block_phase(up);
  res.phase_down = block_phase(dn);
  res.relative_phase = res.phase_up - res.phase_down;
  res.global_phase = 0.5 * (res.phase_up + res.phase_down);

  const Mat eye = Mat::Identity(m, m);
  double err = std::max(
      (std::exp(cxd(0, -res.phase_up)) * up - eye).cwiseAbs().maxCoeff(),
      (std::exp(cxd(0, -res.phase_down)) * dn - eye).cwiseAbs().maxCoeff());
  err = std::max(err, res.total.topRightCorner(d, d).topLeftCorner(m, m).cwiseAbs().maxCoeff());
  err = std::max(err, res.total.bottomLeftCorner(d, d).topLeftCorner(m, m).cwiseAbs().maxCoeff());
  res.closure_error = err;
  return res;
}

InterferenceResult run_interference(const ProtocolPlan& plan, const Mat& rho_osc,
                                    int n_loops) {
  if (n_loops < 1) throw std::invalid_argument("run_interference: n_loops must be >= 1");
  if (rho_osc.rows() != plan.space.dim())
    throw std::invalid_argument("run_interference: oscillator state dimension mismatch");

  InterferenceResult out;
  out.warnings = plan.warnings;
  Mat rho = tensor_with_qubit(plus_projector(), rho_osc);
  for (int loop = 0; loop < n_loops; ++loop)
    for (const auto& step : plan.steps) rho = step.unitary * rho * step.unitary.adjoint();

  out.final_state = std::move(rho);
  out.qubit_rho = partial_trace_oscillator(out.final_state);
  out.coherence = out.qubit_rho(1, 0);
  out.sigma_x = 2.0 * out.coherence.real();
  out.sigma_y = 2.0 * out.coherence.imag();
  return out;
}

}  // namespace geomsense
