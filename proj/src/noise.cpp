#include "geomsense/noise.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace geomsense {

std::string noise_kind_name(NoiseKind k) {
  switch (k) {
    case NoiseKind::BosonLoss: return "boson_loss";
    case NoiseKind::BosonHeat: return "boson_heat";
    case NoiseKind::BosonDephase: return "boson_dephase";
    case NoiseKind::QubitDecay: return "qubit_decay";
    case NoiseKind::QubitHeat: return "qubit_heat";
    case NoiseKind::QubitDephase: return "qubit_dephase";
  }
  return "unknown";
}

NoiseKind noise_kind_from_string(const std::string& s) {
  for (NoiseKind k : all_noise_kinds())
    if (noise_kind_name(k) == s) return k;
  throw std::invalid_argument("unknown noise channel: " + s);
}

std::vector<NoiseKind> all_noise_kinds() {
  return {NoiseKind::BosonLoss, NoiseKind::BosonHeat, NoiseKind::BosonDephase,
          NoiseKind::QubitDecay, NoiseKind::QubitHeat, NoiseKind::QubitDephase};
}

bool is_qubit_channel(NoiseKind k) {
  return k == NoiseKind::QubitDecay || k == NoiseKind::QubitHeat ||
         k == NoiseKind::QubitDephase;
}

SparseMat jump_operator(NoiseKind k, const HilbertParams& h) {
  const int d = h.dim();
  std::vector<Eigen::Triplet<cxd>> trip;
  const auto boson = [&](auto&& entry) {
    for (int block = 0; block < 2; ++block)
      for (int n = 0; n < d; ++n) entry(block * d, n);
  };
  switch (k) {
    case NoiseKind::BosonLoss:
      boson([&](int off, int n) {
        if (n >= 1) trip.emplace_back(off + n - 1, off + n, std::sqrt(double(n)));
      });
      break;
    case NoiseKind::BosonHeat:
      boson([&](int off, int n) {
        if (n + 1 < d) trip.emplace_back(off + n + 1, off + n, std::sqrt(double(n + 1)));
      });
      break;
    case NoiseKind::BosonDephase:
      boson([&](int off, int n) {
        if (n >= 1) trip.emplace_back(off + n, off + n, double(n));
      });
      break;
    case NoiseKind::QubitDecay:  // |down><up| ⊗ I
      for (int n = 0; n < d; ++n) trip.emplace_back(d + n, n, 1.0);
      break;
    case NoiseKind::QubitHeat:  // |up><down| ⊗ I
      for (int n = 0; n < d; ++n) trip.emplace_back(n, d + n, 1.0);
      break;
    case NoiseKind::QubitDephase:  // sigma_z ⊗ I
      for (int n = 0; n < d; ++n) {
        trip.emplace_back(n, n, 1.0);
        trip.emplace_back(d + n, d + n, -1.0);
      }
      break;
  }
  SparseMat l(2 * d, 2 * d);
  l.setFromTriplets(trip.begin(), trip.end());
  return l;
}

double dissipation_step(double lambda, double duration) {
  double dt = duration / 200.0;
  if (lambda > 0) dt = std::min(dt, 1e-3 / lambda);
  return dt;
}

namespace {

struct Dissipator {
  SparseMat l, l_dag, m;  // m = l† l, all scaled by lambda where appropriate
  double lambda;

  explicit Dissipator(const NoiseChannel& ch, int joint_dim, const HilbertParams& h)
      : lambda(ch.lambda) {
    l = jump_operator(ch.kind, h);
    l_dag = SparseMat(l.adjoint());
    m = SparseMat(l_dag * l);
    (void)joint_dim;
  }

  // lambda (L rho L† - (M rho + rho M)/2)
  Mat apply(const Mat& rho) const {
    Mat out = l * rho * l_dag;
    out.noalias() -= 0.5 * (m * rho);
    out.noalias() -= 0.5 * (rho * m);
    return lambda * out;
  }
};

Mat integrate(const Dissipator& diss, Mat rho, double duration, double dt) {
  const long n_steps = std::max(1L, long(std::ceil(duration / dt)));
  const double h = duration / double(n_steps);
  for (long k = 0; k < n_steps; ++k) {
    const Mat k1 = diss.apply(rho);
    const Mat k2 = diss.apply(rho + (h / 2) * k1);
    const Mat k3 = diss.apply(rho + (h / 2) * k2);
    const Mat k4 = diss.apply(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  // keep the state exactly Hermitian against integrator drift
  rho = 0.5 * (rho + rho.adjoint());
  return rho;
}

void leakage_diagnostic(const Mat& rho, const HilbertParams& h, WarningList& warnings) {
  const int d = h.dim();
  double top = 0;
  for (int block = 0; block < 2; ++block)
    for (int n = std::max(0, d - 4); n < d; ++n)
      top += rho(block * d + n, block * d + n).real();
  if (top > 1e-4) {
    std::ostringstream msg;
    msg << "cutoff leakage: top-4 Fock-level population " << top;
    warnings.push_back(msg.str());
  }
}

}  // namespace

DissipateResult dissipate(const Mat& rho, const NoiseChannel& ch, double duration,
                          const DissipateOptions& opts) {
  if (duration < 0) throw std::invalid_argument("dissipate: duration must be >= 0");
  if (ch.lambda < 0) throw std::invalid_argument("dissipate: lambda must be >= 0");
  DissipateResult res;
  if (ch.lambda == 0.0 || duration == 0.0) {
    res.rho = rho;
    return res;
  }
  const HilbertParams h(int(rho.rows()) / 2 - 1);
  const Dissipator diss(ch, int(rho.rows()), h);
  const double dt = (opts.dt > 0) ? opts.dt : dissipation_step(ch.lambda, duration);
  res.rho = integrate(diss, rho, duration, dt);
  if (opts.check_convergence) {
    const Mat half = integrate(diss, rho, duration, dt / 2);
    res.step_halving_delta = (res.rho - half).cwiseAbs().maxCoeff();
    res.converged = res.step_halving_delta <= 10.0 * opts.tol;
  }
  if (ch.kind == NoiseKind::BosonHeat) leakage_diagnostic(res.rho, h, res.warnings);
  return res;
}

NoisyRunResult run_noisy_protocol(const ProtocolPlan& plan, const NoiseChannel& ch,
                                  const Mat& initial_joint, int n_loops,
                                  const DissipateOptions& opts) {
  if (n_loops < 1) throw std::invalid_argument("run_noisy_protocol: n_loops must be >= 1");
  NoisyRunResult out;
  out.flags = plan.warnings;
  Mat rho = initial_joint;
  for (int loop = 0; loop < n_loops; ++loop) {
    for (const auto& step : plan.steps) {
      rho = step.unitary * rho * step.unitary.adjoint();
      if (ch.lambda > 0 && step.duration > 0) {
        DissipateResult seg = dissipate(rho, ch, step.duration, opts);
        rho = std::move(seg.rho);
        for (auto& w : seg.warnings) out.flags.push_back(std::move(w));
        if (!seg.converged) {
          out.converged = false;
          out.flags.push_back("dissipate: step-halving convergence check failed");
        }
      }
    }
  }
  out.final_state = std::move(rho);
  out.qubit_rho = partial_trace_oscillator(out.final_state);
  const cxd c = out.qubit_rho(1, 0);
  out.coherence_phase = std::arg(c);
  out.coherence_mag = std::abs(c);
  return out;
}

std::vector<PhaseDeviationRow> phase_deviation_report(
    const NoisyRunResult& noiseless,
    const std::vector<std::pair<std::string, NoisyRunResult>>& noisy) {
  std::vector<PhaseDeviationRow> rows;
  rows.push_back({"noiseless", 0.0, 1.0});
  for (const auto& [label, run] : noisy) {
    PhaseDeviationRow row;
    row.channel = label;
    double dphi = run.coherence_phase - noiseless.coherence_phase;
    while (dphi > kPi) dphi -= 2.0 * kPi;
    while (dphi < -kPi) dphi += 2.0 * kPi;
    row.delta_phase = dphi;
    row.magnitude_ratio =
        (noiseless.coherence_mag > 0) ? run.coherence_mag / noiseless.coherence_mag : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace geomsense
