#include "geomsense/metrology.hpp"

#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

#include <Eigen/Eigenvalues>

namespace geomsense {

namespace {

struct BlochVec {
  double x, y, z;
};

BlochVec bloch(const Mat2& rho) {
  return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(),
          (rho(0, 0) - rho(1, 1)).real()};
}

double bloch_qfi_value(const Mat2& plus, const Mat2& minus, const Mat2& center, double h) {
  const BlochVec rp = bloch(plus), rm = bloch(minus), r0 = bloch(center);
  const double dx = (rp.x - rm.x) / (2 * h);
  const double dy = (rp.y - rm.y) / (2 * h);
  const double dz = (rp.z - rm.z) / (2 * h);
  const double dr2 = dx * dx + dy * dy + dz * dz;
  const double r2 = r0.x * r0.x + r0.y * r0.y + r0.z * r0.z;
  if (r2 >= 1.0 - 1e-10) return dr2;  // pure-state limit
  const double rdot = r0.x * dx + r0.y * dy + r0.z * dz;
  return dr2 + rdot * rdot / (1.0 - r2);
}

double relative_delta(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

}  // namespace

FisherEstimate qubit_qfi(const QubitStateFn& rho_of, double theta0, double h,
                         bool check_convergence) {
  if (!(h > 0)) throw std::invalid_argument("qubit_qfi: step must be > 0");
  FisherEstimate est;
  est.method = FisherMethod::BlochQfi;
  est.step = h;
  const Mat2 center = rho_of(theta0);
  est.value = bloch_qfi_value(rho_of(theta0 + h), rho_of(theta0 - h), center, h);
  if (check_convergence) {
    const double half =
        bloch_qfi_value(rho_of(theta0 + h / 2), rho_of(theta0 - h / 2), center, h / 2);
    est.converged = relative_delta(est.value, half) <= 1e-3;
  }
  return est;
}

FisherEstimate qubit_qfi_sld(const QubitStateFn& rho_of, double theta0, double h) {
  if (!(h > 0)) throw std::invalid_argument("qubit_qfi_sld: step must be > 0");
  FisherEstimate est;
  est.method = FisherMethod::SldEigenQfi;
  est.step = h;
  const Mat2 drho = (rho_of(theta0 + h) - rho_of(theta0 - h)) / (2 * h);
  Eigen::SelfAdjointEigenSolver<Mat2> es(rho_of(theta0));
  const auto& p = es.eigenvalues();
  const auto& v = es.eigenvectors();
  double total = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double denom = p(i) + p(j);
      if (denom <= 1e-12) continue;
      const cxd elem = v.col(i).adjoint() * drho * v.col(j);
      total += 2.0 * std::norm(elem) / denom;
    }
  est.value = total;
  return est;
}

FisherEstimate qubit_cfi_sigma_x(const QubitStateFn& rho_of, double theta0, double h,
                                 bool check_convergence) {
  if (!(h > 0)) throw std::invalid_argument("qubit_cfi_sigma_x: step must be > 0");
  const auto sx = [&](double theta) {
    return (rho_of(theta) * sigma_x()).trace().real();
  };
  FisherEstimate est;
  est.method = FisherMethod::BinaryCfi;
  est.step = h;
  const auto value_at = [&](double step) {
    const double deriv = (sx(theta0 + step) - sx(theta0 - step)) / (2 * step);
    const double s0 = sx(theta0);
    const double denom = 1.0 - s0 * s0;
    if (denom <= 1e-12) {
      // pinned readout: zero information when the slope also vanishes,
      // otherwise the estimate is unreliable and flagged
      if (std::abs(deriv) <= 1e-9) return 0.0;
      est.converged = false;
      return deriv * deriv / 1e-12;
    }
    return deriv * deriv / denom;
  };
  est.value = value_at(h);
  if (check_convergence && est.converged)
    est.converged = relative_delta(est.value, value_at(h / 2)) <= 1e-3;
  return est;
}

QubitStateFn geometric_qubit_state_fn(const SensingParams& p, const HilbertParams& h,
                                      const Mat& rho_osc,
                                      const std::optional<NoiseChannel>& channel,
                                      int n_loops) {
  return [p, h, rho_osc, channel, n_loops](double eta) {
    SensingParams q = p;
    q.eta = eta;
    const ProtocolPlan plan = build_geometric_loop(q, h);
    if (channel && channel->lambda > 0) {
      const Mat initial = joint_plus_state(rho_osc);
      return run_noisy_protocol(plan, *channel, initial, n_loops).qubit_rho;
    }
    return run_interference(plan, rho_osc, n_loops).qubit_rho;
  };
}

std::vector<SweepCell> noise_qfi_sweep(const std::vector<NoiseKind>& channels,
                                       const std::vector<double>& lambdas,
                                       const std::vector<OscStateSpec>& states,
                                       const SensingParams& p, const HilbertParams& h,
                                       const SweepOptions& opts) {
  struct Task {
    NoiseKind kind;
    double lambda;
    OscStateSpec state;
  };
  std::vector<Task> tasks;
  for (const NoiseKind kind : channels)
    for (const double lambda : lambdas)
      for (const auto& state : states) tasks.push_back({kind, lambda, state});

  std::vector<SweepCell> cells(tasks.size());
  const unsigned workers = (opts.jobs > 0)
                               ? unsigned(opts.jobs)
                               : std::max(1u, std::thread::hardware_concurrency());

  std::atomic<size_t> next{0};
  const auto worker = [&]() {
    for (size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
      const Task& task = tasks[i];
      SweepCell cell;
      cell.channel = task.kind;
      cell.lambda = task.lambda;
      cell.state = task.state.name();
      try {
        WarningList state_warnings;
        const Mat rho_osc = make_state(task.state, h, &state_warnings);
        cell.flags = state_warnings;
        std::optional<NoiseChannel> ch;
        if (task.lambda > 0) ch = NoiseChannel{task.kind, task.lambda};
        const QubitStateFn rho_of =
            geometric_qubit_state_fn(p, h, rho_osc, ch, opts.n_loops);
        const FisherEstimate est =
            qubit_qfi(rho_of, p.eta, opts.eta_step, opts.check_convergence);
        cell.qfi = est.value;
        cell.converged = est.converged;
        if (!est.converged) cell.flags.push_back("qfi: step-halving disagreement");
        const Mat2 rho_q = rho_of(p.eta);
        const cxd c = rho_q(1, 0);
        cell.coherence_phase = std::arg(c);
        cell.coherence_mag = std::abs(c);
      } catch (const std::exception& e) {
        cell.converged = false;
        cell.flags.push_back(std::string("cell failed: ") + e.what());
      }
      cells[i] = std::move(cell);
    }
  };

  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return cells;
}

}  // namespace geomsense
