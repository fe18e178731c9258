#include "geomsense/wigner.hpp"

#include <cmath>
#include <stdexcept>

namespace geomsense {

WignerGridSpec WignerGridSpec::widened(double factor) const {
  WignerGridSpec w = *this;
  w.x_min *= factor;
  w.x_max *= factor;
  w.p_min *= factor;
  w.p_max *= factor;
  return w;
}

namespace {

// Columns of D(A) via the recurrence D(A)|n+1> = (a† - conj(A)) D(A)|n> / sqrt(n+1),
// seeded with the coherent column D(A)|0>. O(d) per column instead of a
// matrix exponential per grid point.
struct DisplacementColumns {
  Vec current;  // D(A)|n>
  cxd a_conj;
  int n = 0;

  DisplacementColumns(cxd amp, int dim) : current(dim), a_conj(std::conj(amp)) {
    current(0) = std::exp(-0.5 * std::norm(amp));
    for (int m = 1; m < dim; ++m) current(m) = current(m - 1) * amp / std::sqrt(double(m));
  }

  void advance() {
    const int dim = int(current.size());
    Vec next(dim);
    next(0) = -a_conj * current(0);
    for (int m = 1; m < dim; ++m)
      next(m) = std::sqrt(double(m)) * current(m - 1) - a_conj * current(m);
    current = next / std::sqrt(double(n + 1));
    ++n;
  }
};

// Tr[rho D(A) P] = sum_n (-1)^n rho.row(n) · D(A)|n>
cxd displaced_parity_trace(const Mat& rho, cxd amp) {
  const int d = int(rho.rows());
  DisplacementColumns cols(amp, d);
  cxd total = 0;
  for (int n = 0; n < d; ++n) {
    const cxd dot = rho.row(n) * cols.current;
    total += (n % 2 == 0) ? dot : -dot;
    if (n + 1 < d) cols.advance();
  }
  return total;
}

}  // namespace

WignerGrid wigner(const Mat& rho_osc, const WignerGridSpec& spec, const HilbertParams& h) {
  if (rho_osc.rows() != h.dim())
    throw std::invalid_argument("wigner: state dimension does not match cutoff");
  if (spec.nx < 2 || spec.np < 2)
    throw std::invalid_argument("wigner: grid needs at least 2 points per axis");

  WignerGrid grid;
  grid.spec = spec;
  grid.values.resize(spec.nx, spec.np);
  for (int i = 0; i < spec.nx; ++i) {
    const double x = spec.x_at(i);
    for (int j = 0; j < spec.np; ++j) {
      const double p = spec.p_at(j);
      const cxd beta = cxd(x, p) / std::sqrt(2.0);
      const cxd w = displaced_parity_trace(rho_osc, 2.0 * beta) / kPi;
      grid.values(i, j) = w.real();
      grid.max_imag_residue = std::max(grid.max_imag_residue, std::abs(w.imag()));
    }
  }

  const double peak = grid.values.cwiseAbs().maxCoeff();
  double edge = 0;
  for (int i = 0; i < spec.nx; ++i)
    edge = std::max({edge, std::abs(grid.values(i, 0)), std::abs(grid.values(i, spec.np - 1))});
  for (int j = 0; j < spec.np; ++j)
    edge = std::max({edge, std::abs(grid.values(0, j)), std::abs(grid.values(spec.nx - 1, j))});
  grid.boundary_warning = peak > 0 && edge > 1e-3 * peak;
  return grid;
}

double wigner_integral(const WignerGrid& grid) {
  const auto& s = grid.spec;
  const double dx = (s.x_max - s.x_min) / double(s.nx - 1);
  const double dp = (s.p_max - s.p_min) / double(s.np - 1);
  return grid.values.sum() * dx * dp;
}

std::vector<ProtocolSnapshot> protocol_snapshots(const ProtocolPlan& plan,
                                                 const Mat& initial_joint,
                                                 const std::optional<NoiseChannel>& channel,
                                                 const WignerGridSpec& spec) {
  const HilbertParams h = plan.space;

  const auto snapshot = [&](const std::string& label, const Mat& rho_joint) {
    ProtocolSnapshot snap;
    snap.label = label;
    const Mat rho_osc = partial_trace_qubit(rho_joint);
    WignerGridSpec use = spec;
    for (int attempt = 0; attempt < 3; ++attempt) {
      snap.grid = wigner(rho_osc, use, h);
      if (!snap.grid.boundary_warning) break;
      use = use.widened(1.5);
    }
    const cxd c = qubit_coherence(rho_joint);
    snap.sigma_x = 2.0 * c.real();
    snap.sigma_y = 2.0 * c.imag();
    snap.coherence_phase = std::arg(c);
    return snap;
  };

  std::vector<ProtocolSnapshot> snaps;
  snaps.push_back(snapshot("initial", initial_joint));
  Mat rho = initial_joint;
  for (const auto& step : plan.steps) {
    rho = step.unitary * rho * step.unitary.adjoint();
    if (channel && channel->lambda > 0 && step.duration > 0)
      rho = dissipate(rho, *channel, step.duration).rho;
    snaps.push_back(snapshot("after " + step.label, rho));
  }
  snaps.push_back(snapshot("final", rho));
  return snaps;
}

}  // namespace geomsense
