#pragma once
// Wigner-function evaluation on a rectangular phase-space grid, and the
// per-step oscillator snapshots of a protocol run.
//
// Conventions: x = (a + a†)/sqrt(2), p = (a - a†)/(i sqrt(2)),
// beta = (x + i p)/sqrt(2); normalization fixed so that the total integral
// is 1 and the vacuum gives W(0,0) = 1/pi:
//   W(x, p) = (1/pi) Tr[rho D(2 beta) P].

#include <optional>
#include <string>
#include <vector>

#include "geomsense/noise.hpp"
#include "geomsense/protocol.hpp"

namespace geomsense {

struct WignerGridSpec {
  double x_min = -4, x_max = 4;
  double p_min = -4, p_max = 4;
  int nx = 81, np = 81;

  double x_at(int i) const { return x_min + (x_max - x_min) * i / double(nx - 1); }
  double p_at(int j) const { return p_min + (p_max - p_min) * j / double(np - 1); }
  WignerGridSpec widened(double factor) const;
};

struct WignerGrid {
  WignerGridSpec spec;
  Eigen::MatrixXd values;        // nx rows, np columns
  double max_imag_residue = 0;   // discarded imaginary part, for diagnostics
  bool boundary_warning = false; // |W| at the window edge above 1e-3 max|W|
};

WignerGrid wigner(const Mat& rho_osc, const WignerGridSpec& spec, const HilbertParams& h);

// Riemann-sum integral over the grid window.
double wigner_integral(const WignerGrid& grid);

struct ProtocolSnapshot {
  std::string label;
  WignerGrid grid;       // oscillator reduced state
  double sigma_x = 0;    // qubit Bloch x-y projection
  double sigma_y = 0;
  double coherence_phase = 0;
};

// Wigner snapshots of the oscillator at: initial state, after each protocol
// step (with its dissipation segment when a channel is given), and final.
// The grid widens automatically when the boundary diagnostic fires.
std::vector<ProtocolSnapshot> protocol_snapshots(const ProtocolPlan& plan,
                                                 const Mat& initial_joint,
                                                 const std::optional<NoiseChannel>& channel,
                                                 const WignerGridSpec& spec);

}  // namespace geomsense
