#pragma once
// Numerical quantum and classical Fisher information of the reduced qubit
// state with respect to the sensed parameter. Central finite differences
// with a mandatory step-halving consistency check; the Bloch-vector formula
// is the primary route, the SLD eigen-decomposition the cross-check.

#include <functional>
#include <string>
#include <vector>

#include "geomsense/closed_form.hpp"
#include "geomsense/noise.hpp"
#include "geomsense/states.hpp"

namespace geomsense {

enum class FisherMethod { BlochQfi, SldEigenQfi, BinaryCfi };

struct FisherEstimate {
  double value = 0;
  FisherMethod method = FisherMethod::BlochQfi;
  double step = 0;
  bool converged = true;  // h vs h/2 agreement within 1e-3 relative
};

using QubitStateFn = std::function<Mat2(double)>;

// QFI via F = |dr|^2 + (r·dr)^2/(1-|r|^2), falling back to the pure-state
// form |dr|^2 when the state is pure to numerical precision.
FisherEstimate qubit_qfi(const QubitStateFn& rho_of, double theta0, double h,
                         bool check_convergence = true);

// Same derivative data through the SLD eigen-decomposition formula
// F = sum 2 |<i|drho|j>|^2 / (p_i + p_j) over p_i + p_j > 1e-12.
FisherEstimate qubit_qfi_sld(const QubitStateFn& rho_of, double theta0, double h);

// Classical FI of the sigma_x readout: (d<sx>/dtheta)^2 / (1 - <sx>^2),
// returning the limit value when numerator and denominator both vanish.
FisherEstimate qubit_cfi_sigma_x(const QubitStateFn& rho_of, double theta0, double h,
                                 bool check_convergence = true);

struct SweepCell {
  NoiseKind channel;
  double lambda = 0;
  std::string state;
  double qfi = 0;
  double coherence_phase = 0;
  double coherence_mag = 0;
  bool converged = true;
  WarningList flags;
};

struct SweepOptions {
  double eta_step = 1e-7;        // finite-difference step in eta
  bool check_convergence = true;
  int n_loops = 1;
  int jobs = 0;                  // 0 = hardware concurrency
};

// The geometric-loop QFI table behind the noise figures: for every
// (channel, lambda, state) cell, differentiate the noisy protocol around
// p.eta. A failed cell is flagged, never fatal.
std::vector<SweepCell> noise_qfi_sweep(const std::vector<NoiseKind>& channels,
                                       const std::vector<double>& lambdas,
                                       const std::vector<OscStateSpec>& states,
                                       const SensingParams& p, const HilbertParams& h,
                                       const SweepOptions& opts = {});

// rho_q(eta) for the noiseless/noisy geometric loop; shared by the sweep and
// the acceptance checks.
QubitStateFn geometric_qubit_state_fn(const SensingParams& p, const HilbertParams& h,
                                      const Mat& rho_osc,
                                      const std::optional<NoiseChannel>& channel,
                                      int n_loops = 1);

}  // namespace geomsense
