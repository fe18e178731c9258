#pragma once
// Lindblad dissipation for the six elementary noise channels and the
// interleaved noisy protocol: each unitary step is followed by a pure
// dissipation segment of the same duration (noise is never applied
// concurrently with a unitary, which keeps the closed-form steps usable).

#include <optional>
#include <string>
#include <vector>

#include "geomsense/protocol.hpp"

namespace geomsense {

enum class NoiseKind {
  BosonLoss,     // sqrt(lambda) a
  BosonHeat,     // sqrt(lambda) a†
  BosonDephase,  // sqrt(lambda) a†a
  QubitDecay,    // sqrt(lambda) sigma-
  QubitHeat,     // sqrt(lambda) sigma+
  QubitDephase,  // sqrt(lambda) sigma_z
};

struct NoiseChannel {
  NoiseKind kind = NoiseKind::BosonLoss;
  double lambda = 0.0;  // rate, inverse time
};

std::string noise_kind_name(NoiseKind k);
NoiseKind noise_kind_from_string(const std::string& s);  // throws on unknown
std::vector<NoiseKind> all_noise_kinds();
bool is_qubit_channel(NoiseKind k);

// Jump operator lifted to the joint space (identity on the other factor),
// without the sqrt(lambda) factor. Sparse: every kind is banded or diagonal.
SparseMat jump_operator(NoiseKind k, const HilbertParams& h);

// Step size policy: lambda*dt <= 1e-3 and at least 200 steps per segment,
// whichever is finer.
double dissipation_step(double lambda, double duration);

struct DissipateOptions {
  double dt = 0;                  // 0 = use dissipation_step policy
  bool check_convergence = false; // re-run at dt/2 and compare
  double tol = 1e-8;
};

struct DissipateResult {
  Mat rho;
  bool converged = true;
  double step_halving_delta = 0;
  WarningList warnings;  // cutoff-leakage diagnostic for heating
};

// Fixed-step 4th-order integration of drho/dt = L rho L† - {L†L, rho}/2 for
// the given duration. Trace-preserving except under boson heating, where
// cutoff leakage is reported as a diagnostic.
DissipateResult dissipate(const Mat& rho, const NoiseChannel& ch, double duration,
                          const DissipateOptions& opts = {});

struct NoisyRunResult {
  Mat final_state;
  Mat2 qubit_rho;
  double coherence_phase = 0;  // arg <down|rho_q|up>
  double coherence_mag = 0;
  WarningList flags;
  bool converged = true;
};

// Alternate each plan step with a dissipation segment of equal duration,
// n_loops times. lambda = 0 reduces exactly to run_interference.
NoisyRunResult run_noisy_protocol(const ProtocolPlan& plan, const NoiseChannel& ch,
                                  const Mat& initial_joint, int n_loops = 1,
                                  const DissipateOptions& opts = {});

struct PhaseDeviationRow {
  std::string channel;
  double delta_phase = 0;     // vs the noiseless run, radians
  double magnitude_ratio = 0;
};

// Per-channel deviation table relative to a noiseless reference run.
std::vector<PhaseDeviationRow> phase_deviation_report(
    const NoisyRunResult& noiseless,
    const std::vector<std::pair<std::string, NoisyRunResult>>& noisy);

}  // namespace geomsense
