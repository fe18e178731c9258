#pragma once
// Truncated-Fock-space linear algebra for a qubit-oscillator pair.
//
// Conventions used throughout the library:
//   - Oscillator space: Fock levels 0..N, dimension d = N+1.
//   - Joint space: qubit (outermost) tensor oscillator, dimension 2d. The
//     s = +1 block comes first: indices [0, d) are |up>, [d, 2d) are |down>,
//     and sigma_z = diag(+1, -1) in that ordering.
//   - The reported qubit coherence is the <down|rho_q|up> matrix element;
//     its argument is the interference phase read out in all protocols.
//
// Operators are plain dense complex matrices. Constructors that can detect
// an inadequate cutoff append a message to the caller-supplied warning list
// instead of failing, so parameter sweeps keep running with diagnostics.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace geomsense {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;
using SparseMat = Eigen::SparseMatrix<cxd>;
using WarningList = std::vector<std::string>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

struct HilbertParams {
  int cutoff;  // highest retained Fock level N

  explicit HilbertParams(int n);
  int dim() const { return cutoff + 1; }
  int joint_dim() const { return 2 * (cutoff + 1); }
};

Mat annihilation(const HilbertParams& h);
Mat creation(const HilbertParams& h);
Mat number_operator(const HilbertParams& h);
Mat parity(const HilbertParams& h);  // diag((-1)^n)

// exp(M) via scaling-and-squaring with a truncated Taylor kernel.
// Backward error is bounded by tol. Throws on non-finite input.
Mat matrix_exponential(const Mat& m, double tol = 1e-12);

// exp(G)·v without forming the dense exponential (G sparse, banded in
// practice). Used where only the action on a vector is needed.
Vec expm_apply(const SparseMat& g, const Vec& v, double tol = 1e-14);

// D(alpha) = exp(alpha a† - conj(alpha) a). Warns when the cutoff is too
// small for the requested amplitude (norm deficit of D|0> above 1e-6).
Mat displacement(cxd alpha, const HilbertParams& h, WarningList* warnings = nullptr);

// S(xi) = exp((conj(xi) a² - xi a†²)/2). Sign convention fixed by
// S†(r) D(alpha) S(r) = D(alpha cosh r + conj(alpha) sinh r).
Mat squeeze(cxd xi, const HilbertParams& h, WarningList* warnings = nullptr);

// |up><up| ⊗ U_up + |down><down| ⊗ U_down. Throws on dimension mismatch.
Mat spin_conditional(const Mat& up, const Mat& down);

Mat pi_pulse(const HilbertParams& h);  // sigma_x ⊗ I

Mat tensor_with_qubit(const Mat2& q, const Mat& osc);  // q ⊗ osc
Mat lift_qubit(const Mat2& q, const HilbertParams& h); // q ⊗ I
Mat lift_oscillator(const Mat& osc);                   // I₂ ⊗ osc
Mat joint_identity(const HilbertParams& h);

Mat2 partial_trace_oscillator(const Mat& rho_joint);
Mat partial_trace_qubit(const Mat& rho_joint);

// <down|rho_q|up> of the reduced qubit state.
cxd qubit_coherence(const Mat& rho_joint);

Mat2 sigma_x();
Mat2 sigma_y();
Mat2 sigma_z();
Mat2 sigma_plus();   // |up><down|
Mat2 sigma_minus();  // |down><up|
Mat2 plus_projector();

struct StateCheck {
  double hermiticity_defect = 0;  // max |rho - rho†|
  double trace_deviation = 0;     // |tr(rho) - 1|
  double min_eigenvalue = 0;
  bool ok = false;
};
StateCheck check_joint_state(const Mat& rho);

// max |(G†G - I)_jk| over the leading trusted_dim x trusted_dim block.
double unitarity_defect(const Mat& g, int trusted_dim);

// min over a global phase of max |A - e^{i t} B|, restricted to the leading
// trusted_cols columns. This is the gauge-invariant distance between two
// propagators that may differ by an unobservable overall phase.
double phase_aligned_distance(const Mat& a, const Mat& b, int trusted_cols);

// Levels up to which a product of displacements with total excursion
// amplitude `amplitude` is unaffected by the cutoff; used to restrict
// closure checks and phase extraction to healthy matrix blocks.
int trusted_levels(const HilbertParams& h, double amplitude);

}  // namespace geomsense
