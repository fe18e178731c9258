#include "geomsense/fock.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace geomsense {

HilbertParams::HilbertParams(int n) : cutoff(n) {
  if (n < 1) throw std::invalid_argument("HilbertParams: cutoff must be >= 1");
}

Mat annihilation(const HilbertParams& h) {
  const int d = h.dim();
  Mat a = Mat::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Mat creation(const HilbertParams& h) { return annihilation(h).adjoint(); }

Mat number_operator(const HilbertParams& h) {
  const int d = h.dim();
  Mat n = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) n(k, k) = double(k);
  return n;
}

Mat parity(const HilbertParams& h) {
  const int d = h.dim();
  Mat p = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return p;
}

Mat matrix_exponential(const Mat& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix_exponential: square matrix required");
  if (!m.allFinite()) throw std::invalid_argument("matrix_exponential: non-finite entries");
  const int d = int(m.rows());

  // scale so the Taylor series converges fast, then square back
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = int(std::ceil(std::log2(norm1 / 0.5)));
  const double scale = std::ldexp(1.0, -squarings);

  Mat x = m * scale;
  Mat term = Mat::Identity(d, d);
  Mat sum = Mat::Identity(d, d);
  const double target = tol / std::max(1.0, std::ldexp(1.0, squarings));
  for (int k = 1; k <= 40; ++k) {
    term = (term * x) / double(k);
    sum += term;
    const double tn = term.cwiseAbs().colwise().sum().maxCoeff();
    if (tn < target * std::max(1.0, sum.cwiseAbs().colwise().sum().maxCoeff())) break;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

Vec expm_apply(const SparseMat& g, const Vec& v, double tol) {
  const double norm1 = [&] {
    double best = 0;
    for (int k = 0; k < g.outerSize(); ++k) {
      double c = 0;
      for (SparseMat::InnerIterator it(g, k); it; ++it) c += std::abs(it.value());
      best = std::max(best, c);
    }
    return best;
  }();
  int squarings = 0;
  if (norm1 > 0.5) squarings = int(std::ceil(std::log2(norm1 / 0.5)));
  const double scale = std::ldexp(1.0, -squarings);
  const SparseMat x = g * scale;

  Vec result = v;
  const long reps = 1L << squarings;
  for (long rep = 0; rep < reps; ++rep) {
    Vec term = result;
    Vec acc = result;
    for (int k = 1; k <= 40; ++k) {
      term = (x * term) / double(k);
      acc += term;
      if (term.norm() < tol * std::max(1.0, acc.norm())) break;
    }
    result.swap(acc);
  }
  return result;
}

namespace {

// The truncated exponential of an anti-Hermitian generator is exactly
// unitary, so truncation health is judged against the analytic weight the
// untruncated state would carry beyond the cutoff.
void warn_norm_deficit(double retained_sq, const char* what, WarningList* warnings) {
  if (!warnings) return;
  const double deficit = 1.0 - std::sqrt(std::max(0.0, std::min(1.0, retained_sq)));
  if (deficit > 1e-6) {
    std::ostringstream msg;
    msg << what << ": cutoff too small, vacuum-column norm deficit " << deficit;
    warnings->push_back(msg.str());
  }
}

double coherent_weight_within_cutoff(double abs2, int cutoff) {
  double term = std::exp(-abs2);  // Poisson weights |<n|D|0>|^2
  double sum = term;
  for (int n = 1; n <= cutoff; ++n) {
    term *= abs2 / double(n);
    sum += term;
  }
  return sum;
}

double squeezed_weight_within_cutoff(double r_mag, int cutoff) {
  const double t2 = std::tanh(r_mag) * std::tanh(r_mag);
  double term = 1.0 / std::cosh(r_mag);  // |<2k|S|0>|^2, k = 0
  double sum = term;
  for (int k = 1; 2 * k <= cutoff; ++k) {
    term *= t2 * double(2 * k - 1) / double(2 * k);
    sum += term;
  }
  return sum;
}

}  // namespace

Mat displacement(cxd alpha, const HilbertParams& h, WarningList* warnings) {
  const Mat a = annihilation(h);
  Mat op = matrix_exponential(alpha * a.adjoint() - std::conj(alpha) * a);
  warn_norm_deficit(coherent_weight_within_cutoff(std::norm(alpha), h.cutoff),
                    "displacement", warnings);
  return op;
}

Mat squeeze(cxd xi, const HilbertParams& h, WarningList* warnings) {
  const Mat a = annihilation(h);
  const Mat a2 = a * a;
  Mat op = matrix_exponential(0.5 * (std::conj(xi) * a2 - xi * a2.adjoint()));
  warn_norm_deficit(squeezed_weight_within_cutoff(std::abs(xi), h.cutoff), "squeeze", warnings);
  return op;
}

Mat spin_conditional(const Mat& up, const Mat& down) {
  if (up.rows() != up.cols() || down.rows() != down.cols() || up.rows() != down.rows())
    throw std::invalid_argument("spin_conditional: operand dimensions must match");
  const int d = int(up.rows());
  Mat joint = Mat::Zero(2 * d, 2 * d);
  joint.topLeftCorner(d, d) = up;
  joint.bottomRightCorner(d, d) = down;
  return joint;
}

Mat pi_pulse(const HilbertParams& h) {
  const int d = h.dim();
  Mat x = Mat::Zero(2 * d, 2 * d);
  x.topRightCorner(d, d) = Mat::Identity(d, d);
  x.bottomLeftCorner(d, d) = Mat::Identity(d, d);
  return x;
}

Mat tensor_with_qubit(const Mat2& q, const Mat& osc) {
  const int d = int(osc.rows());
  Mat joint(2 * d, osc.cols() * 2);
  joint.topLeftCorner(d, d) = q(0, 0) * osc;
  joint.topRightCorner(d, d) = q(0, 1) * osc;
  joint.bottomLeftCorner(d, d) = q(1, 0) * osc;
  joint.bottomRightCorner(d, d) = q(1, 1) * osc;
  return joint;
}

Mat lift_qubit(const Mat2& q, const HilbertParams& h) {
  return tensor_with_qubit(q, Mat::Identity(h.dim(), h.dim()));
}

Mat lift_oscillator(const Mat& osc) {
  return tensor_with_qubit(Mat2::Identity(), osc);
}

Mat joint_identity(const HilbertParams& h) {
  return Mat::Identity(h.joint_dim(), h.joint_dim());
}

Mat2 partial_trace_oscillator(const Mat& rho_joint) {
  const int d = int(rho_joint.rows()) / 2;
  Mat2 q;
  q(0, 0) = rho_joint.topLeftCorner(d, d).trace();
  q(0, 1) = rho_joint.topRightCorner(d, d).trace();
  q(1, 0) = rho_joint.bottomLeftCorner(d, d).trace();
  q(1, 1) = rho_joint.bottomRightCorner(d, d).trace();
  return q;
}

Mat partial_trace_qubit(const Mat& rho_joint) {
  const int d = int(rho_joint.rows()) / 2;
  return rho_joint.topLeftCorner(d, d) + rho_joint.bottomRightCorner(d, d);
}

cxd qubit_coherence(const Mat& rho_joint) {
  return partial_trace_oscillator(rho_joint)(1, 0);
}

Mat2 sigma_x() { return (Mat2() << 0, 1, 1, 0).finished(); }
Mat2 sigma_y() { return (Mat2() << 0, cxd(0, -1), cxd(0, 1), 0).finished(); }
Mat2 sigma_z() { return (Mat2() << 1, 0, 0, -1).finished(); }
Mat2 sigma_plus() { return (Mat2() << 0, 1, 0, 0).finished(); }
Mat2 sigma_minus() { return (Mat2() << 0, 0, 1, 0).finished(); }
Mat2 plus_projector() { return (Mat2() << 0.5, 0.5, 0.5, 0.5).finished(); }

StateCheck check_joint_state(const Mat& rho) {
  StateCheck c;
  c.hermiticity_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  c.trace_deviation = std::abs(rho.trace() - cxd(1.0, 0.0));
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  c.ok = c.hermiticity_defect < 1e-10 && c.trace_deviation < 1e-8 && c.min_eigenvalue > -1e-8;
  return c;
}

double unitarity_defect(const Mat& g, int trusted_dim) {
  const Mat gram = g.adjoint() * g;
  const int m = std::min<int>(trusted_dim, int(g.rows()));
  return (gram.topLeftCorner(m, m) - Mat::Identity(m, m)).cwiseAbs().maxCoeff();
}

double phase_aligned_distance(const Mat& a, const Mat& b, int trusted_cols) {
  const int m = std::min<int>(trusted_cols, int(a.cols()));
  const cxd overlap = (b.leftCols(m).adjoint() * a.leftCols(m)).trace();
  const cxd phase = (std::abs(overlap) > 0) ? overlap / std::abs(overlap) : cxd(1, 0);
  return (a.leftCols(m) - phase * b.leftCols(m)).cwiseAbs().maxCoeff();
}

int trusted_levels(const HilbertParams& h, double amplitude) {
  const double root = std::sqrt(double(h.dim())) - amplitude - 2.5;
  const int m = int(std::floor(root * root));
  return std::max(4, std::min(m, h.dim()));
}

}  // namespace geomsense
