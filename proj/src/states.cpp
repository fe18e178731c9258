#include "geomsense/states.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace geomsense {

OscStateSpec OscStateSpec::vacuum() { return {}; }

OscStateSpec OscStateSpec::coherent(cxd alpha) {
  OscStateSpec s;
  s.kind = OscStateKind::Coherent;
  s.amplitude = alpha;
  return s;
}

OscStateSpec OscStateSpec::thermal(double nbar) {
  OscStateSpec s;
  s.kind = OscStateKind::Thermal;
  s.nbar = nbar;
  return s;
}

OscStateSpec OscStateSpec::cat(cxd alpha) {
  OscStateSpec s;
  s.kind = OscStateKind::Cat;
  s.amplitude = alpha;
  return s;
}

OscStateSpec OscStateSpec::gkp(double delta, int peaks) {
  OscStateSpec s;
  s.kind = OscStateKind::Gkp;
  s.delta = delta;
  s.peaks = peaks;
  return s;
}

std::string OscStateSpec::name() const {
  std::ostringstream os;
  switch (kind) {
    case OscStateKind::Vacuum: return "vacuum";
    case OscStateKind::Coherent:
      os << "coherent(" << amplitude.real();
      if (amplitude.imag() != 0) os << (amplitude.imag() > 0 ? "+" : "") << amplitude.imag() << "i";
      os << ")";
      return os.str();
    case OscStateKind::Thermal:
      os << "thermal(" << nbar << ")";
      return os.str();
    case OscStateKind::Cat:
      os << "cat(" << amplitude.real();
      if (amplitude.imag() != 0) os << (amplitude.imag() > 0 ? "+" : "") << amplitude.imag() << "i";
      os << ")";
      return os.str();
    case OscStateKind::Gkp:
      os << "gkp(delta=" << delta << ")";
      return os.str();
  }
  return "unknown";
}

OscStateKind osc_state_kind_from_string(const std::string& s) {
  if (s == "vacuum") return OscStateKind::Vacuum;
  if (s == "coherent") return OscStateKind::Coherent;
  if (s == "thermal") return OscStateKind::Thermal;
  if (s == "cat") return OscStateKind::Cat;
  if (s == "gkp") return OscStateKind::Gkp;
  throw std::invalid_argument("unknown oscillator state kind: " + s);
}

namespace {

Vec coherent_column(cxd alpha, int dim) {
  Vec v(dim);
  v(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n) v(n) = v(n - 1) * alpha / std::sqrt(double(n));
  return v;
}

void warn_deficit(double deficit, const char* what, WarningList* warnings) {
  if (warnings && deficit > 1e-6) {
    std::ostringstream msg;
    msg << what << ": cutoff too small, construction norm deficit " << deficit;
    warnings->push_back(msg.str());
  }
}

SparseMat displacement_generator(cxd alpha, int dim) {
  SparseMat g(dim, dim);
  std::vector<Eigen::Triplet<cxd>> trip;
  trip.reserve(2 * dim);
  for (int n = 1; n < dim; ++n) {
    const double root = std::sqrt(double(n));
    trip.emplace_back(n, n - 1, alpha * root);            // alpha a†
    trip.emplace_back(n - 1, n, -std::conj(alpha) * root);  // -conj(alpha) a
  }
  g.setFromTriplets(trip.begin(), trip.end());
  return g;
}

SparseMat squeeze_generator(cxd xi, int dim) {
  SparseMat g(dim, dim);
  std::vector<Eigen::Triplet<cxd>> trip;
  trip.reserve(2 * dim);
  for (int n = 2; n < dim; ++n) {
    const double root = std::sqrt(double(n) * double(n - 1));
    trip.emplace_back(n - 2, n, 0.5 * std::conj(xi) * root);  // conj(xi) a^2 / 2
    trip.emplace_back(n, n - 2, -0.5 * xi * root);            // -xi a†^2 / 2
  }
  g.setFromTriplets(trip.begin(), trip.end());
  return g;
}

}  // namespace

Mat make_state(const OscStateSpec& spec, const HilbertParams& h, WarningList* warnings) {
  const int d = h.dim();
  switch (spec.kind) {
    case OscStateKind::Vacuum: {
      Mat rho = Mat::Zero(d, d);
      rho(0, 0) = 1.0;
      return rho;
    }
    case OscStateKind::Coherent: {
      Vec v = coherent_column(spec.amplitude, d);
      warn_deficit(std::abs(1.0 - v.norm()), "coherent state", warnings);
      v.normalize();
      return v * v.adjoint();
    }
    case OscStateKind::Thermal: {
      if (spec.nbar < 0) throw std::invalid_argument("thermal state: nbar must be >= 0");
      Mat rho = Mat::Zero(d, d);
      const double ratio = spec.nbar / (1.0 + spec.nbar);
      double p = 1.0 / (1.0 + spec.nbar);
      double total = 0;
      for (int n = 0; n < d; ++n, p *= ratio) {
        rho(n, n) = p;
        total += p;
      }
      warn_deficit(1.0 - total, "thermal state", warnings);
      return rho / total;
    }
    case OscStateKind::Cat: {
      Vec v = coherent_column(spec.amplitude, d) + coherent_column(-spec.amplitude, d);
      const double expected_sq = 2.0 * (1.0 + std::exp(-2.0 * std::norm(spec.amplitude)));
      warn_deficit(std::abs(1.0 - v.norm() / std::sqrt(expected_sq)), "cat state", warnings);
      v.normalize();
      return v * v.adjoint();
    }
    case OscStateKind::Gkp: {
      if (!(spec.delta > 0)) throw std::invalid_argument("gkp state: delta must be > 0");
      if (spec.peaks < 1) throw std::invalid_argument("gkp state: peaks must be >= 1");
      Vec vac = Vec::Zero(d);
      vac(0) = 1.0;
      const Vec squeezed = expm_apply(squeeze_generator(-std::log(spec.delta), d), vac);
      Vec v = Vec::Zero(d);
      const double comb = std::sqrt(2.0 * kPi);
      for (int k = -spec.peaks; k <= spec.peaks; ++k) {
        const double weight = std::exp(-kPi * spec.delta * spec.delta * 4.0 * k * k / 2.0);
        v += weight * expm_apply(displacement_generator(double(k) * comb, d), squeezed);
      }
      // top-of-spectrum weight signals an inadequate cutoff
      const double top = v.tail(std::min(4, d)).norm() / v.norm();
      warn_deficit(top, "gkp state", warnings);
      v.normalize();
      return v * v.adjoint();
    }
  }
  throw std::invalid_argument("make_state: unknown state kind");
}

Mat joint_plus_state(const Mat& rho_osc) {
  return tensor_with_qubit(plus_projector(), rho_osc);
}

std::vector<OscStateSpec> reference_states() {
  return {OscStateSpec::vacuum(), OscStateSpec::coherent(1.0), OscStateSpec::thermal(1.0),
          OscStateSpec::cat(1.0), OscStateSpec::gkp()};
}

}  // namespace geomsense
