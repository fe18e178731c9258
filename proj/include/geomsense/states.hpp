#pragma once
// Initial oscillator states used across the experiments: vacuum, coherent,
// thermal, even cat, and a finite-energy GKP logical zero, plus the
// |+> qubit product-state helper.

#include <string>

#include "geomsense/fock.hpp"

namespace geomsense {

enum class OscStateKind { Vacuum, Coherent, Thermal, Cat, Gkp };

struct OscStateSpec {
  OscStateKind kind = OscStateKind::Vacuum;
  cxd amplitude = 0;   // coherent / cat
  double nbar = 0;     // thermal mean occupation
  double delta = 0.3;  // gkp envelope width
  int peaks = 3;       // gkp comb extent K (k = -K..K)

  static OscStateSpec vacuum();
  static OscStateSpec coherent(cxd alpha);
  static OscStateSpec thermal(double nbar);
  static OscStateSpec cat(cxd alpha);
  static OscStateSpec gkp(double delta = 0.3, int peaks = 3);

  std::string name() const;
};

OscStateKind osc_state_kind_from_string(const std::string& s);  // throws on unknown kind

// Normalized density matrix at the given cutoff. Appends a warning when the
// cutoff visibly truncates the construction (norm deficit above 1e-6).
Mat make_state(const OscStateSpec& spec, const HilbertParams& h,
               WarningList* warnings = nullptr);

// |+><+| (x) rho_osc
Mat joint_plus_state(const Mat& rho_osc);

// The five reference states: vacuum, coherent(1), thermal(1), cat(1), gkp.
std::vector<OscStateSpec> reference_states();

}  // namespace geomsense
