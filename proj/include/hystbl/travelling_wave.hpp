#pragma once

#include <limits>
#include <vector>

#include "hystbl/constitutive.hpp"

namespace hystbl {

struct TWPoint {
  double eta = 0;
  double S = 0;
  double p = 0;
};

// Smooth viscous profile S(eta), p(eta) = pc(S(eta)) connecting two shock
// end states in the moving frame eta = (x - c t) / delta.
struct TWProfile {
  std::vector<TWPoint> samples;  // ordered by eta
  double S_l = 0, S_r = 0;
  double c = 0;
};

struct TWOptions {
  double eta_span = 400.0;  // integrate eta in [-eta_span, eta_span]
  double max_dS = 1e-3;     // per-step saturation change cap
  double end_tol = 1e-6;    // stop once within this of an end state
  double max_deta = 1.0;    // step ceiling in the flat tails
  double min_deta = 1e-12;  // below this the problem is declared stiff
  double S_at_zero = std::numeric_limits<double>::quiet_NaN();  // default: mid-saturation
};

// Integrates D(S) S' = F(S) with D = -h(S) dpc/dS and
// F(S) = (S_l - S)(c(S_l,S_r) - c(S_l,S)), normalized by S(0) at the
// mid-saturation. Fails with NotAdmissibleError when F changes sign strictly
// between the end states (no heteroclinic connection exists).
TWProfile integrate_profile(const FluxModel& m, const CapillaryCurve& curve, double S_l,
                            double S_r, const TWOptions& opt = {});

// For a candidate zero-speed shock (equal fluxes), confirms that no smooth
// connection exists: the flux must exceed the common end value strictly
// between the states, so the only bounded profile is the two-plateau jump.
bool stationary_profile_check(const FluxModel& m, double S_l, double S_r);

}  // namespace hystbl
