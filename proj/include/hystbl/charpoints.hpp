#pragma once

#include <utility>

#include "hystbl/constitutive.hpp"

namespace hystbl {

// Flux landmarks: the maximum S_M and the two inflection points S_1 < S_M < S_2.
struct Landmarks {
  double S_M = 0;
  double S_1 = 0;
  double S_2 = 0;
};

// Every saturation the solution constructions dispatch on, bundled with the
// root-finding tolerance used to compute them.
struct CharacteristicPoints {
  double S_M = 0, S_1 = 0, S_2 = 0;
  double S_star = 0;     // lower member of the stationary pair, in (0, S_M]
  double S_star_up = 0;  // upper member, hat_S(S_star), in [S_M, 1)
  double tol = 0;
};

// Tangent and conjugate saturations tied to one Riemann data pair.
struct ProblemPoints {
  double S_bar_B = 0;
  double S_bar_T = 0;
  double S_check_T = 0;
  bool has_check_T = false;      // defined only when S_T > S_M
  bool bar_B_collapsed = false;  // S_bar_B == S_B (anchor already past S_1)
  bool bar_T_collapsed = false;
};

// Roots of h' and h'' by sign scan plus bisection; residuals below 1e-12.
Landmarks find_landmarks(const FluxModel& m);

// Conjugate saturation on the decreasing flux branch: the unique
// sigma in [S_M, 1] with h(sigma) = h(s), for s in [0, S_M].
double hat_S(const FluxModel& m, const Landmarks& lm, double s);

// Inverse of hat_S: the unique s in (0, S_M) with h(s) = h(S_T),
// for S_T in (S_M, 1).
double check_S_T(const FluxModel& m, const Landmarks& lm, double S_T);

// The unique pair (S_star, S_star_up) with equal flux and matched pressures,
//   h(S_star) = h(S_star_up),  p_i(S_star) = p_d(S_star_up).
// Found by bisection on g(s) = p_d(hat_S(s)) - p_i(s), which is strictly
// increasing on (0, S_M). Coincident curves give (S_M, S_M).
std::pair<double, double> find_star_pair(const FluxModel& m, const Landmarks& lm,
                                         const HysteresisCurves& hc);

enum class TangentSide { bottom, top };

// Tangent construction for the Riemann wave fans. For side bottom with
// anchor below S_1, returns the unique sigma in (anchor, S_M) where the
// chord from (anchor, h(anchor)) is tangent to the graph of h; collapses to
// the anchor itself once the anchor passes the inflection point. Mirrored
// for side top. Anchors on the wrong side of S_M are rejected.
double tangent_point(const FluxModel& m, const Landmarks& lm, double anchor, TangentSide side);

CharacteristicPoints characteristic_points(const FluxModel& m, const HysteresisCurves& hc);
ProblemPoints problem_points(const FluxModel& m, const Landmarks& lm, double S_T, double S_B);

}  // namespace hystbl
