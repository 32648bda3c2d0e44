#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "hystbl/charpoints.hpp"
#include "hystbl/constitutive.hpp"

namespace hystbl {

enum class HystState { imbibition, drainage, undetermined, na };
const char* to_string(HystState s);

struct Plateau {
  double S = 0;
  double zeta_from = 0, zeta_to = 0;  // x/t range, may be +-infinity
};

struct Shock {
  double S_l = 0, S_r = 0;
  double c = 0;  // Rankine-Hugoniot speed
  HystState left_state = HystState::na;
  HystState right_state = HystState::na;
  std::optional<double> p_l, p_r;  // set for stationary shocks only
};

struct Rarefaction {
  double S_from = 0, S_to = 0;        // edge saturations, left to right
  double zeta_from = 0, zeta_to = 0;  // h'(S_from), h'(S_to)
};

using WaveElement = std::variant<Plateau, Shock, Rarefaction>;

enum class CaseLabel {
  I,              // top state on the increasing flux branch
  II,             // bottom state on the decreasing flux branch
  III_classical,  // data straddling the maximum, no hysteresis effect
  III_A,          // stationary shock between the star pair
  III_B,          // frozen left half
  mirrored_III_A,
  mirrored_III_B  // frozen right half
};
const char* to_string(CaseLabel c);

// The full self-similar Riemann solution: constant states, shocks and
// rarefactions ordered by nondecreasing speed, with at most one stationary
// element carrying distinct hysteretic side states.
struct WaveStructure {
  FluxModel flux;
  double S_T = 0, S_B = 0;
  CaseLabel label = CaseLabel::III_classical;
  std::vector<WaveElement> elements;
};

// Rankine-Hugoniot speed (h(S_l) - h(S_r)) / (S_l - S_r).
double rh_speed(const FluxModel& m, double S_l, double S_r);

// Chord admissibility: true iff c(S_l, S_r) < c(S_l, S) for every S strictly
// between the end states, checked on a uniform grid with slack 1e-12. This
// is exactly the sign condition for the viscous profile to connect the
// states in the right direction.
bool oleinik_admissible(const FluxModel& m, double S_l, double S_r);

enum class StationaryClass {
  drainage_imbibition,
  imbibition_drainage,
  undetermined_imbibition,
  imbibition_undetermined,
  undetermined_drainage,
  drainage_undetermined,
  undetermined_undetermined,
  trivial,
  inadmissible
};
const char* to_string(StationaryClass c);

struct StationaryTol {
  double h = 1e-9;     // flux continuity across the shock
  double p = 1e-9;     // pressure continuity and curve membership
  double s = 1e-9;     // saturation range slack
  double star = 1e-6;  // match tolerance against the star pair
};

// Classifies a candidate zero-speed discontinuity against the complete list
// of admissible stationary shocks. Both fluxes and both pressures must
// match; the hysteretic state of each side follows from where its pressure
// sits relative to the curve pair. Rows are tested most-specific first, so
// states on a curve boundary classify as that curve rather than as
// undetermined.
StationaryClass stationary_admissible(const FluxModel& m, const HysteresisCurves& hc,
                                      const CharacteristicPoints& pts, double S_l, double p_l,
                                      double S_r, double p_r, const StationaryTol& tol = {});

// Convenience overload that computes the characteristic points first.
StationaryClass stationary_admissible(const FluxModel& m, const HysteresisCurves& hc, double S_l,
                                      double p_l, double S_r, double p_r,
                                      const StationaryTol& tol = {});

// Entropy solution of the Riemann problem for the equilibrium (single-curve)
// capillary pressure model.
WaveStructure solve_riemann_classical(const FluxModel& m, double S_T, double S_B);

// Entropy solution under play-type hysteresis. Coincides with the classical
// solution unless the data straddle the flux maximum, in which case a
// stationary shock (or a frozen half) appears at x = 0.
WaveStructure solve_riemann_hysteretic(const FluxModel& m, const HysteresisCurves& hc, double S_T,
                                       double S_B);

// Pointwise evaluation; on a shock line the left value is returned.
double eval_solution(const WaveStructure& w, double x, double t);

// Profile sampling; evaluation is pure, so the parallel path is safe.
std::vector<double> sample_solution(const WaveStructure& w, std::span<const double> xs, double t,
                                    bool parallel = false);

struct ShockCheck {
  double S_l = 0, S_r = 0, c = 0;
  double rh_residual = 0;
  double oleinik_margin = 0;  // min over the grid; moving shocks only
  bool stationary = false;
  double h_jump = 0, p_jump = 0;  // stationary shocks only
};

struct RarefactionCheck {
  double S_from = 0, S_to = 0;
  double max_slope_residual = 0;  // max |h'(r(zeta)) - zeta| over samples
};

struct WeakSolutionReport {
  std::vector<ShockCheck> shocks;
  std::vector<RarefactionCheck> rarefactions;
  double max_order_violation = 0;     // negative speed gaps between elements
  double max_adjacency_mismatch = 0;  // edge saturation mismatches
  bool passes(double tol = 1e-9, double margin_slack = 1e-12) const;
};

// Re-derives every jump and slope condition on an assembled structure.
WeakSolutionReport weak_solution_check(const WaveStructure& w);

}  // namespace hystbl
