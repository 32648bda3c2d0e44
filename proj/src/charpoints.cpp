#include "hystbl/charpoints.hpp"

#include <cmath>

#include "hystbl/rootfind.hpp"

namespace hystbl {

namespace {
constexpr double kGuard = 1e-9;
constexpr double kSlack = 1e-9;
constexpr int kScanPoints = 10000;
constexpr double kHResidualTol = 1e-12;
constexpr double kPResidualTol = 1e-10;
}  // namespace

Landmarks find_landmarks(const FluxModel& m) {
  Landmarks lm;
  try {
    lm.S_M = find_root_scan([&](double s) { return m.dh(s); }, kGuard, 1.0 - kGuard, kScanPoints);
    lm.S_1 = find_root_scan([&](double s) { return m.d2h(s); }, kGuard, lm.S_M, kScanPoints);
    lm.S_2 = find_root_scan([&](double s) { return m.d2h(s); }, lm.S_M, 1.0 - kGuard, kScanPoints);
  } catch (const NoSignChangeError&) {
    throw ConvergenceError("find_landmarks: flux is not unimodal with two inflection points");
  }
  if (std::abs(m.dh(lm.S_M)) > kHResidualTol || std::abs(m.d2h(lm.S_1)) > kHResidualTol ||
      std::abs(m.d2h(lm.S_2)) > kHResidualTol)
    throw ConvergenceError("find_landmarks: landmark residual above tolerance");
  return lm;
}

double hat_S(const FluxModel& m, const Landmarks& lm, double s) {
  if (s < -kSlack || s > lm.S_M + kSlack)
    throw DomainError("hat_S: argument outside [0, S_M]");
  if (s <= 0.0) return 1.0;
  if (s >= lm.S_M) return lm.S_M;
  const double target = m.h(s);
  // h decreases from its maximum to 0 on [S_M, 1]. Bisect to machine width:
  // an h-space stopping rule would leave the root loose where h is flat.
  return bisect([&](double x) { return m.h(x) - target; }, lm.S_M, 1.0, {200, 0.0, 0.0});
}

double check_S_T(const FluxModel& m, const Landmarks& lm, double S_T) {
  if (S_T < lm.S_M - kSlack || S_T > 1.0 - kGuard)
    throw DomainError("check_S_T: argument outside (S_M, 1)");
  if (S_T <= lm.S_M) return lm.S_M;
  const double target = m.h(S_T);
  return bisect([&](double x) { return m.h(x) - target; }, 0.0, lm.S_M, {200, 0.0, 0.0});
}

std::pair<double, double> find_star_pair(const FluxModel& m, const Landmarks& lm,
                                         const HysteresisCurves& hc) {
  // g is strictly increasing, negative near 0 and nonnegative at S_M; its
  // root pins the lower member of the pair.
  auto g = [&](double s) {
    return hc.drainage.pc(hat_S(m, lm, s)) - hc.imbibition.pc(s);
  };
  if (g(kGuard) >= 0.0)
    throw NoSignChangeError("find_star_pair: degenerate hysteresis, no pressure crossing");
  double S_star;
  try {
    S_star = find_root_scan(g, kGuard, lm.S_M, kScanPoints, {200, 0.0, 0.1 * kPResidualTol});
  } catch (const NoSignChangeError&) {
    // Coincident curves: the gap closes exactly at S_M and the scan grid
    // never hits that point bitwise.
    if (std::abs(g(lm.S_M)) <= kPResidualTol) return {lm.S_M, lm.S_M};
    throw;
  }
  const double S_star_up = hat_S(m, lm, S_star);
  if (std::abs(m.h(S_star) - m.h(S_star_up)) > kHResidualTol ||
      std::abs(hc.imbibition.pc(S_star) - hc.drainage.pc(S_star_up)) > kPResidualTol)
    throw ConvergenceError("find_star_pair: residual above tolerance");
  return {S_star, S_star_up};
}

double tangent_point(const FluxModel& m, const Landmarks& lm, double anchor, TangentSide side) {
  // Chord-slope-equals-derivative residual; vanishes at the anchor itself
  // and at the tangency point, so the scan must start strictly inside.
  auto r = [&](double s) { return m.dh(s) * (s - anchor) - (m.h(s) - m.h(anchor)); };
  // Bisection between a point where r > 0 (next to the anchor) and one
  // where r <= 0.
  auto polish = [&](double pos, double neg) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (pos + neg);
      if (mid == pos || mid == neg) break;
      (r(mid) > 0.0 ? pos : neg) = mid;
    }
    return 0.5 * (pos + neg);
  };
  if (side == TangentSide::bottom) {
    if (anchor >= lm.S_M - kSlack)
      throw DomainError("tangent_point: bottom anchor must lie below S_M");
    if (anchor <= 0.0) throw DomainError("tangent_point: anchor outside (0,1)");
    if (anchor >= lm.S_1) return anchor;
    const double lo = anchor + (lm.S_M - anchor) / kScanPoints;
    if (r(lo) <= 0.0) return polish(anchor, lo);
    return find_root_scan(r, lo, lm.S_M, kScanPoints, {200, 0.0, 0.0});
  }
  if (anchor <= lm.S_M + kSlack)
    throw DomainError("tangent_point: top anchor must lie above S_M");
  if (anchor >= 1.0) throw DomainError("tangent_point: anchor outside (0,1)");
  if (anchor <= lm.S_2) return anchor;
  const double hi = anchor - (anchor - lm.S_M) / kScanPoints;
  if (r(hi) <= 0.0) return polish(anchor, hi);
  return find_root_scan(r, lm.S_M, hi, kScanPoints, {200, 0.0, 0.0});
}

CharacteristicPoints characteristic_points(const FluxModel& m, const HysteresisCurves& hc) {
  const Landmarks lm = find_landmarks(m);
  const auto [lo, hi] = find_star_pair(m, lm, hc);
  return {lm.S_M, lm.S_1, lm.S_2, lo, hi, kPResidualTol};
}

ProblemPoints problem_points(const FluxModel& m, const Landmarks& lm, double S_T, double S_B) {
  if (!(0.0 < S_B) || !(S_B < S_T) || !(S_T < 1.0))
    throw DomainError("problem_points: Riemann data must satisfy 0 < S_B < S_T < 1");
  ProblemPoints pp;
  pp.S_bar_B = S_B < lm.S_M - kSlack ? tangent_point(m, lm, S_B, TangentSide::bottom) : S_B;
  pp.bar_B_collapsed = pp.S_bar_B == S_B;
  pp.S_bar_T = S_T > lm.S_M + kSlack ? tangent_point(m, lm, S_T, TangentSide::top) : S_T;
  pp.bar_T_collapsed = pp.S_bar_T == S_T;
  if (S_T > lm.S_M) {
    pp.S_check_T = check_S_T(m, lm, S_T);
    pp.has_check_T = true;
  }
  return pp;
}

}  // namespace hystbl
