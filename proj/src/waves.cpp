#include "hystbl/waves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hystbl/parallel.hpp"
#include "hystbl/rootfind.hpp"

namespace hystbl {

namespace {
constexpr double kDegenerate = 1e-12;
constexpr double kBoundaryTol = 1e-9;  // case-dispatch tolerance
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kOleinikGrid = 10000;
constexpr double kOleinikSlack = 1e-12;
}  // namespace

const char* to_string(HystState s) {
  switch (s) {
    case HystState::imbibition: return "imbibition";
    case HystState::drainage: return "drainage";
    case HystState::undetermined: return "undetermined";
    case HystState::na: return "n/a";
  }
  return "?";
}

const char* to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::I: return "I";
    case CaseLabel::II: return "II";
    case CaseLabel::III_classical: return "III-classical";
    case CaseLabel::III_A: return "III-A";
    case CaseLabel::III_B: return "III-B";
    case CaseLabel::mirrored_III_A: return "mirrored-III-A";
    case CaseLabel::mirrored_III_B: return "mirrored-III-B";
  }
  return "?";
}

const char* to_string(StationaryClass c) {
  switch (c) {
    case StationaryClass::drainage_imbibition: return "drainage-imbibition";
    case StationaryClass::imbibition_drainage: return "imbibition-drainage";
    case StationaryClass::undetermined_imbibition: return "undetermined-imbibition";
    case StationaryClass::imbibition_undetermined: return "imbibition-undetermined";
    case StationaryClass::undetermined_drainage: return "undetermined-drainage";
    case StationaryClass::drainage_undetermined: return "drainage-undetermined";
    case StationaryClass::undetermined_undetermined: return "undetermined-undetermined";
    case StationaryClass::trivial: return "trivial";
    case StationaryClass::inadmissible: return "inadmissible";
  }
  return "?";
}

double rh_speed(const FluxModel& m, double S_l, double S_r) {
  if (std::abs(S_l - S_r) < kDegenerate)
    throw DomainError("rh_speed: degenerate shock, end states coincide");
  return (m.h(S_l) - m.h(S_r)) / (S_l - S_r);
}

namespace {

// Minimum of c(S_l, S) - c(S_l, S_r) over a uniform interior grid. A
// nonnegative minimum (up to slack) means the chord never undercuts the
// intermediate chords, which is the profile-existence condition for both
// jump directions.
double oleinik_margin(const FluxModel& m, double S_l, double S_r, int grid = kOleinikGrid) {
  const double c = rh_speed(m, S_l, S_r);
  const double lo = std::min(S_l, S_r);
  const double hi = std::max(S_l, S_r);
  double margin = kInf;
  for (int i = 1; i < grid; ++i) {
    const double s = lo + (hi - lo) * static_cast<double>(i) / grid;
    margin = std::min(margin, (m.h(S_l) - m.h(s)) / (S_l - s) - c);
  }
  return margin;
}

}  // namespace

bool oleinik_admissible(const FluxModel& m, double S_l, double S_r) {
  if (S_l < 0.0 || S_l > 1.0 || S_r < 0.0 || S_r > 1.0)
    throw DomainError("oleinik_admissible: saturations outside [0,1]");
  return oleinik_margin(m, S_l, S_r) >= -kOleinikSlack;
}

namespace {

struct RowTests {
  const HysteresisCurves& hc;
  const StationaryTol& tol;
  bool on_imb(double S, double p) const { return std::abs(p - hc.imbibition.pc(S)) <= tol.p; }
  bool on_drn(double S, double p) const { return std::abs(p - hc.drainage.pc(S)) <= tol.p; }
  bool in_band(double S, double p) const {
    return p >= hc.imbibition.pc(S) - tol.p && p <= hc.drainage.pc(S) + tol.p;
  }
  bool in_range(double x, double lo, double hi) const {
    return x >= lo - tol.s && x <= hi + tol.s;
  }
  bool near_star(double x, double star) const { return std::abs(x - star) <= tol.star; }
};

}  // namespace

StationaryClass stationary_admissible(const FluxModel& m, const HysteresisCurves& hc,
                                      const CharacteristicPoints& pts, double S_l, double p_l,
                                      double S_r, double p_r, const StationaryTol& tol) {
  if (!(S_l > 0.0 && S_l < 1.0 && S_r > 0.0 && S_r < 1.0))
    throw DomainError("stationary_admissible: saturations outside (0,1)");
  const RowTests rt{hc, tol};
  if (std::abs(S_l - S_r) <= tol.s && std::abs(p_l - p_r) <= tol.p && rt.in_band(S_l, p_l))
    return StationaryClass::trivial;
  if (std::abs(m.h(S_l) - m.h(S_r)) > tol.h) return StationaryClass::inadmissible;
  if (std::abs(p_l - p_r) > tol.p) return StationaryClass::inadmissible;

  const double lo = pts.S_star, hi = pts.S_star_up, SM = pts.S_M;
  if (rt.on_drn(S_l, p_l) && rt.on_imb(S_r, p_r) && rt.near_star(S_l, hi) && rt.near_star(S_r, lo))
    return StationaryClass::drainage_imbibition;
  if (rt.on_imb(S_l, p_l) && rt.on_drn(S_r, p_r) && rt.near_star(S_l, lo) && rt.near_star(S_r, hi))
    return StationaryClass::imbibition_drainage;
  if (rt.in_band(S_l, p_l) && rt.on_imb(S_r, p_r) && rt.in_range(S_l, SM, hi) &&
      rt.in_range(S_r, lo, SM))
    return StationaryClass::undetermined_imbibition;
  if (rt.on_imb(S_l, p_l) && rt.in_band(S_r, p_r) && rt.in_range(S_l, lo, SM) &&
      rt.in_range(S_r, SM, hi))
    return StationaryClass::imbibition_undetermined;
  if (rt.in_band(S_l, p_l) && rt.on_drn(S_r, p_r) && rt.in_range(S_l, lo, SM) &&
      rt.in_range(S_r, SM, hi))
    return StationaryClass::undetermined_drainage;
  if (rt.on_drn(S_l, p_l) && rt.in_band(S_r, p_r) && rt.in_range(S_l, SM, hi) &&
      rt.in_range(S_r, lo, SM))
    return StationaryClass::drainage_undetermined;
  if (rt.in_band(S_l, p_l) && rt.in_band(S_r, p_r) && rt.in_range(S_l, lo, hi) &&
      rt.in_range(S_r, lo, hi))
    return StationaryClass::undetermined_undetermined;
  return StationaryClass::inadmissible;
}

StationaryClass stationary_admissible(const FluxModel& m, const HysteresisCurves& hc, double S_l,
                                      double p_l, double S_r, double p_r,
                                      const StationaryTol& tol) {
  return stationary_admissible(m, hc, characteristic_points(m, hc), S_l, p_l, S_r, p_r, tol);
}

namespace {

// Builds the ordered element list left to right, inserting constant plateaus
// wherever consecutive wave speeds leave a gap.
class Assembler {
 public:
  Assembler(const FluxModel& m, double S_left) : m_(m), cur_S_(S_left) {}

  void add_shock(double S_to) {
    const double c = rh_speed(m_, cur_S_, S_to);
    plateau_up_to(c);
    Shock s;
    s.S_l = cur_S_;
    s.S_r = S_to;
    s.c = c;
    s.left_state = s.right_state = c > 0.0 ? HystState::imbibition : HystState::drainage;
    elems_.push_back(s);
    last_edge_ = c;
    cur_S_ = S_to;
  }

  void add_stationary(double S_to, double p_l, double p_r, HystState left, HystState right) {
    plateau_up_to(0.0);
    Shock s;
    s.S_l = cur_S_;
    s.S_r = S_to;
    s.c = 0.0;
    s.left_state = left;
    s.right_state = right;
    s.p_l = p_l;
    s.p_r = p_r;
    elems_.push_back(s);
    last_edge_ = 0.0;
    cur_S_ = S_to;
  }

  void add_rarefaction(double S_to) {
    const double zf = m_.dh(cur_S_);
    const double zt = m_.dh(S_to);
    plateau_up_to(zf);
    elems_.push_back(Rarefaction{cur_S_, S_to, zf, zt});
    last_edge_ = zt;
    cur_S_ = S_to;
  }

  std::vector<WaveElement> finish() {
    elems_.push_back(Plateau{cur_S_, last_edge_, kInf});
    return std::move(elems_);
  }

  double current() const { return cur_S_; }

 private:
  void plateau_up_to(double speed) {
    if (elems_.empty() || speed > last_edge_ + kDegenerate)
      elems_.push_back(Plateau{cur_S_, last_edge_, speed});
    last_edge_ = speed;
  }

  const FluxModel& m_;
  std::vector<WaveElement> elems_;
  double cur_S_;
  double last_edge_ = -kInf;
};

// Right-moving (imbibition) waves joining a left state S_l <= S_M down to
// S_B: either one admissible shock, or a rarefaction ending in the tangent
// shock.
void lower_half(Assembler& a, const FluxModel& m, const Landmarks& lm, double S_l, double S_B) {
  const double Sbar = S_B < lm.S_1 ? tangent_point(m, lm, S_B, TangentSide::bottom) : S_B;
  if (S_l <= Sbar + kBoundaryTol) {
    a.add_shock(S_B);
    return;
  }
  a.add_rarefaction(Sbar);
  if (Sbar > S_B + kBoundaryTol) a.add_shock(S_B);
}

// Left-moving (drainage) waves joining S_T down to a right state S_r >= S_M.
void upper_half(Assembler& a, const FluxModel& m, const Landmarks& lm, double S_T, double S_r) {
  const double Sbar = S_T > lm.S_2 ? tangent_point(m, lm, S_T, TangentSide::top) : S_T;
  if (S_r >= Sbar - kBoundaryTol) {
    a.add_shock(S_r);
    return;
  }
  if (Sbar < S_T - kBoundaryTol) a.add_shock(Sbar);
  a.add_rarefaction(S_r);
}

void check_riemann_data(double S_T, double S_B) {
  if (!(0.0 < S_B) || !(S_B < S_T) || !(S_T < 1.0))
    throw DomainError("Riemann data must satisfy 0 < S_B < S_T < 1");
}

WaveStructure classical_impl(const FluxModel& m, const Landmarks& lm, double S_T, double S_B) {
  WaveStructure w{m, S_T, S_B, CaseLabel::III_classical, {}};
  Assembler a(m, S_T);
  if (S_T <= lm.S_M + kBoundaryTol) {
    w.label = CaseLabel::I;
    lower_half(a, m, lm, S_T, S_B);
  } else if (S_B >= lm.S_M - kBoundaryTol) {
    w.label = CaseLabel::II;
    upper_half(a, m, lm, S_T, S_B);
  } else {
    // Fan through the flux maximum, split at S_M so each rarefaction stays
    // on one monotone branch of h'.
    w.label = CaseLabel::III_classical;
    upper_half(a, m, lm, S_T, lm.S_M);
    lower_half(a, m, lm, lm.S_M, S_B);
  }
  w.elements = a.finish();
  return w;
}

void verify_structure(const WaveStructure& w) {
  const WeakSolutionReport rep = weak_solution_check(w);
  if (!rep.passes(1e-9))
    throw ConvergenceError("riemann solver: assembled element failed its admissibility check");
}

}  // namespace

WaveStructure solve_riemann_classical(const FluxModel& m, double S_T, double S_B) {
  check_riemann_data(S_T, S_B);
  const Landmarks lm = find_landmarks(m);
  WaveStructure w = classical_impl(m, lm, S_T, S_B);
  verify_structure(w);
  return w;
}

WaveStructure solve_riemann_hysteretic(const FluxModel& m, const HysteresisCurves& hc, double S_T,
                                       double S_B) {
  check_riemann_data(S_T, S_B);
  const Landmarks lm = find_landmarks(m);
  if (S_T <= lm.S_M + kBoundaryTol || S_B >= lm.S_M - kBoundaryTol) {
    // Single-family data: the whole solution lies on one curve and the
    // hysteretic and equilibrium solutions coincide.
    WaveStructure w = classical_impl(m, lm, S_T, S_B);
    verify_structure(w);
    return w;
  }
  const auto [S_lo, S_hi] = find_star_pair(m, lm, hc);
  if (S_hi - S_lo <= kBoundaryTol) {
    // Coincident curves: the stationary jump has zero width.
    WaveStructure w = classical_impl(m, lm, S_T, S_B);
    verify_structure(w);
    return w;
  }

  WaveStructure w{m, S_T, S_B, CaseLabel::III_A, {}};
  Assembler a(m, S_T);
  const double hT = m.h(S_T), hB = m.h(S_B);
  if (S_T >= S_hi - kBoundaryTol && S_B <= S_lo + kBoundaryTol) {
    // Drainage half on the left, imbibition half on the right, joined by the
    // stationary shock between the star pair.
    w.label = hT >= hB ? CaseLabel::III_A : CaseLabel::mirrored_III_A;
    if (S_T > S_hi + kBoundaryTol) upper_half(a, m, lm, S_T, S_hi);
    a.add_stationary(S_lo, hc.drainage.pc(S_hi), hc.imbibition.pc(S_lo), HystState::drainage,
                     HystState::imbibition);
    if (S_B < S_lo - kBoundaryTol) lower_half(a, m, lm, S_lo, S_B);
  } else if (S_T < S_hi) {
    const double S_chk = check_S_T(m, lm, S_T);
    if (S_B <= S_chk + kBoundaryTol) {
      // Left half frozen at S_T; the left state of the stationary shock
      // stays strictly inside the band (undetermined).
      w.label = CaseLabel::III_B;
      const double p0 = hc.imbibition.pc(S_chk);
      a.add_stationary(S_chk, p0, p0, HystState::undetermined, HystState::imbibition);
      if (S_B < S_chk - kBoundaryTol) lower_half(a, m, lm, S_chk, S_B);
    } else {
      // Right half frozen at S_B; mirror image of the frozen-left case.
      w.label = CaseLabel::mirrored_III_B;
      const double S_hat = hat_S(m, lm, S_B);
      const double p0 = hc.drainage.pc(S_hat);
      if (S_T > S_hat + kBoundaryTol) upper_half(a, m, lm, S_T, S_hat);
      a.add_stationary(S_B, p0, p0, HystState::drainage, HystState::undetermined);
    }
  } else {
    // S_T >= S_hi but S_B > S_lo: the bottom state carries the larger flux,
    // so the right half freezes.
    w.label = CaseLabel::mirrored_III_B;
    const double S_hat = hat_S(m, lm, S_B);
    const double p0 = hc.drainage.pc(S_hat);
    if (S_T > S_hat + kBoundaryTol) upper_half(a, m, lm, S_T, S_hat);
    a.add_stationary(S_B, p0, p0, HystState::drainage, HystState::undetermined);
  }
  w.elements = a.finish();
  verify_structure(w);
  return w;
}

namespace {

double invert_rarefaction(const FluxModel& m, const Rarefaction& r, double zeta) {
  if (zeta <= std::min(r.zeta_from, r.zeta_to)) return r.S_from;
  if (zeta >= std::max(r.zeta_from, r.zeta_to)) return r.S_to;
  const double lo = std::min(r.S_from, r.S_to);
  const double hi = std::max(r.S_from, r.S_to);
  // h' is strictly monotone on the element's saturation interval.
  return bisect([&](double s) { return m.dh(s) - zeta; }, lo, hi, {200, 0.0, 0.0});
}

}  // namespace

double eval_solution(const WaveStructure& w, double x, double t) {
  if (!(t > 0.0)) throw DomainError("eval_solution: time must be positive");
  const double zeta = x / t;
  for (const auto& e : w.elements) {
    if (const auto* p = std::get_if<Plateau>(&e)) {
      if (zeta <= p->zeta_to) return p->S;
    } else if (const auto* s = std::get_if<Shock>(&e)) {
      if (zeta <= s->c) return s->S_l;
    } else {
      const auto& r = std::get<Rarefaction>(e);
      if (zeta <= r.zeta_to) return invert_rarefaction(w.flux, r, zeta);
    }
  }
  return w.S_B;
}

std::vector<double> sample_solution(const WaveStructure& w, std::span<const double> xs, double t,
                                    bool parallel) {
  std::vector<double> out(xs.size());
  parallel_for(xs.size(), parallel, [&](std::size_t i) { out[i] = eval_solution(w, xs[i], t); });
  return out;
}

bool WeakSolutionReport::passes(double tol, double margin_slack) const {
  for (const auto& s : shocks) {
    if (s.rh_residual > tol) return false;
    if (s.stationary) {
      if (s.h_jump > tol || s.p_jump > tol) return false;
    } else if (s.oleinik_margin < -margin_slack) {
      return false;
    }
  }
  for (const auto& r : rarefactions)
    if (r.max_slope_residual > tol) return false;
  return max_order_violation <= tol && max_adjacency_mismatch <= tol;
}

WeakSolutionReport weak_solution_check(const WaveStructure& w) {
  const FluxModel& m = w.flux;
  WeakSolutionReport rep;
  double prev_edge = -kInf;
  double prev_S = std::numeric_limits<double>::quiet_NaN();
  for (const auto& e : w.elements) {
    double left_S = 0, right_S = 0, from = 0, to = 0;
    if (const auto* p = std::get_if<Plateau>(&e)) {
      left_S = right_S = p->S;
      from = p->zeta_from;
      to = p->zeta_to;
    } else if (const auto* s = std::get_if<Shock>(&e)) {
      left_S = s->S_l;
      right_S = s->S_r;
      from = to = s->c;
      ShockCheck chk;
      chk.S_l = s->S_l;
      chk.S_r = s->S_r;
      chk.c = s->c;
      chk.rh_residual = std::abs((m.h(s->S_l) - m.h(s->S_r)) - s->c * (s->S_l - s->S_r));
      chk.stationary = s->c == 0.0 && (s->p_l || s->p_r);
      if (chk.stationary) {
        chk.h_jump = std::abs(m.h(s->S_l) - m.h(s->S_r));
        chk.p_jump = std::abs(s->p_l.value_or(0.0) - s->p_r.value_or(0.0));
      } else {
        chk.oleinik_margin = oleinik_margin(m, s->S_l, s->S_r);
      }
      rep.shocks.push_back(chk);
    } else {
      const auto& r = std::get<Rarefaction>(e);
      left_S = r.S_from;
      right_S = r.S_to;
      from = r.zeta_from;
      to = r.zeta_to;
      RarefactionCheck chk{r.S_from, r.S_to, 0.0};
      const int n = 1000;
      for (int i = 0; i <= n; ++i) {
        const double zeta = r.zeta_from + (r.zeta_to - r.zeta_from) * static_cast<double>(i) / n;
        const double s = invert_rarefaction(m, r, zeta);
        chk.max_slope_residual = std::max(chk.max_slope_residual, std::abs(m.dh(s) - zeta));
      }
      rep.rarefactions.push_back(chk);
    }
    rep.max_order_violation = std::max(rep.max_order_violation, prev_edge - from);
    if (!std::isnan(prev_S))
      rep.max_adjacency_mismatch = std::max(rep.max_adjacency_mismatch, std::abs(prev_S - left_S));
    prev_edge = to;
    prev_S = right_S;
  }
  return rep;
}

}  // namespace hystbl
