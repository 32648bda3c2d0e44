#include "hystbl/travelling_wave.hpp"

#include <algorithm>
#include <cmath>

#include "hystbl/waves.hpp"

namespace hystbl {

namespace {

constexpr double kDegenerate = 1e-12;

struct Rhs {
  const FluxModel& m;
  const CapillaryCurve& curve;
  double S_l, c;
  double lo, hi;  // clamp range for intermediate stage values

  double operator()(double S) const {
    S = std::clamp(S, lo, hi);
    const double D = -m.h(S) * curve.dpc(S);
    // (S_l - S)(c - c(S_l, S)) expanded so the end states stay finite
    const double F = c * (S_l - S) - (m.h(S_l) - m.h(S));
    return F / D;
  }
};

}  // namespace

TWProfile integrate_profile(const FluxModel& m, const CapillaryCurve& curve, double S_l,
                            double S_r, const TWOptions& opt) {
  if (!(S_l > 0.0 && S_l < 1.0 && S_r > 0.0 && S_r < 1.0))
    throw DomainError("integrate_profile: end states outside (0,1)");
  TWProfile prof;
  prof.S_l = S_l;
  prof.S_r = S_r;
  if (std::abs(S_l - S_r) <= kDegenerate) {
    prof.c = 0.0;
    const double p = curve.pc(S_l);
    prof.samples = {{-opt.eta_span, S_l, p}, {0.0, S_l, p}, {opt.eta_span, S_l, p}};
    return prof;
  }
  const double c = rh_speed(m, S_l, S_r);
  prof.c = c;

  const double lo = std::min(S_l, S_r);
  const double hi = std::max(S_l, S_r);
  // F must keep one sign strictly between the end states, negative when the
  // profile falls from S_l to S_r and positive when it rises.
  const double want = S_l > S_r ? -1.0 : 1.0;
  const int n_check = 2000;
  for (int i = 1; i < n_check; ++i) {
    const double s = lo + (hi - lo) * static_cast<double>(i) / n_check;
    const double F = c * (S_l - s) - (m.h(S_l) - m.h(s));
    if (F * want <= 0.0)
      throw NotAdmissibleError("integrate_profile: no monotone connection between end states");
  }

  const Rhs rhs{m, curve, S_l, c, lo, hi};
  double S0 = 0.5 * (S_l + S_r);
  if (!std::isnan(opt.S_at_zero)) {
    if (!(opt.S_at_zero > lo && opt.S_at_zero < hi))
      throw DomainError("integrate_profile: normalization value outside the end-state interval");
    S0 = opt.S_at_zero;
  }

  auto march = [&](double dir, double target) {
    std::vector<TWPoint> pts;
    double S = S0;
    double eta = 0.0;
    while (std::abs(S - target) > opt.end_tol && std::abs(eta) < opt.eta_span) {
      const double f0 = rhs(S);
      double deta = opt.max_deta;
      if (std::abs(f0) > 0.0) {
        // keep samples dense relative to the remaining gap so the recorded
        // tail is genuinely asymptotic, not one big closing step
        const double dS_cap =
            std::min(opt.max_dS, 0.3 * std::abs(S - target) + 0.25 * opt.end_tol);
        deta = std::min(opt.max_deta, dS_cap / std::abs(f0));
      }
      if (deta < opt.min_deta) throw StiffError("integrate_profile: step size collapsed");
      deta *= dir;
      const double k1 = rhs(S);
      const double k2 = rhs(S + 0.5 * deta * k1);
      const double k3 = rhs(S + 0.5 * deta * k2);
      const double k4 = rhs(S + deta * k3);
      S += deta / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      S = std::clamp(S, lo, hi);
      eta += deta;
      pts.push_back({eta, S, curve.pc(S)});
    }
    return pts;
  };

  std::vector<TWPoint> back = march(-1.0, S_l);
  std::vector<TWPoint> fwd = march(+1.0, S_r);

  prof.samples.reserve(back.size() + fwd.size() + 1);
  for (auto it = back.rbegin(); it != back.rend(); ++it) prof.samples.push_back(*it);
  prof.samples.push_back({0.0, S0, curve.pc(S0)});
  for (const auto& pt : fwd) prof.samples.push_back(pt);
  return prof;
}

bool stationary_profile_check(const FluxModel& m, double S_l, double S_r) {
  if (!(S_l > 0.0 && S_l < 1.0 && S_r > 0.0 && S_r < 1.0))
    throw DomainError("stationary_profile_check: end states outside (0,1)");
  const double h_l = m.h(S_l), h_r = m.h(S_r);
  if (std::abs(h_l - h_r) > 1e-9)
    throw DomainError("stationary_profile_check: fluxes differ, not a zero-speed pair");
  if (std::abs(S_l - S_r) <= kDegenerate) return true;
  const double h_ref = std::max(h_l, h_r);
  const double lo = std::min(S_l, S_r);
  const double hi = std::max(S_l, S_r);
  const int n = 10000;
  for (int i = 1; i < n; ++i) {
    const double s = lo + (hi - lo) * static_cast<double>(i) / n;
    if (!(m.h(s) > h_ref - 1e-12)) return false;
  }
  return true;
}

}  // namespace hystbl
