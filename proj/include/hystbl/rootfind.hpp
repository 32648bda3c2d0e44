#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "hystbl/errors.hpp"

namespace hystbl {

struct BisectOptions {
  int max_iter = 200;
  double x_tol = 0.0;  // stop when interval width <= x_tol
  double f_tol = 0.0;  // stop when |f(mid)| <= f_tol
};

// Bracketing bisection. Requires f(lo) and f(hi) of opposite sign (or zero).
// Returns the midpoint of the final interval.
template <class F>
double bisect(F&& f, double lo, double hi, BisectOptions opt = {}) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw NoSignChangeError("bisect: endpoints do not bracket a root");
  for (int it = 0; it < opt.max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) return mid;  // interval at machine width
    const double fm = f(mid);
    if (fm == 0.0 || (opt.f_tol > 0.0 && std::abs(fm) <= opt.f_tol)) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (opt.x_tol > 0.0 && hi - lo <= opt.x_tol) return 0.5 * (lo + hi);
  }
  return 0.5 * (lo + hi);
}

// Scans [lo, hi] on n uniform subintervals and returns the first one whose
// endpoint values change sign (product <= 0).
template <class F>
std::optional<std::pair<double, double>> scan_bracket(F&& f, double lo, double hi, int n = 10000) {
  double x0 = lo;
  double f0 = f(x0);
  if (f0 == 0.0) return std::pair{x0, x0};
  for (int i = 1; i <= n; ++i) {
    const double x1 = lo + (hi - lo) * static_cast<double>(i) / n;
    const double f1 = f(x1);
    if ((f0 > 0.0) != (f1 > 0.0) || f1 == 0.0) return std::pair{x0, x1};
    x0 = x1;
    f0 = f1;
  }
  return std::nullopt;
}

// Sign scan followed by bisection; the workhorse for every scalar root here.
template <class F>
double find_root_scan(F&& f, double lo, double hi, int scan_points = 10000, BisectOptions opt = {}) {
  auto bracket = scan_bracket(f, lo, hi, scan_points);
  if (!bracket) throw NoSignChangeError("find_root_scan: no sign change in scan interval");
  if (bracket->first == bracket->second) return bracket->first;
  return bisect(f, bracket->first, bracket->second, opt);
}

}  // namespace hystbl
