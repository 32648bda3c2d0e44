#include "hystbl/pde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hystbl/parallel.hpp"

namespace hystbl {

namespace {
constexpr double kUpwindTol = 1e-12;
constexpr double kClampWarn = 1e-8;

enum : unsigned char { kBelowBand = 0, kInBand = 1, kAboveBand = 2 };
enum : unsigned char { kLeft = 0, kRight = 1, kCentered = 2 };
}  // namespace

void SimConfig::validate() const {
  const double n_real = 2.0 * H / dx;
  const double n_round = std::round(n_real);
  if (!(H > 0.0) || !(dx > 0.0) || std::abs(n_real - n_round) > 1e-6 || n_round < 10)
    throw ConfigError("SimConfig: 2H/dx must be an integer >= 10");
  if (!(dt > 0.0)) throw ConfigError("SimConfig: dt must be positive");
  if (!(delta > 0.0)) throw ConfigError("SimConfig: delta must be positive");
  if (!(tau > 0.0)) throw ConfigError("SimConfig: tau must be positive");
  if (dt / tau > 0.1 + 1e-12)
    throw ConfigError("SimConfig: dt/tau must not exceed 0.1");
  if (!(0.0 < S_B && S_B <= S_T && S_T < 1.0))
    throw ConfigError("SimConfig: Riemann data must satisfy 0 < S_B <= S_T < 1");
  if (!(T_end >= 0.0)) throw ConfigError("SimConfig: T_end must be nonnegative");
  if (!(damping > 0.0 && damping <= 1.0))
    throw ConfigError("SimConfig: damping must lie in (0,1]");
  if (!(residual_tol > 0.0)) throw ConfigError("SimConfig: residual tolerance must be positive");
  if (max_iterations < 1) throw ConfigError("SimConfig: max_iterations must be >= 1");
  curves.validate();
}

std::size_t SimConfig::cells() const {
  return static_cast<std::size_t>(std::llround(2.0 * H / dx));
}

std::vector<double> cell_centers(const SimConfig& cfg) {
  const std::size_t n = cfg.cells();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -cfg.H + (static_cast<double>(i) + 0.5) * cfg.dx;
  return x;
}

double SimState::mass(double dx) const {
  double m = 0.0;
  for (double s : S) m += s;
  return m * dx;
}

SimState init_state(const SimConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.cells();
  SimState st;
  st.S.resize(n);
  st.p.resize(n);
  const double p_top = cfg.curves.drainage.pc(cfg.S_T);
  const double p_bot = cfg.curves.imbibition.pc(cfg.S_B);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -cfg.H + (static_cast<double>(i) + 0.5) * cfg.dx;
    if (x < 0.0) {
      st.S[i] = cfg.S_T;
      st.p[i] = p_top;
    } else {
      st.S[i] = cfg.S_B;
      st.p[i] = p_bot;
    }
  }
  st.left_flux = cfg.flux.h(cfg.S_T);
  st.right_flux = cfg.flux.h(cfg.S_B);
  return st;
}

namespace {

double play_rate(double p, double pci, double pcd, double tau) {
  if (p < pci) return (pci - p) / tau;
  if (p > pcd) return (pcd - p) / tau;
  return 0.0;
}

unsigned char band_branch(double p, double pci, double pcd) {
  if (p < pci) return kBelowBand;
  if (p > pcd) return kAboveBand;
  return kInBand;
}

// Tridiagonal solve (Thomas); overwrites rhs with the solution.
void thomas(std::vector<double>& lower, std::vector<double>& diag, std::vector<double>& upper,
            std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(diag[i - 1]) < 1e-300)
      throw NonlinearSolveError("pressure solve: singular tridiagonal pivot");
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  if (std::abs(diag[n - 1]) < 1e-300)
    throw NonlinearSolveError("pressure solve: singular tridiagonal pivot");
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

}  // namespace

void step(SimState& st, const SimConfig& cfg) {
  const std::size_t n = st.S.size();
  const bool par = cfg.threads > 0;
  if (par) set_threads(cfg.threads);
  const double dx = cfg.dx, delta = cfg.delta, tau = cfg.tau;
  const double h_top = cfg.flux.h(cfg.S_T);
  const double h_bot = cfg.flux.h(cfg.S_B);
  const double p_bc = cfg.curves.imbibition.pc(cfg.S_B);

  auto& ws = st.ws;
  ws.h_cell.resize(n);
  ws.pci.resize(n);
  ws.pcd.resize(n);
  ws.hf.resize(n + 1);
  ws.w.resize(n + 1);
  ws.G.resize(n + 1);
  ws.R.resize(n);
  ws.dp.resize(n);
  ws.diag.resize(n);
  ws.lower.resize(n);
  ws.upper.resize(n);
  ws.rhs.resize(n);
  ws.branch.assign(n, kInBand);
  ws.upwind.assign(n + 1, kCentered);
  ws.branch_prev.assign(n, 255);
  ws.upwind_prev.assign(n + 1, 255);

  // Frozen-in-time coefficients for this step.
  parallel_for(n, par, [&](std::size_t i) {
    ws.h_cell[i] = cfg.flux.h(st.S[i]);
    ws.pci[i] = cfg.curves.imbibition.pc(st.S[i]);
    ws.pcd[i] = cfg.curves.drainage.pc(st.S[i]);
  });

  auto assemble = [&]() {
    // Face weights 1 + delta dp/dx with gravity-aligned upwinding of h;
    // ambiguous faces take the arithmetic mean.
    parallel_for(n + 1, par, [&](std::size_t k) {
      double grad, h_upl, h_upr;
      if (k == 0) {
        ws.w[k] = 0.0;
        ws.hf[k] = 0.0;
        ws.G[k] = h_top;  // prescribed total flux at the left face
        ws.upwind[k] = kCentered;
        return;
      }
      if (k == n) {
        grad = 2.0 * (p_bc - st.p[n - 1]) / dx;  // mirror ghost on the right
        h_upl = ws.h_cell[n - 1];
        h_upr = h_bot;
      } else {
        grad = (st.p[k] - st.p[k - 1]) / dx;
        h_upl = ws.h_cell[k - 1];
        h_upr = ws.h_cell[k];
      }
      const double w = 1.0 + delta * grad;
      unsigned char up = kCentered;
      double hf = 0.5 * (h_upl + h_upr);
      if (w > kUpwindTol) {
        up = kLeft;
        hf = h_upl;
      } else if (w < -kUpwindTol) {
        up = kRight;
        hf = h_upr;
      }
      ws.w[k] = w;
      ws.hf[k] = hf;
      ws.G[k] = hf * w;
      ws.upwind[k] = up;
    });
    parallel_for(n, par, [&](std::size_t i) {
      ws.branch[i] = band_branch(st.p[i], ws.pci[i], ws.pcd[i]);
      ws.R[i] = play_rate(st.p[i], ws.pci[i], ws.pcd[i], tau) + (ws.G[i + 1] - ws.G[i]) / dx;
    });
  };

  double res_norm = 0.0;
  std::ostringstream trace;
  int it = 0;
  for (; it < cfg.max_iterations; ++it) {
    assemble();
    res_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) res_norm = std::max(res_norm, std::abs(ws.R[i]));
    if (it < 16 || it % 16 == 0) trace << res_norm << " ";
    if (res_norm <= cfg.residual_tol) break;

    const double idx2 = delta / (dx * dx);
    parallel_for(n, par, [&](std::size_t i) {
      const double dphi = ws.branch[i] == kInBand ? 0.0 : -1.0 / tau;
      double diag = dphi;
      double lower = 0.0, upper = 0.0;
      if (i > 0) {
        lower = ws.hf[i] * idx2;
        diag -= ws.hf[i] * idx2;
      }
      if (i + 1 < n) {
        upper = ws.hf[i + 1] * idx2;
        diag -= ws.hf[i + 1] * idx2;
      } else {
        diag -= 2.0 * ws.hf[n] * idx2;  // Dirichlet ghost on the right
      }
      ws.lower[i] = lower;
      ws.diag[i] = diag;
      ws.upper[i] = upper;
      ws.rhs[i] = -ws.R[i];
    });
    thomas(ws.lower, ws.diag, ws.upper, ws.rhs);

    // Once the band branches and upwind directions stop changing the system
    // is linear and the undamped update lands on the exact root.
    const bool settled =
        ws.branch == ws.branch_prev && ws.upwind == ws.upwind_prev;
    const double omega =
        (cfg.solver == PressureSolver::newton || settled) ? 1.0 : cfg.damping;
    parallel_for(n, par, [&](std::size_t i) { st.p[i] += omega * ws.rhs[i]; });
    ws.branch_prev = ws.branch;
    ws.upwind_prev = ws.upwind;
  }
  if (res_norm > cfg.residual_tol) {
    throw NonlinearSolveError("pressure solve: no convergence after " +
                              std::to_string(cfg.max_iterations) +
                              " iterations; residual trace: " + trace.str());
  }
  st.last_iterations = it + 1;

  // Conservative saturation update from the converged face fluxes.
  assemble();
  double max_ds = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    max_ds = std::max(max_ds, std::abs(cfg.dt * (ws.G[i + 1] - ws.G[i]) / dx));
  if (max_ds > 0.1) ++st.cfl_warnings;
  parallel_for(n, par, [&](std::size_t i) {
    st.S[i] -= cfg.dt * (ws.G[i + 1] - ws.G[i]) / dx;
  });
  int clamped = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (st.S[i] < 0.0) {
      if (st.S[i] < -kClampWarn) ++clamped;
      st.S[i] = 0.0;
    } else if (st.S[i] > 1.0) {
      if (st.S[i] > 1.0 + kClampWarn) ++clamped;
      st.S[i] = 1.0;
    }
  }
  st.clamp_warnings += clamped;

  st.left_flux = ws.G[0];
  st.right_flux = ws.G[n];
  st.cum_influx += cfg.dt * ws.G[0];
  st.cum_outflux += cfg.dt * ws.G[n];
  st.t += cfg.dt;
}

RunResult run(const SimConfig& cfg, double snapshot_dt) {
  cfg.validate();
  SimState st = init_state(cfg);
  const long long n_steps = std::llround(cfg.T_end / cfg.dt);
  long long every = snapshot_dt > 0.0 ? std::llround(snapshot_dt / cfg.dt) : n_steps;
  if (every < 1) every = 1;

  RunResult out;
  auto record = [&]() {
    out.snapshots.push_back({st.t, st.S, st.p});
    out.ledger.push_back({st.t, st.mass(cfg.dx), st.left_flux, st.right_flux});
  };
  record();
  for (long long k = 1; k <= n_steps; ++k) {
    step(st, cfg);
    if (k % every == 0 || k == n_steps) record();
  }
  return out;
}

CompareReport compare_to_hyperbolic(const Snapshot& snap, const SimConfig& cfg,
                                    const WaveStructure& w) {
  const std::vector<double> xs = cell_centers(cfg);
  const std::vector<double> exact = sample_solution(w, xs, snap.t, cfg.threads > 0);

  std::vector<double> disc_x;
  std::vector<std::pair<double, double>> disc_states;
  for (const auto& e : w.elements) {
    if (const auto* s = std::get_if<Shock>(&e)) {
      disc_x.push_back(s->c * snap.t);
      disc_states.emplace_back(s->S_l, s->S_r);
    }
  }

  CompareReport rep;
  const double collar = 2.0 * cfg.delta;
  const double boundary = 5.0 * cfg.delta;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    if (x < -cfg.H + boundary || x > cfg.H - boundary) continue;
    bool masked = false;
    for (double xd : disc_x)
      if (std::abs(x - xd) < collar) {
        masked = true;
        break;
      }
    if (masked) continue;
    const double d = std::abs(snap.S[i] - exact[i]);
    rep.l1 += d * cfg.dx;
    rep.linf = std::max(rep.linf, d);
    rep.mask_measure += cfg.dx;
  }
  rep.l1_normalized = rep.l1 / (2.0 * cfg.H);

  // Mid-height front locator around each expected discontinuity.
  for (std::size_t d = 0; d < disc_x.size(); ++d) {
    FrontError fe;
    fe.expected_x = disc_x[d];
    const double mid = 0.5 * (disc_states[d].first + disc_states[d].second);
    const double window = std::max(5.0 * cfg.delta, 5.0 * cfg.dx);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      if (std::abs(xs[i] - fe.expected_x) > window) continue;
      const double a = snap.S[i] - mid, b = snap.S[i + 1] - mid;
      if (a >= 0.0 && b < 0.0) {
        fe.found = true;
        fe.found_x = xs[i] + cfg.dx * a / (a - b);
        fe.error = std::abs(fe.found_x - fe.expected_x);
        break;
      }
    }
    rep.fronts.push_back(fe);
  }
  return rep;
}

SimConfig desk_scale_config(std::string_view curve_preset) {
  SimConfig cfg;
  cfg.flux = FluxModel(1.0);
  cfg.curves = preset_curves(curve_preset);
  cfg.S_T = 0.8;
  cfg.S_B = 0.1;
  cfg.delta = 0.25;
  cfg.tau = 0.01;
  cfg.H = 30.0;
  cfg.dx = 0.05;
  cfg.dt = 1e-3;
  cfg.T_end = 30.0;
  return cfg;
}

}  // namespace hystbl
