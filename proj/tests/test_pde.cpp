#include <cmath>

#include "doctest.h"
#include "hystbl/charpoints.hpp"
#include "hystbl/config.hpp"
#include "hystbl/pde.hpp"
#include "oracles.hpp"

using namespace hystbl;

namespace {

SimConfig small_config(const char* preset = "paper-set-1") {
  SimConfig cfg = desk_scale_config(preset);
  cfg.H = 5.0;
  cfg.T_end = 0.05;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  SimConfig cfg = desk_scale_config("paper-set-1");
  cfg.validate();
  CHECK(cfg.cells() == 1200);

  SimConfig bad = cfg;
  bad.dx = 0.07;  // 2H/dx not an integer
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.dt = 0.011;  // dt/tau above the cap
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.S_B = 0.9;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.H = 0.2;  // fewer than 10 cells
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("initial state carries the Riemann data") {
  SimConfig cfg;  // full-length column, construction only
  cfg.curves = preset_curves("paper-set-1");
  const SimState st = init_state(cfg);
  REQUIRE(st.S.size() == 20000);
  for (std::size_t i = 0; i < 10000; ++i) CHECK(st.S[i] == 0.8);
  for (std::size_t i = 10000; i < 20000; ++i) CHECK(st.S[i] == 0.1);
  CHECK(st.p[0] == cfg.curves.drainage.pc(0.8));
  CHECK(st.p[19999] == cfg.curves.imbibition.pc(0.1));
  // piecewise-constant integral
  CHECK(st.mass(cfg.dx) == doctest::Approx(cfg.H * (0.8 + 0.1)).epsilon(1e-12));
}

TEST_CASE("uniform data is a steady state") {
  SimConfig cfg = small_config();
  cfg.S_T = cfg.S_B = 0.37;
  SimState st = init_state(cfg);
  const std::vector<double> S0 = st.S;
  for (int k = 0; k < 5; ++k) step(st, cfg);
  for (std::size_t i = 0; i < st.S.size(); ++i) CHECK(std::abs(st.S[i] - S0[i]) <= 1e-12);
  CHECK(st.cfl_warnings == 0);
}

TEST_CASE("a single step only moves mass near the jump") {
  SimConfig cfg = small_config();
  SimState st = init_state(cfg);
  const std::vector<double> S0 = st.S;
  step(st, cfg);
  const std::size_t n = st.S.size();
  const std::size_t mid = n / 2;
  // the implicit pressure solve couples cells globally, but its influence
  // decays geometrically; a dozen cells out the change is below tolerance
  for (std::size_t i = 3; i + 3 < n; ++i) {
    if (i + 12 >= mid && i <= mid + 12) continue;
    CHECK(std::abs(st.S[i] - S0[i]) <= 1e-12);
  }
  CHECK(std::abs(st.S[mid] - S0[mid]) > 1e-6);
}

TEST_CASE("per-step mass change telescopes to the boundary fluxes") {
  SimConfig cfg = small_config();
  SimState st = init_state(cfg);
  for (int k = 0; k < 100; ++k) {
    const double before = st.mass(cfg.dx);
    step(st, cfg);
    const double after = st.mass(cfg.dx);
    CHECK(std::abs((after - before) - cfg.dt * (st.left_flux - st.right_flux)) < 1e-12);
  }
}

TEST_CASE("pressure updates drive cells toward the band") {
  SimConfig cfg = small_config();
  SimState st = init_state(cfg);
  for (int k = 0; k < 50; ++k) step(st, cfg);
  for (std::size_t i = 0; i < st.S.size(); ++i) {
    const double pi = cfg.curves.imbibition.pc(st.S[i]);
    const double pd = cfg.curves.drainage.pc(st.S[i]);
    const double rate = cfg.curves.rate(st.S[i], st.p[i], cfg.tau);
    if (st.p[i] < pi) CHECK(rate > 0.0);
    if (st.p[i] > pd) CHECK(rate < 0.0);
    if (st.p[i] >= pi && st.p[i] <= pd) CHECK(rate == 0.0);
  }
}

TEST_CASE("serial and parallel kernels agree bitwise") {
  SimConfig serial = small_config();
  serial.T_end = 0.05;
  SimConfig parallel = serial;
  parallel.threads = 2;

  SimState a = init_state(serial);
  SimState b = init_state(parallel);
  for (int k = 0; k < 50; ++k) {
    step(a, serial);
    step(b, parallel);
  }
  REQUIRE(a.S.size() == b.S.size());
  for (std::size_t i = 0; i < a.S.size(); ++i) {
    CHECK(a.S[i] == b.S[i]);
    CHECK(a.p[i] == b.p[i]);
  }
}

TEST_CASE("newton and damped fixed-point converge to the same pressure") {
  SimConfig fp = small_config();
  SimConfig nw = fp;
  nw.solver = PressureSolver::newton;
  SimState a = init_state(fp);
  SimState b = init_state(nw);
  for (int k = 0; k < 20; ++k) {
    step(a, fp);
    step(b, nw);
  }
  for (std::size_t i = 0; i < a.S.size(); ++i) {
    CHECK(a.p[i] == doctest::Approx(b.p[i]).epsilon(1e-7));
    CHECK(a.S[i] == doctest::Approx(b.S[i]).epsilon(1e-9));
  }
}

TEST_CASE("run emits snapshots and a consistent ledger") {
  SimConfig cfg = small_config();
  cfg.T_end = 0.2;
  const RunResult rr = run(cfg, 0.1);
  REQUIRE(rr.snapshots.size() == 3);  // t = 0, 0.1, 0.2
  CHECK(rr.snapshots[0].t == 0.0);
  CHECK(rr.snapshots[2].t == doctest::Approx(0.2).epsilon(1e-9));
  REQUIRE(rr.ledger.size() == 3);
  CHECK(rr.ledger[0].mass == doctest::Approx(cfg.H * (0.8 + 0.1)).epsilon(1e-12));
  CHECK(rr.ledger[1].left_flux == doctest::Approx(cfg.flux.h(0.8)).epsilon(1e-12));
}

TEST_CASE("comparison report masks collars and finds the stationary front") {
  // short run so the unit suite stays fast; the full desk-scale check lives
  // in the acceptance suite
  SimConfig cfg = desk_scale_config("paper-set-2");
  cfg.H = 10.0;
  cfg.T_end = 6.0;
  const RunResult rr = run(cfg, cfg.T_end);
  const WaveStructure w = solve_riemann_hysteretic(cfg.flux, cfg.curves, cfg.S_T, cfg.S_B);
  const CompareReport rep = compare_to_hyperbolic(rr.snapshots.back(), cfg, w);
  CHECK(rep.mask_measure > 0.5 * 2.0 * cfg.H);
  CHECK(rep.l1_normalized < 0.05);
  REQUIRE(rep.fronts.size() == 2);  // stationary + one moving shock
  CHECK(rep.fronts[0].found);
  CHECK(rep.fronts[0].error < 2.0 * cfg.dx);
}
