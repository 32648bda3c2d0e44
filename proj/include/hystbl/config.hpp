#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hystbl/constitutive.hpp"
#include "hystbl/pde.hpp"

namespace hystbl {

// Flat key = value experiment description with [section] headers. Unknown
// keys are rejected with file/line information so configs stay reproducible.
struct ExperimentConfig {
  // [flux]
  double M = 1.0;

  // [curves] either a preset name or explicit parameters
  std::string preset;
  CapillaryCurve imbibition{3.5, 0.92, 0.0};
  CapillaryCurve drainage{3.5, 0.92, 0.5};
  bool explicit_curves = false;

  // [riemann]
  double S_T = std::nan("");
  double S_B = std::nan("");
  std::vector<double> times;  // profile sampling times

  // [sim]
  double delta = 0.25;
  double tau = 0.01;
  double H = 100.0;
  double dx = 0.01;
  double dt = 1e-4;
  double T_end = 100.0;
  double snapshot_dt = 10.0;
  std::string solver = "fixed-point";
  double damping = 0.5;
  double residual_tol = 1e-9;
  int max_iterations = 400;
  int threads = 0;

  // [output]
  std::string out_dir = "out";
  double tag_tolerance = 0.05;

  HysteresisCurves curves() const;
  FluxModel flux() const { return FluxModel(M); }
  void require_riemann() const;  // bottom/top states present and ordered
  SimConfig sim_config() const;
};

ExperimentConfig parse_config(const std::string& path);

// A pressure-state tag for snapshot rows: 'i'/'d' when the pressure sits on
// the imbibition/drainage curve within tol, 'u' strictly inside the band,
// 'x' outside it.
char state_tag(const HysteresisCurves& hc, double S, double p, double tol);

}  // namespace hystbl
