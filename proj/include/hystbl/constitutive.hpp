#pragma once

#include <string_view>

#include "hystbl/errors.hpp"

namespace hystbl {

// Fractional flow of the wetting phase for gravity-driven counter-current
// flow with Brooks-Corey relative permeabilities (k_w = k_n = S^2):
//
//   h(S) = S^2 (1-S)^2 / (M^{-1} S^2 + (1-S)^2),
//
// where M is the wetting/non-wetting viscosity ratio. h vanishes at both
// endpoints, has a single maximum at S_M = 1/(1 + M^{-1/3}) and exactly two
// inflection points bracketing S_M.
class FluxModel {
 public:
  explicit FluxModel(double mobility_ratio);

  double mobility_ratio() const { return M_; }

  // Valid for S in [0,1]; inputs within 1e-12 outside are clamped.
  double h(double S) const;

  // First and second derivatives, valid on the open interval (0,1).
  double dh(double S) const;
  double d2h(double S) const;

  // Closed-form location of the maximum.
  double argmax() const;

 private:
  void check_interior(double S, const char* who) const;

  double M_ = 1.0;
  double inv_M_ = 1.0;
};

// Capillary pressure curve in van Genuchten form with an optional linear
// offset term:
//
//   p(S) = a (S^{-1/q} - 1)^{1-q} + b (1-S),   0 < S <= 1.
//
// Strictly decreasing, p(1) = 0. Evaluation below S = 1e-9 is rejected since
// the power term overflows there.
struct CapillaryCurve {
  double a = 1.0;
  double q = 0.5;
  double b = 0.0;

  double pc(double S) const;
  double dpc(double S) const;  // unbounded as S -> 1
  void validate() const;
};

// Imbibition/drainage curve pair of the play-type hysteresis relation.
// The undetermined band is {(S,p) : imbibition.pc(S) <= p <= drainage.pc(S)}.
struct HysteresisCurves {
  CapillaryCurve imbibition;
  CapillaryCurve drainage;

  // Checks imbibition.pc <= drainage.pc on a sample grid of (0,1).
  // Coincident curves are allowed (the degenerate, hysteresis-free limit).
  void validate(int samples = 1000) const;

  bool in_band(double S, double p) const;

  // Saturation rate dS/dt of the relaxed play-type relation: the pressure
  // relaxes toward the band with time constant tau,
  //   rate = (p_i(S) - p)/tau  below the band,
  //          (p_d(S) - p)/tau  above the band,
  //          0                 inside.
  double rate(double S, double p, double tau) const;
};

// Named curve pairs used throughout the experiments:
//   "paper-set-1": imbibition a=3.5, q=0.92; drainage = imbibition + 0.5(1-S)
//   "paper-set-2": imbibition as set 1;      drainage a=5, q=0.9
HysteresisCurves preset_curves(std::string_view name);

}  // namespace hystbl
