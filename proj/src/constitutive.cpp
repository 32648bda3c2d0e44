#include "hystbl/constitutive.hpp"

#include <cmath>
#include <string>

namespace hystbl {

namespace {
constexpr double kEndpointSlack = 1e-12;
constexpr double kCurveGuard = 1e-9;
}  // namespace

FluxModel::FluxModel(double mobility_ratio) : M_(mobility_ratio) {
  if (!(mobility_ratio > 0.0) || !std::isfinite(mobility_ratio))
    throw DomainError("FluxModel: mobility ratio must be positive");
  inv_M_ = 1.0 / M_;
}

double FluxModel::h(double S) const {
  if (S < -kEndpointSlack || S > 1.0 + kEndpointSlack)
    throw DomainError("FluxModel::h: saturation outside [0,1]");
  if (S < 0.0) S = 0.0;
  if (S > 1.0) S = 1.0;
  const double u = S * (1.0 - S);
  const double den = inv_M_ * S * S + (1.0 - S) * (1.0 - S);
  return u * u / den;
}

void FluxModel::check_interior(double S, const char* who) const {
  if (!(S > 0.0) || !(S < 1.0))
    throw DomainError(std::string(who) + ": saturation outside (0,1)");
}

double FluxModel::dh(double S) const {
  check_interior(S, "FluxModel::dh");
  const double u = S - S * S;                 // S(1-S)
  const double du = 1.0 - 2.0 * S;
  const double N = u * u;
  const double dN = 2.0 * u * du;
  const double D = inv_M_ * S * S + (1.0 - S) * (1.0 - S);
  const double dD = 2.0 * inv_M_ * S - 2.0 * (1.0 - S);
  return (dN * D - N * dD) / (D * D);
}

double FluxModel::d2h(double S) const {
  check_interior(S, "FluxModel::d2h");
  const double u = S - S * S;
  const double du = 1.0 - 2.0 * S;
  const double N = u * u;
  const double dN = 2.0 * u * du;
  const double d2N = 2.0 * du * du - 4.0 * u;
  const double D = inv_M_ * S * S + (1.0 - S) * (1.0 - S);
  const double dD = 2.0 * inv_M_ * S - 2.0 * (1.0 - S);
  const double d2D = 2.0 * inv_M_ + 2.0;
  // h = N/D; with W = N'D - ND',  h' = W/D^2,  h'' = (W'D - 2WD')/D^3.
  const double W = dN * D - N * dD;
  const double dW = d2N * D - N * d2D;
  return (dW * D - 2.0 * W * dD) / (D * D * D);
}

double FluxModel::argmax() const {
  return 1.0 / (1.0 + std::pow(M_, -1.0 / 3.0));
}

double CapillaryCurve::pc(double S) const {
  if (S < kCurveGuard)
    throw DomainError("CapillaryCurve::pc: saturation below domain guard");
  if (S > 1.0 + kEndpointSlack)
    throw DomainError("CapillaryCurve::pc: saturation above 1");
  if (S > 1.0) S = 1.0;
  const double t = std::pow(S, -1.0 / q) - 1.0;
  return a * std::pow(t, 1.0 - q) + b * (1.0 - S);
}

double CapillaryCurve::dpc(double S) const {
  if (S < kCurveGuard)
    throw DomainError("CapillaryCurve::dpc: saturation below domain guard");
  if (S > 1.0 + kEndpointSlack)
    throw DomainError("CapillaryCurve::dpc: saturation above 1");
  if (S > 1.0) S = 1.0;
  const double t = std::pow(S, -1.0 / q) - 1.0;
  return -a * (1.0 - q) / q * std::pow(S, -1.0 / q - 1.0) * std::pow(t, -q) - b;
}

void CapillaryCurve::validate() const {
  if (!(a > 0.0)) throw DomainError("CapillaryCurve: scale a must be positive");
  if (!(q > 0.0) || !(q < 1.0))
    throw DomainError("CapillaryCurve: exponent q must lie in (0,1)");
  if (b < 0.0) throw DomainError("CapillaryCurve: offset b must be nonnegative");
}

void HysteresisCurves::validate(int samples) const {
  imbibition.validate();
  drainage.validate();
  for (int i = 1; i < samples; ++i) {
    const double S = static_cast<double>(i) / samples;
    if (imbibition.pc(S) > drainage.pc(S) + 1e-12)
      throw DomainError("HysteresisCurves: imbibition curve exceeds drainage curve");
  }
}

bool HysteresisCurves::in_band(double S, double p) const {
  return p >= imbibition.pc(S) && p <= drainage.pc(S);
}

double HysteresisCurves::rate(double S, double p, double tau) const {
  if (!(tau > 0.0)) throw DomainError("HysteresisCurves::rate: tau must be positive");
  const double pi = imbibition.pc(S);
  if (p < pi) return (pi - p) / tau;
  const double pd = drainage.pc(S);
  if (p > pd) return (pd - p) / tau;
  return 0.0;
}

HysteresisCurves preset_curves(std::string_view name) {
  if (name == "paper-set-1")
    return {CapillaryCurve{3.5, 0.92, 0.0}, CapillaryCurve{3.5, 0.92, 0.5}};
  if (name == "paper-set-2")
    return {CapillaryCurve{3.5, 0.92, 0.0}, CapillaryCurve{5.0, 0.9, 0.0}};
  throw ConfigError("unknown curve preset: " + std::string(name));
}

}  // namespace hystbl
