#include "hystbl/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace hystbl {

HysteresisCurves ExperimentConfig::curves() const {
  if (!preset.empty() && explicit_curves)
    throw ConfigError("config: give either a curve preset or explicit parameters, not both");
  HysteresisCurves hc =
      preset.empty() ? HysteresisCurves{imbibition, drainage} : preset_curves(preset);
  hc.validate();
  return hc;
}

void ExperimentConfig::require_riemann() const {
  if (std::isnan(S_B)) throw ConfigError("config: missing riemann key S_B");
  if (std::isnan(S_T)) throw ConfigError("config: missing riemann key S_T");
  if (!(0.0 < S_B && S_B < S_T && S_T < 1.0))
    throw ConfigError("config: riemann data must satisfy 0 < S_B < S_T < 1");
}

SimConfig ExperimentConfig::sim_config() const {
  require_riemann();
  SimConfig cfg;
  cfg.flux = flux();
  cfg.curves = curves();
  cfg.S_T = S_T;
  cfg.S_B = S_B;
  cfg.delta = delta;
  cfg.tau = tau;
  cfg.H = H;
  cfg.dx = dx;
  cfg.dt = dt;
  cfg.T_end = T_end;
  if (solver == "fixed-point")
    cfg.solver = PressureSolver::fixed_point;
  else if (solver == "newton")
    cfg.solver = PressureSolver::newton;
  else
    throw ConfigError("config: solver must be 'fixed-point' or 'newton'");
  cfg.damping = damping;
  cfg.residual_tol = residual_tol;
  cfg.max_iterations = max_iterations;
  cfg.threads = threads;
  cfg.validate();
  return cfg;
}

namespace {

std::string trim(std::string s) {
  const auto issp = [](unsigned char c) { return std::isspace(c); };
  while (!s.empty() && issp(s.front())) s.erase(s.begin());
  while (!s.empty() && issp(s.back())) s.pop_back();
  return s;
}

struct Parser {
  const std::string& path;
  int line_no = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(path + ":" + std::to_string(line_no) + ": " + msg);
  }

  double num(const std::string& v) const {
    std::size_t pos = 0;
    double d = 0;
    try {
      d = std::stod(v, &pos);
    } catch (const std::exception&) {
      fail("expected a number, got '" + v + "'");
    }
    if (pos != v.size()) fail("trailing characters after number in '" + v + "'");
    return d;
  }

  int integer(const std::string& v) const {
    const double d = num(v);
    if (d != std::floor(d)) fail("expected an integer, got '" + v + "'");
    return static_cast<int>(d);
  }

  std::vector<double> num_list(const std::string& v) const {
    std::vector<double> out;
    std::istringstream is(v);
    std::string tok;
    while (is >> tok) {
      if (!tok.empty() && tok.back() == ',') tok.pop_back();
      if (!tok.empty()) out.push_back(num(tok));
    }
    if (out.empty()) fail("expected a list of numbers");
    return out;
  }
};

}  // namespace

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  ExperimentConfig cfg;
  Parser ps{path};
  std::string section;
  std::string line;
  while (std::getline(in, line)) {
    ++ps.line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') ps.fail("malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "flux" && section != "curves" && section != "riemann" &&
          section != "sim" && section != "output")
        ps.fail("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) ps.fail("expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) ps.fail("empty key or value");

    if (section == "flux") {
      if (key == "M") cfg.M = ps.num(val);
      else ps.fail("unknown key '" + key + "' in section [flux]");
    } else if (section == "curves") {
      if (key == "preset") cfg.preset = val;
      else if (key == "imbibition_a") { cfg.imbibition.a = ps.num(val); cfg.explicit_curves = true; }
      else if (key == "imbibition_q") { cfg.imbibition.q = ps.num(val); cfg.explicit_curves = true; }
      else if (key == "imbibition_b") { cfg.imbibition.b = ps.num(val); cfg.explicit_curves = true; }
      else if (key == "drainage_a") { cfg.drainage.a = ps.num(val); cfg.explicit_curves = true; }
      else if (key == "drainage_q") { cfg.drainage.q = ps.num(val); cfg.explicit_curves = true; }
      else if (key == "drainage_b") { cfg.drainage.b = ps.num(val); cfg.explicit_curves = true; }
      else ps.fail("unknown key '" + key + "' in section [curves]");
    } else if (section == "riemann") {
      if (key == "S_T") cfg.S_T = ps.num(val);
      else if (key == "S_B") cfg.S_B = ps.num(val);
      else if (key == "times") cfg.times = ps.num_list(val);
      else ps.fail("unknown key '" + key + "' in section [riemann]");
    } else if (section == "sim") {
      if (key == "delta") cfg.delta = ps.num(val);
      else if (key == "tau") cfg.tau = ps.num(val);
      else if (key == "H") cfg.H = ps.num(val);
      else if (key == "dx") cfg.dx = ps.num(val);
      else if (key == "dt") cfg.dt = ps.num(val);
      else if (key == "T_end") cfg.T_end = ps.num(val);
      else if (key == "snapshot_dt") cfg.snapshot_dt = ps.num(val);
      else if (key == "solver") cfg.solver = val;
      else if (key == "damping") cfg.damping = ps.num(val);
      else if (key == "residual_tol") cfg.residual_tol = ps.num(val);
      else if (key == "max_iterations") cfg.max_iterations = ps.integer(val);
      else if (key == "threads") cfg.threads = ps.integer(val);
      else ps.fail("unknown key '" + key + "' in section [sim]");
    } else if (section == "output") {
      if (key == "dir") cfg.out_dir = val;
      else if (key == "tag_tolerance") cfg.tag_tolerance = ps.num(val);
      else ps.fail("unknown key '" + key + "' in section [output]");
    } else {
      ps.fail("key '" + key + "' outside any section");
    }
  }
  return cfg;
}

char state_tag(const HysteresisCurves& hc, double S, double p, double tol) {
  const double pi = hc.imbibition.pc(S);
  const double pd = hc.drainage.pc(S);
  if (std::abs(p - pi) <= tol) return 'i';
  if (std::abs(p - pd) <= tol) return 'd';
  if (p > pi && p < pd) return 'u';
  return 'x';
}

}  // namespace hystbl
