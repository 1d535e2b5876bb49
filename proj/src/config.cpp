#include "nch/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "nch/expression.hpp"

namespace nch {

using nlohmann::json;

int RunConfig::num_steps() const {
  if (!(tau > 0.0) || !(t_final > 0.0)) throw std::invalid_argument("tau and t_final must be positive");
  const double ratio = t_final / tau;
  const double steps = std::round(ratio);
  if (steps < 1.0 || std::abs(ratio - steps) > 1e-9 * steps)
    throw std::invalid_argument("t_final / tau must be an integer (got " + std::to_string(ratio) + ")");
  return static_cast<int>(steps);
}

void RunConfig::validate() const {
  if (mesh_n < 2) throw std::invalid_argument("mesh_n must be >= 2");
  num_steps();
  scheme().validate();
  if (output.snapshot_stride < 1) throw std::invalid_argument("output.snapshot_stride must be >= 1");
  if (initial_data.kind != "convergence" && initial_data.kind != "illustration" &&
      initial_data.kind != "custom")
    throw std::invalid_argument("initial_data.kind must be convergence, illustration or custom");
  initial();  // parses expressions
}

SchemeConfig RunConfig::scheme() const {
  SchemeConfig s;
  s.tau = tau;
  s.newton_tol = newton_tol;
  s.newton_max_iter = newton_max_iter;
  s.potential = potential;
  s.onsager = onsager;
  s.quad = reference_quadrature(quad_degree);
  return s;
}

InitialData RunConfig::initial() const {
  InitialData d;
  d.center = initial_data.center;
  const std::string& kind = initial_data.kind;
  if (kind == "convergence") {
    d.kind = InitialData::Kind::kConvergence;
  } else if (kind == "illustration") {
    d.kind = InitialData::Kind::kIllustration;
  } else {
    d.kind = InitialData::Kind::kCustom;
    d.phi = Expression(initial_data.phi);
    d.theta = Expression(initial_data.theta);
  }
  if (initial_data.mu == "equilibrium") {
    d.mu_equilibrium = true;
  } else {
    d.mu = Expression(initial_data.mu);
  }
  return d;
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw std::invalid_argument(where + " must be a JSON object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key))
      throw std::invalid_argument("unknown config key '" + (where.empty() ? key : where + "." + key) + "'");
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument("config key '" + (where.empty() ? std::string(key) : where + "." + key) +
                                "' has the wrong type");
  }
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  reject_unknown(root,
                 {"mesh_n", "tau", "t_final", "potential", "onsager", "solver", "initial_data", "output",
                  "study"},
                 "");
  RunConfig cfg;
  read(root, "mesh_n", cfg.mesh_n, "");
  read(root, "tau", cfg.tau, "");
  read(root, "t_final", cfg.t_final, "");

  if (root.contains("potential")) {
    const json& p = root["potential"];
    reject_unknown(p, {"a", "b", "d", "theta_c", "gamma"}, "potential");
    read(p, "a", cfg.potential.a, "potential");
    read(p, "b", cfg.potential.b, "potential");
    read(p, "d", cfg.potential.d, "potential");
    read(p, "theta_c", cfg.potential.theta_c, "potential");
    read(p, "gamma", cfg.potential.gamma, "potential");
  }
  if (root.contains("onsager")) {
    const json& o = root["onsager"];
    reject_unknown(o, {"M", "K", "C"}, "onsager");
    read(o, "M", cfg.onsager.M, "onsager");
    read(o, "K", cfg.onsager.K, "onsager");
    read(o, "C", cfg.onsager.C, "onsager");
  }
  if (root.contains("solver")) {
    const json& s = root["solver"];
    reject_unknown(s, {"newton_tol", "newton_max_iter", "quad_degree"}, "solver");
    read(s, "newton_tol", cfg.newton_tol, "solver");
    read(s, "newton_max_iter", cfg.newton_max_iter, "solver");
    read(s, "quad_degree", cfg.quad_degree, "solver");
  }
  if (root.contains("initial_data")) {
    const json& d = root["initial_data"];
    reject_unknown(d, {"kind", "center", "phi", "theta", "mu"}, "initial_data");
    read(d, "kind", cfg.initial_data.kind, "initial_data");
    std::array<double, 2> center = cfg.initial_data.center;
    read(d, "center", center, "initial_data");
    cfg.initial_data.center = center;
    read(d, "phi", cfg.initial_data.phi, "initial_data");
    read(d, "theta", cfg.initial_data.theta, "initial_data");
    read(d, "mu", cfg.initial_data.mu, "initial_data");
  }
  if (root.contains("output")) {
    const json& o = root["output"];
    reject_unknown(o, {"csv", "vtk_dir", "snapshot_stride"}, "output");
    read(o, "csv", cfg.output.csv, "output");
    read(o, "vtk_dir", cfg.output.vtk_dir, "output");
    read(o, "snapshot_stride", cfg.output.snapshot_stride, "output");
  }
  if (root.contains("study")) {
    const json& s = root["study"];
    reject_unknown(s, {"k_min", "k_max", "tau_base"}, "study");
    read(s, "k_min", cfg.study.k_min, "study");
    read(s, "k_max", cfg.study.k_max, "study");
    read(s, "tau_base", cfg.study.tau_base, "study");
  }
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string to_json(const RunConfig& cfg) {
  json j;
  j["mesh_n"] = cfg.mesh_n;
  j["tau"] = cfg.tau;
  j["t_final"] = cfg.t_final;
  j["potential"] = {{"a", cfg.potential.a},
                    {"b", cfg.potential.b},
                    {"d", cfg.potential.d},
                    {"theta_c", cfg.potential.theta_c},
                    {"gamma", cfg.potential.gamma}};
  j["onsager"] = {{"M", cfg.onsager.M}, {"K", cfg.onsager.K}, {"C", cfg.onsager.C}};
  j["solver"] = {{"newton_tol", cfg.newton_tol},
                 {"newton_max_iter", cfg.newton_max_iter},
                 {"quad_degree", cfg.quad_degree}};
  j["initial_data"] = {{"kind", cfg.initial_data.kind},
                       {"center", {cfg.initial_data.center[0], cfg.initial_data.center[1]}},
                       {"phi", cfg.initial_data.phi},
                       {"theta", cfg.initial_data.theta},
                       {"mu", cfg.initial_data.mu}};
  j["output"] = {{"csv", cfg.output.csv},
                 {"vtk_dir", cfg.output.vtk_dir},
                 {"snapshot_stride", cfg.output.snapshot_stride}};
  j["study"] = {{"k_min", cfg.study.k_min}, {"k_max", cfg.study.k_max}, {"tau_base", cfg.study.tau_base}};
  return j.dump(2);
}

}  // namespace nch
