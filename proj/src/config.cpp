#include "fy/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "fy/error.hpp"

namespace fy::config {

namespace {

[[noreturn]] void config_fail(const std::string& source, const std::string& msg) {
  fail(ErrorKind::Config, source + ": " + msg);
}

void check_keys(const YAML::Node& node, const std::set<std::string>& allowed,
                const std::string& section, const std::string& source) {
  if (!node.IsMap()) config_fail(source, "section '" + section + "' must be a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) config_fail(source, "unknown key '" + section + "." + key + "'");
  }
}

template <typename T>
T get(const YAML::Node& node, const std::string& key, const std::string& where,
      const std::string& source) {
  try {
    return node[key].as<T>();
  } catch (const YAML::Exception&) {
    config_fail(source, "bad value for '" + where + "." + key + "'");
  }
}

double get_finite(const YAML::Node& node, const std::string& key, const std::string& where,
                  const std::string& source) {
  const double v = get<double>(node, key, where, source);
  if (!std::isfinite(v)) config_fail(source, "'" + where + "." + key + "' must be finite");
  return v;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string list(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s + "]";
}

void parse_model(const YAML::Node& node, RunConfig& cfg, const std::string& src) {
  check_keys(node, {"preset", "N", "L", "boundary", "t", "potential", "pair_scales", "core_radius"},
             "model", src);
  if (node["preset"]) {
    cfg.preset = get<std::string>(node, "preset", "model", src);
    try {
      cfg.model = lattice::preset(cfg.preset);
    } catch (const Error& e) {
      config_fail(src, e.what());
    }
  }
  auto& m = cfg.model;
  if (node["N"]) m.particles = get<int>(node, "N", "model", src);
  if (node["L"]) m.sites = get<int>(node, "L", "model", src);
  if (node["t"]) m.hopping = get_finite(node, "t", "model", src);
  try {
    if (node["boundary"])
      m.boundary = lattice::parse_boundary(get<std::string>(node, "boundary", "model", src));
    if (const auto pot = node["potential"]) {
      check_keys(pot, {"kind", "params"}, "model.potential", src);
      if (pot["kind"])
        m.potential.kind =
            lattice::parse_potential_kind(get<std::string>(pot, "kind", "model.potential", src));
      if (pot["params"])
        m.potential.params = get<std::vector<double>>(pot, "params", "model.potential", src);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    config_fail(src, e.what());
  }
  if (node["pair_scales"])
    m.pair_scales = get<std::vector<double>>(node, "pair_scales", "model", src);
  if (const auto c = node["core_radius"]) {
    if (c.IsNull() || (c.IsScalar() && c.Scalar() == "none"))
      m.core_radius.reset();
    else
      m.core_radius = get<int>(node, "core_radius", "model", src);
  }
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
  if (s == "table") return OutputFormat::Table;
  if (s == "jsonl") return OutputFormat::Jsonl;
  fail(ErrorKind::Config, "unknown output format '" + s + "' (table|jsonl)");
}

const char* to_string(OutputFormat f) noexcept {
  return f == OutputFormat::Table ? "table" : "jsonl";
}

RunConfig parse_config(const std::string& text, const std::string& src) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    config_fail(src, std::string("YAML syntax error: ") + e.what());
  }
  RunConfig cfg;
  if (root.IsNull()) return cfg;
  check_keys(root, {"model", "solver", "check", "output"}, "<root>", src);

  if (const auto m = root["model"]) parse_model(m, cfg, src);
  if (const auto s = root["solver"]) {
    check_keys(s, {"target", "tol", "max_iter", "dense_limit"}, "solver", src);
    if (s["target"]) cfg.solver.target = get_finite(s, "target", "solver", src);
    if (s["tol"]) cfg.solver.tol = get_finite(s, "tol", "solver", src);
    if (s["max_iter"]) cfg.solver.max_iter = get<int>(s, "max_iter", "solver", src);
    if (s["dense_limit"]) cfg.solver.dense_limit = get<std::size_t>(s, "dense_limit", "solver", src);
    if (!(cfg.solver.tol > 0)) config_fail(src, "solver.tol must be positive");
    if (cfg.solver.max_iter < 1) config_fail(src, "solver.max_iter must be >= 1");
    if (cfg.solver.dense_limit < 1) config_fail(src, "solver.dense_limit must be >= 1");
  }
  if (const auto c = root["check"]) {
    check_keys(c, {"seeds", "n", "dim", "hermitian"}, "check", src);
    if (c["seeds"]) cfg.check.seeds = get<std::size_t>(c, "seeds", "check", src);
    if (c["n"]) cfg.check.n = get<int>(c, "n", "check", src);
    if (c["dim"]) cfg.check.dim = get<int>(c, "dim", "check", src);
    if (c["hermitian"]) cfg.check.hermitian = get<bool>(c, "hermitian", "check", src);
  }
  if (const auto o = root["output"]) {
    check_keys(o, {"format", "path"}, "output", src);
    if (o["format"]) cfg.output.format = parse_format(get<std::string>(o, "format", "output", src));
    if (o["path"]) cfg.output.path = get<std::string>(o, "path", "output", src);
  }

  try {
    cfg.model.validate();
  } catch (const Error& e) {
    config_fail(src, e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Config, "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string echo(const RunConfig& cfg) {
  const auto& m = cfg.model;
  std::ostringstream o;
  o << "model:\n";
  if (!cfg.preset.empty()) o << "  preset: " << cfg.preset << "\n";
  o << "  N: " << m.particles << "\n"
    << "  L: " << m.sites << "\n"
    << "  boundary: " << lattice::to_string(m.boundary) << "\n"
    << "  t: " << num(m.hopping) << "\n"
    << "  potential:\n"
    << "    kind: " << lattice::to_string(m.potential.kind) << "\n"
    << "    params: " << list(m.potential.params) << "\n"
    << "  pair_scales: " << list(m.pair_scales) << "\n"
    << "  core_radius: " << (m.core_radius ? std::to_string(*m.core_radius) : "none") << "\n"
    << "solver:\n"
    << "  target: " << num(cfg.solver.target) << "\n"
    << "  tol: " << num(cfg.solver.tol) << "\n"
    << "  max_iter: " << cfg.solver.max_iter << "\n"
    << "  dense_limit: " << cfg.solver.dense_limit << "\n"
    << "check:\n"
    << "  seeds: " << cfg.check.seeds << "\n"
    << "  n: " << cfg.check.n << "\n"
    << "  dim: " << cfg.check.dim << "\n"
    << "  hermitian: " << (cfg.check.hermitian ? "true" : "false") << "\n"
    << "output:\n"
    << "  format: " << to_string(cfg.output.format) << "\n"
    << "  path: \"" << cfg.output.path << "\"\n";
  return o.str();
}

}  // namespace fy::config
