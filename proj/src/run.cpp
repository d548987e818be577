#include "birat/run.hpp"

#include "birat/errors.hpp"
#include "birat/kahan.hpp"
#include "birat/lvfamily.hpp"
#include "birat/models.hpp"
#include "birat/ratpoly.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>

namespace birat {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string{} : item.substr(b, e - b + 1));
  }
  return out;
}

double param_value(const std::map<std::string, std::string>& params, const std::string& key,
                   double fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    return parse_rational(it->second).get_d();
  } catch (const ParseError& ex) {
    throw ConfigError("params: " + key + ": " + ex.what());
  }
}

void require_known_keys(const std::map<std::string, std::string>& params,
                        const std::set<std::string>& allowed, const std::string& model) {
  for (const auto& [k, v] : params) {
    if (!allowed.contains(k)) {
      throw ConfigError("params: unknown parameter '" + k + "' for model " + model);
    }
  }
}

bool is_positional(const std::map<std::string, std::string>& params) {
  return !params.empty() && params.contains("0");
}

LVParams lv_params_from(const std::map<std::string, std::string>& params) {
  if (params.empty()) return presets::kahan();
  std::vector<std::string> entries;
  if (is_positional(params)) {
    for (int i = 0; i < static_cast<int>(params.size()); ++i) {
      const auto it = params.find(std::to_string(i));
      if (it == params.end()) throw ConfigError("params: malformed parameter list");
      entries.push_back(it->second);
    }
  } else {
    for (auto name : kCoefNames) {
      const auto it = params.find(std::string(name));
      if (it == params.end()) {
        throw ConfigError("params: lv-family needs all of a,b,c,d,e,A,B,C,D,E (missing " +
                          std::string(name) + ")");
      }
      entries.push_back(it->second);
    }
    require_known_keys(params, {"a", "b", "c", "d", "e", "A", "B", "C", "D", "E"}, "lv");
  }
  try {
    return LVParams::parse(entries);
  } catch (const Error& ex) {
    throw ConfigError(std::string("params: ") + ex.what());
  }
}

std::optional<int> series_order_of(const std::string& method) {
  if (method == "euler") return 0;
  static const std::string prefix = "kahan-series:";
  if (method.rfind(prefix, 0) == 0) {
    const std::string k = method.substr(prefix.size());
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos) {
      throw ConfigError("method: series order must be a non-negative integer in '" + method + "'");
    }
    return std::stoi(k);
  }
  return std::nullopt;
}

EnzymeParams enzyme_params_from(const std::map<std::string, std::string>& params) {
  require_known_keys(params, {"k1", "km1", "k-1", "k2", "s0", "e0"}, "enzyme4");
  EnzymeParams p{1.0, 0.5, 0.1, 1.0, 1e-2};
  p.k1 = param_value(params, "k1", p.k1);
  p.km1 = param_value(params, "km1", param_value(params, "k-1", p.km1));
  p.k2 = param_value(params, "k2", p.k2);
  p.s0 = param_value(params, "s0", p.s0);
  p.e0 = param_value(params, "e0", p.e0);
  return p;
}

DimensionlessEnzymeParams diml_params_from(const std::map<std::string, std::string>& params) {
  require_known_keys(params, {"mu", "nu", "eps"}, "enzyme3");
  DimensionlessEnzymeParams p;
  p.mu = param_value(params, "mu", p.mu);
  p.nu = param_value(params, "nu", p.nu);
  p.eps = param_value(params, "eps", p.eps);
  return p;
}

SchnakenbergParams schnakenberg_params_from(const std::map<std::string, std::string>& params) {
  require_known_keys(params, {"a", "b"}, "schnakenberg");
  SchnakenbergParams p;
  p.a = param_value(params, "a", p.a);
  p.b = param_value(params, "b", p.b);
  return p;
}

std::vector<double> default_x0(const RunConfig& cfg) {
  if (cfg.model == "enzyme4") {
    const EnzymeParams p = enzyme_params_from(cfg.params);
    return {p.s0, p.e0, 0.0, 0.0};
  }
  if (cfg.model == "enzyme3") return {1.0, 0.0, 0.0};
  if (cfg.model == "lv") return {2.0, 0.5};
  const Eigen::Vector2d s = schnakenberg_steady_state(schnakenberg_params_from(cfg.params));
  return {s[0] + 0.01, s[1]};
}

}  // namespace

std::map<std::string, std::string> parse_param_list(const std::string& text) {
  std::map<std::string, std::string> out;
  if (text.empty()) return out;
  std::string cleaned = text;
  std::erase_if(cleaned, [](char c) { return c == '{' || c == '}' || c == '[' || c == ']'; });
  const auto items = split(cleaned, ',');
  const bool keyed = cleaned.find('=') != std::string::npos;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (keyed) {
      const auto eq = items[i].find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ConfigError("params: expected key=value, got '" + items[i] + "'");
      }
      out[items[i].substr(0, eq)] = items[i].substr(eq + 1);
    } else {
      out[std::to_string(i)] = items[i];
    }
  }
  return out;
}

std::vector<double> parse_state(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    try {
      out.push_back(parse_rational(item).get_d());
    } catch (const ParseError& ex) {
      throw ConfigError(std::string("x0: ") + ex.what());
    }
  }
  return out;
}

void apply_config_json(RunConfig& cfg, const nlohmann::json& j) {
  try {
    if (j.contains("model")) cfg.model = j.at("model").get<std::string>();
    if (j.contains("method")) cfg.method = j.at("method").get<std::string>();
    if (j.contains("params")) {
      const auto& p = j.at("params");
      cfg.params.clear();
      const auto as_text = [](const nlohmann::json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
      };
      if (p.is_array()) {
        for (std::size_t i = 0; i < p.size(); ++i) cfg.params[std::to_string(i)] = as_text(p[i]);
      } else if (p.is_object()) {
        for (const auto& [k, v] : p.items()) cfg.params[k] = as_text(v);
      } else if (p.is_string()) {
        cfg.params = parse_param_list(p.get<std::string>());
      } else {
        throw ConfigError("params: expected object, array or string");
      }
    }
    if (j.contains("h")) cfg.h = j.at("h").get<double>();
    if (j.contains("steps")) cfg.steps = j.at("steps").get<std::int64_t>();
    if (j.contains("x0")) cfg.x0 = j.at("x0").get<std::vector<double>>();
    if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
    if (j.contains("format")) {
      const auto f = j.at("format").get<std::string>();
      if (f == "csv") {
        cfg.format = OutputFormat::Csv;
      } else if (f == "json") {
        cfg.format = OutputFormat::Json;
      } else {
        throw ConfigError("format: expected csv or json, got '" + f + "'");
      }
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("config: ") + ex.what());
  }
}

void finalize_config(RunConfig& cfg) {
  try {
    (void)model_state_names(cfg.model);
  } catch (const InvalidArgument& ex) {
    throw ConfigError(std::string("model: ") + ex.what());
  }
  if (cfg.steps < 1) throw ConfigError("steps: must be at least 1");
  if (cfg.h == 0.0 || !std::isfinite(cfg.h)) throw ConfigError("h: must be finite and nonzero");
  if (!(cfg.tol > 0.0)) throw ConfigError("tol: must be positive");
  if (cfg.x0.empty()) cfg.x0 = default_x0(cfg);
  const auto names = model_state_names(cfg.model);
  if (cfg.x0.size() != names.size()) {
    throw ConfigError("x0: model " + cfg.model + " has " + std::to_string(names.size()) +
                      " state components, got " + std::to_string(cfg.x0.size()));
  }
}

PreparedRun prepare_run(const RunConfig& cfg) {
  PreparedRun run;
  run.state_names = model_state_names(cfg.model);
  run.x0 = Eigen::Map<const Eigen::VectorXd>(cfg.x0.data(), static_cast<Eigen::Index>(cfg.x0.size()));
  const double h = cfg.h;

  if (cfg.method == "lv-family") {
    if (cfg.model != "lv") throw ConfigError("method: lv-family applies only to model lv");
    const LVParams p = lv_params_from(cfg.params);
    const double tol = cfg.tol;
    run.step = [p, h, tol](const StateVector& s) -> StateVector {
      const Eigen::Vector2d next = lv_step(p, s[0], s[1], h, tol);
      return StateVector(next);
    };
    run.map_id = "lv-family " + p.to_string();
    return run;
  }
  if (cfg.method == "schnakenberg") {
    if (cfg.model != "schnakenberg") {
      throw ConfigError("method: schnakenberg applies only to model schnakenberg");
    }
    const SchnakenbergParams p = schnakenberg_params_from(cfg.params);
    run.step = [p, h](const StateVector& s) -> StateVector {
      return StateVector(schnakenberg_step(p, s[0], s[1], h));
    };
    run.map_id = "schnakenberg a=" + format_number(p.a) + " b=" + format_number(p.b);
    return run;
  }

  std::optional<int> order;
  if (cfg.method != "kahan") {
    order = series_order_of(cfg.method);
    if (!order) throw ConfigError("method: unknown method '" + cfg.method + "'");
  }
  std::optional<QuadraticVectorField> vf;
  if (cfg.model == "enzyme4") {
    try {
      vf = enzyme_vf(enzyme_params_from(cfg.params));
    } catch (const InvalidArgument& ex) {
      throw ConfigError(std::string("params: ") + ex.what());
    }
  } else if (cfg.model == "enzyme3") {
    const DimensionlessEnzymeParams p = diml_params_from(cfg.params);
    try {
      vf = enzyme_diml_vf(p);
    } catch (const InvalidArgument& ex) {
      throw ConfigError(std::string("params: ") + ex.what());
    }
    if (auto w = enzyme_step_warning(p, h)) run.warnings.push_back(*w);
  } else if (cfg.model == "lv") {
    require_known_keys(cfg.params, {}, "lv with method " + cfg.method);
    vf = lv_vf();
  } else {
    throw ConfigError("method: " + cfg.method + " needs a quadratic model, not " + cfg.model);
  }
  const KahanStepConfig kcfg{h, order, 1e-12};
  run.step = [field = *vf, kcfg](const StateVector& s) { return kahan_step(field, s, kcfg); };
  run.map_id = cfg.model + " " + cfg.method;
  return run;
}

RunResult run_integration(const RunConfig& cfg) {
  PreparedRun run = prepare_run(cfg);
  auto partial = integrate_partial(run.step, run.x0, cfg.h, static_cast<std::size_t>(cfg.steps),
                                   run.map_id);
  return RunResult{std::move(partial.trajectory), std::move(run.state_names),
                   std::move(partial.error), std::move(run.warnings)};
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const RunResult& r) {
  os << "t";
  for (const auto& n : r.state_names) os << "," << n;
  os << "\n";
  const auto& traj = r.trajectory;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << format_number(traj.times[k]);
    for (Eigen::Index i = 0; i < traj.states[k].size(); ++i) {
      os << "," << format_number(traj.states[k][i]);
    }
    os << "\n";
  }
}

void write_json(std::ostream& os, const RunResult& r) {
  const auto num = [](double v) { return std::isfinite(v) ? format_number(v) : std::string("null"); };
  const auto& traj = r.trajectory;
  os << "{\"map_id\":" << nlohmann::json(traj.map_id).dump() << ",\"h\":" << num(traj.step_size)
     << ",\"columns\":[\"t\"";
  for (const auto& n : r.state_names) os << "," << nlohmann::json(n).dump();
  os << "],\"rows\":[";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << (k ? ",\n[" : "\n[") << num(traj.times[k]);
    for (Eigen::Index i = 0; i < traj.states[k].size(); ++i) os << "," << num(traj.states[k][i]);
    os << "]";
  }
  os << "]";
  if (!r.error.empty()) os << ",\n\"error\":" << nlohmann::json(r.error).dump();
  os << "}\n";
}

}  // namespace birat
