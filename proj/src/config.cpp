#include "cdh/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cdh::cli {

using nlohmann::json;

const char* representation_name(Representation rep) {
  switch (rep) {
    case Representation::cdh: return "cdh";
    case Representation::bare: return "bare";
    case Representation::both: return "both";
  }
  return "?";
}

std::vector<double> GridAxis::values() const {
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    out[static_cast<std::size_t>(i)] = steps == 1 ? min : min + (max - min) * i / (steps - 1);
  }
  if (steps > 1) out.back() = max;
  return out;
}

std::string ObservableRequest::name() const {
  switch (kind) {
    case Kind::energy: return "E" + std::to_string(level);
    case Kind::mz: return "mz";
    case Kind::sigma_z_thermal: {
      std::ostringstream s;
      s << "sigma_z_thermal(T=" << temperature << ")";
      return s.str();
    }
    case Kind::structure: return std::string("structure_") + axis_name(axis);
    case Kind::entropy: return "entropy";
  }
  return "?";
}

int RunConfig::rotation_levels_for(const ObservableRequest& request) const {
  const int m = truncation.cdh_levels;
  if (rotation_levels_explicit) return truncation.rotation_levels;
  return request.kind == ObservableRequest::Kind::mz ? std::max(m, 20) : m;
}

SweepGrid RunConfig::effective_grid() const {
  if (grid) return *grid;
  const double om = omega_of(model);
  SweepGrid g;
  g.lambda_over_omega = {lambda_of(model) / om, lambda_of(model) / om, 1};
  g.delta_over_omega = {delta_of(model) / om, delta_of(model) / om, 1};
  return g;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ConfigError(where + ": " + what); }

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "must be finite");
  return v;
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
  return obj.contains(key) ? number(obj.at(key), where + "." + key) : fallback;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& item : obj.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return item.key() == k; })) {
      fail(where + "." + item.key(), "unknown field");
    }
  }
}

ModelSpec parse_model(const json& j) {
  if (!j.is_object()) fail("model", "expected an object");
  reject_unknown(j, {"type", "delta", "omega", "lambda", "gamma", "length", "periodic"}, "model");
  const std::string type = j.value("type", std::string("rabi"));
  const double delta = number_or(j, "delta", 1.0, "model");
  const double omega = number_or(j, "omega", 2.0, "model");
  const double lambda = number_or(j, "lambda", 0.0, "model");
  ModelSpec spec;
  if (type == "rabi") {
    for (const char* k : {"gamma", "length", "periodic"}) {
      if (j.contains(k)) fail(std::string("model.") + k, "only valid for dicke_heisenberg");
    }
    spec = RabiModel{delta, omega, lambda};
  } else if (type == "dicke_heisenberg") {
    DickeHeisenbergModel m;
    m.delta = delta;
    m.omega = omega;
    m.lambda = lambda;
    if (j.contains("gamma")) {
      const json& g = j.at("gamma");
      if (!g.is_array() || g.size() != 3) fail("model.gamma", "expected [gamma_x, gamma_y, gamma_z]");
      for (int a = 0; a < 3; ++a) m.gamma[a] = number(g.at(a), "model.gamma[" + std::to_string(a) + "]");
    }
    if (j.contains("length")) m.geometry.length = integer(j.at("length"), "model.length");
    if (j.contains("periodic")) {
      if (!j.at("periodic").is_boolean()) fail("model.periodic", "expected a boolean");
      m.geometry.periodic = j.at("periodic").get<bool>();
    }
    spec = m;
  } else {
    fail("model.type", "expected \"rabi\" or \"dicke_heisenberg\", got \"" + type + "\"");
  }
  try {
    validate(spec);
  } catch (const std::invalid_argument& e) {
    fail("model", e.what());
  }
  return spec;
}

GridAxis parse_axis_spec(const json& j, const std::string& where) {
  if (j.is_number()) {
    const double v = number(j, where);
    return {v, v, 1};
  }
  if (!j.is_object()) fail(where, "expected a number or {min, max, steps}");
  reject_unknown(j, {"min", "max", "steps"}, where);
  GridAxis a;
  if (!j.contains("min") || !j.contains("max")) fail(where, "needs both min and max");
  a.min = number(j.at("min"), where + ".min");
  a.max = number(j.at("max"), where + ".max");
  a.steps = j.contains("steps") ? integer(j.at("steps"), where + ".steps") : 1;
  if (a.min > a.max) fail(where, "min must not exceed max");
  if (a.steps < 1) fail(where + ".steps", "must be at least 1");
  if (a.steps == 1 && a.min != a.max) fail(where, "a single step requires min == max");
  return a;
}

void parse_observable(const json& j, const std::string& where, std::vector<ObservableRequest>& out) {
  using Kind = ObservableRequest::Kind;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    ObservableRequest r;
    if (s == "mz") {
      r.kind = Kind::mz;
    } else if (s == "entropy") {
      r.kind = Kind::entropy;
    } else if (s == "structure_x" || s == "structure_y" || s == "structure_z") {
      r.kind = Kind::structure;
      r.axis = parse_axis(s.substr(s.size() - 1));
    } else {
      fail(where, "unknown observable \"" + s + "\"");
    }
    out.push_back(r);
    return;
  }
  if (!j.is_object() || j.size() != 1) fail(where, "expected a name or a single-key object");
  const std::string key = j.begin().key();
  const json& value = j.begin().value();
  if (key == "energy_levels") {
    const int k = integer(value, where + ".energy_levels");
    if (k < 1) fail(where + ".energy_levels", "must be at least 1");
    for (int n = 0; n < k; ++n) out.push_back(ObservableRequest{Kind::energy, n, Axis::z, 0.0});
  } else if (key == "sigma_z_thermal") {
    const double t = number(value, where + ".sigma_z_thermal");
    if (!(t > 0.0)) fail(where + ".sigma_z_thermal", "temperature must be positive");
    out.push_back(ObservableRequest{Kind::sigma_z_thermal, 0, Axis::z, t});
  } else {
    fail(where, "unknown observable \"" + key + "\"");
  }
}

}  // namespace

RunConfig parse_config(const std::string& json_text, bool require_observables) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: expected a JSON object");
  reject_unknown(root, {"model", "truncation", "representation", "grid", "observables", "output", "record_timings"},
                 "config");

  RunConfig cfg;
  if (root.contains("model")) cfg.model = parse_model(root.at("model"));

  if (root.contains("truncation")) {
    const json& t = root.at("truncation");
    if (!t.is_object()) fail("truncation", "expected an object");
    reject_unknown(t, {"M", "M_P", "N"}, "truncation");
    if (t.contains("M")) cfg.truncation.cdh_levels = integer(t.at("M"), "truncation.M");
    if (t.contains("N")) cfg.truncation.bare_levels = integer(t.at("N"), "truncation.N");
    if (t.contains("M_P")) {
      cfg.truncation.rotation_levels = integer(t.at("M_P"), "truncation.M_P");
      cfg.rotation_levels_explicit = true;
    }
  }
  if (!cfg.rotation_levels_explicit) cfg.truncation.rotation_levels = std::max(cfg.truncation.cdh_levels, 20);
  try {
    cfg.truncation.validate();
  } catch (const std::invalid_argument& e) {
    fail("truncation", e.what());
  }

  if (root.contains("representation")) {
    const json& r = root.at("representation");
    const std::string s = r.is_string() ? r.get<std::string>() : "";
    if (s == "cdh") cfg.representation = Representation::cdh;
    else if (s == "bare") cfg.representation = Representation::bare;
    else if (s == "both") cfg.representation = Representation::both;
    else fail("representation", "expected \"cdh\", \"bare\" or \"both\"");
  }

  if (root.contains("grid")) {
    const json& g = root.at("grid");
    if (!g.is_object()) fail("grid", "expected an object");
    reject_unknown(g, {"lambda_over_omega", "delta_over_omega"}, "grid");
    SweepGrid grid;
    const double om = omega_of(cfg.model);
    grid.lambda_over_omega = g.contains("lambda_over_omega")
                                 ? parse_axis_spec(g.at("lambda_over_omega"), "grid.lambda_over_omega")
                                 : GridAxis{lambda_of(cfg.model) / om, lambda_of(cfg.model) / om, 1};
    grid.delta_over_omega = g.contains("delta_over_omega")
                                ? parse_axis_spec(g.at("delta_over_omega"), "grid.delta_over_omega")
                                : GridAxis{delta_of(cfg.model) / om, delta_of(cfg.model) / om, 1};
    if (grid.lambda_over_omega.min < 0.0) fail("grid.lambda_over_omega", "coupling must be non-negative");
    cfg.grid = grid;
  }

  if (root.contains("output")) {
    if (!root.at("output").is_string()) fail("output", "expected a path string");
    cfg.output_path = root.at("output").get<std::string>();
  }
  if (root.contains("record_timings")) {
    if (!root.at("record_timings").is_boolean()) fail("record_timings", "expected a boolean");
    cfg.record_timings = root.at("record_timings").get<bool>();
  }

  if (!root.contains("observables") && !require_observables) return cfg;
  if (!root.contains("observables")) fail("observables", "missing; at least one observable is required");
  const json& obs = root.at("observables");
  if (!obs.is_array()) fail("observables", "expected an array");
  for (std::size_t i = 0; i < obs.size(); ++i) {
    parse_observable(obs.at(i), "observables[" + std::to_string(i) + "]", cfg.observables);
  }
  if (cfg.observables.empty()) fail("observables", "empty; at least one observable is required");

  std::vector<std::string> names;
  for (const auto& r : cfg.observables) names.push_back(r.name());
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail("observables", "duplicate entries");

  const bool chain = is_chain(cfg.model);
  const int L = chain_length(cfg.model);
  for (const auto& r : cfg.observables) {
    using Kind = ObservableRequest::Kind;
    if ((r.kind == Kind::entropy || r.kind == Kind::structure) && !chain) {
      fail("observables", r.name() + " is only defined for dicke_heisenberg chains");
    }
    if (r.kind == Kind::entropy && L % 2 != 0) fail("observables", "entropy requires an even chain length");
    if (r.kind == Kind::energy) {
      const Eigen::Index d = system_dim(cfg.model);
      const bool need_cdh = cfg.representation != Representation::bare;
      const bool need_bare = cfg.representation != Representation::cdh;
      const Eigen::Index dim = std::min(need_cdh ? cfg.truncation.cdh_levels * d : Eigen::Index{1} << 40,
                                        need_bare ? cfg.truncation.bare_levels * d : Eigen::Index{1} << 40);
      if (r.level >= dim) {
        fail("observables", "energy_levels exceeds the Hilbert-space dimension " + std::to_string(dim));
      }
    }
  }

  return cfg;
}

RunConfig load_config(const std::string& path, bool require_observables) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str(), require_observables);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace cdh::cli
