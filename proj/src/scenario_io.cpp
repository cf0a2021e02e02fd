#include "vaa/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vaa/errors.hpp"

namespace vaa {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw ConfigError("scenario field '" + path + "': " + what);
}

const json* find(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double read_number(const json& node, const std::string& path) {
  if (!node.is_number()) field_error(path, "expected a number");
  return node.get<double>();
}

std::string read_string(const json& node, const std::string& path) {
  if (!node.is_string()) field_error(path, "expected a string");
  return node.get<std::string>();
}

Vector3 read_vector(const json& node, const std::string& path) {
  if (!node.is_array() || node.size() != 3) field_error(path, "expected an array of 3 numbers");
  Vector3 v;
  for (int i = 0; i < 3; ++i) v[i] = read_number(node[i], path + "[" + std::to_string(i) + "]");
  return v;
}

const json& require(const json& obj, const std::string& key, const std::string& parent) {
  const std::string path = parent.empty() ? key : parent + "." + key;
  const json* node = find(obj, key);
  if (node == nullptr) field_error(path, "missing");
  return *node;
}

Rotation read_rotation(const json& node, const std::string& path) {
  if (!node.is_object()) field_error(path, "expected {\"rotvec\": [...]} or {\"matrix\": [...]}");
  if (const json* rv = find(node, "rotvec")) {
    return exp_so3(read_vector(*rv, path + ".rotvec"));
  }
  if (const json* m = find(node, "matrix")) {
    if (!m->is_array() || m->size() != 3) field_error(path + ".matrix", "expected 3 rows");
    Matrix3 mat;
    for (int i = 0; i < 3; ++i) {
      mat.row(i) = read_vector((*m)[i], path + ".matrix[" + std::to_string(i) + "]").transpose();
    }
    try {
      return Rotation::from_matrix(mat);
    } catch (const std::invalid_argument& e) {
      field_error(path + ".matrix", e.what());
    }
  }
  field_error(path, "expected key 'rotvec' or 'matrix'");
}

SinusoidSignal read_signal(const json& node, const std::string& path) {
  if (node.is_array()) return SinusoidSignal::constant(read_vector(node, path));
  if (!node.is_object()) field_error(path, "expected a signal object or a 3-vector");
  const std::string type = read_string(require(node, "type", path), path + ".type");
  if (type == "constant") {
    return SinusoidSignal::constant(read_vector(require(node, "value", path), path + ".value"));
  }
  if (type != "sinusoid") field_error(path + ".type", "expected 'constant' or 'sinusoid'");
  SinusoidSignal s;
  const auto opt = [&](const char* key, Vector3& out) {
    if (const json* n = find(node, key)) out = read_vector(*n, path + "." + key);
  };
  opt("offset", s.offset);
  opt("amplitude", s.amplitude);
  opt("frequency", s.frequency);
  opt("phase", s.phase);
  return s;
}

json vector_json(const Vector3& v) { return json::array({v[0], v[1], v[2]}); }

json matrix_json(const Matrix3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) rows.push_back(json::array({m(i, 0), m(i, 1), m(i, 2)}));
  return rows;
}

json signal_json(const SinusoidSignal& s) {
  return {{"type", "sinusoid"},
          {"offset", vector_json(s.offset)},
          {"amplitude", vector_json(s.amplitude)},
          {"frequency", vector_json(s.frequency)},
          {"phase", vector_json(s.phase)}};
}

Scenario paper_base() {
  const ScenarioSignals paper = paper_scenario();
  Scenario sc;
  sc.name = "paper2022";
  sc.inputs = paper.inputs;
  sc.x0 = paper.initial;
  sc.obs0.Rhat = exp_so3({2.0, -1.0, 1.5});
  sc.obs0.vhat = {3.0, -2.0, 2.0};
  sc.obs0.z = Vector3::Zero();
  sc.gains = Gains::with_default_alpha(5.0, 1.0);
  sc.horizon = 15.0;
  sc.dt = 0.1;
  sc.integrator = Integrator::euler;
  return sc;
}

}  // namespace

const std::vector<BuiltinScenario>& builtin_scenarios() {
  static const std::vector<BuiltinScenario> list = {
      {"paper2022",
       "reference run: Omega=(0,0,1), a=(5 sin 5t,0,-9.81), Rhat0=exp((2,-1,1.5)^x), "
       "vhat0=(3,-2,2), k=5, c=1, Euler dt=0.1 s, 15 s"},
      {"paper2022-rk4", "paper2022 integrated by RK4 at dt=1e-3 s"},
      {"paper2022-geometric", "paper2022 integrated by geometric Euler at dt=0.01 s"},
      {"zero-error", "paper2022 inputs with the observer initialized at the truth (z0 = v0)"},
  };
  return list;
}

Scenario builtin_scenario(std::string_view name) {
  Scenario sc = paper_base();
  if (name == "paper2022") return sc;
  if (name == "paper2022-rk4") {
    sc.name = "paper2022-rk4";
    sc.integrator = Integrator::rk4;
    sc.dt = 1e-3;
    return sc;
  }
  if (name == "paper2022-geometric") {
    sc.name = "paper2022-geometric";
    sc.integrator = Integrator::geometric_euler;
    sc.dt = 1e-2;
    return sc;
  }
  if (name == "zero-error") {
    sc.name = "zero-error";
    sc.obs0 = ObserverState{sc.x0.R, sc.x0.v, sc.x0.v};
    return sc;
  }
  throw ConfigError("unknown built-in scenario '" + std::string(name) + "'");
}

Scenario parse_scenario_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed scenario JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("scenario JSON must be an object");

  if (const json* schema = find(doc, "schema")) {
    if (read_string(*schema, "schema") != kScenarioSchema) {
      field_error("schema", "expected '" + std::string(kScenarioSchema) + "'");
    }
  }

  Scenario sc = paper_base();
  sc.name = read_string(require(doc, "name", ""), "name");

  const json& inputs = require(doc, "inputs", "");
  if (!inputs.is_object()) field_error("inputs", "expected an object");
  if (const json* builtin = find(inputs, "builtin")) {
    const std::string which = read_string(*builtin, "inputs.builtin");
    if (which != "paper2022") field_error("inputs.builtin", "unknown signal set '" + which + "'");
    sc.inputs = paper_scenario().inputs;
  } else {
    sc.inputs.omega = read_signal(require(inputs, "omega", "inputs"), "inputs.omega");
    sc.inputs.accel = read_signal(require(inputs, "accel", "inputs"), "inputs.accel");
    sc.inputs.gravity = read_vector(require(inputs, "gravity", "inputs"), "inputs.gravity");
  }

  sc.x0 = SystemState{};
  if (const json* init = find(doc, "initial")) {
    if (const json* r = find(*init, "R")) sc.x0.R = read_rotation(*r, "initial.R");
    if (const json* v = find(*init, "v")) sc.x0.v = read_vector(*v, "initial.v");
  }

  const json& obs = require(doc, "observer", "");
  sc.obs0.Rhat = read_rotation(require(obs, "Rhat", "observer"), "observer.Rhat");
  sc.obs0.vhat = read_vector(require(obs, "vhat", "observer"), "observer.vhat");
  sc.obs0.z = Vector3::Zero();
  if (const json* z = find(obs, "z")) sc.obs0.z = read_vector(*z, "observer.z");

  const json& gains = require(doc, "gains", "");
  sc.gains.k = read_number(require(gains, "k", "gains"), "gains.k");
  sc.gains.c = read_number(require(gains, "c", "gains"), "gains.c");
  sc.gains.alpha = sc.gains.c / sc.gains.k;
  if (const json* a = find(gains, "alpha")) sc.gains.alpha = read_number(*a, "gains.alpha");

  sc.horizon = read_number(require(doc, "horizon", ""), "horizon");
  sc.dt = read_number(require(doc, "dt", ""), "dt");
  if (const json* integ = find(doc, "integrator")) {
    sc.integrator = parse_integrator(read_string(*integ, "integrator"));
  }
  sc.validate();
  return sc;
}

Scenario load_scenario(const std::string& name_or_path) {
  for (const auto& b : builtin_scenarios()) {
    if (b.name == name_or_path) return builtin_scenario(name_or_path);
  }
  std::ifstream in(name_or_path, std::ios::binary);
  if (!in) {
    throw ConfigError("'" + name_or_path + "' is neither a built-in scenario nor a readable file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_json(buf.str());
}

std::string scenario_to_json(const Scenario& sc) {
  const json doc = {
      {"schema", kScenarioSchema},
      {"name", sc.name},
      {"inputs",
       {{"omega", signal_json(sc.inputs.omega)},
        {"accel", signal_json(sc.inputs.accel)},
        {"gravity", vector_json(sc.inputs.gravity)}}},
      {"initial", {{"R", {{"matrix", matrix_json(sc.x0.R.matrix())}}}, {"v", vector_json(sc.x0.v)}}},
      {"observer",
       {{"Rhat", {{"matrix", matrix_json(sc.obs0.Rhat.matrix())}}},
        {"vhat", vector_json(sc.obs0.vhat)},
        {"z", vector_json(sc.obs0.z)}}},
      {"gains", {{"k", sc.gains.k}, {"c", sc.gains.c}, {"alpha", sc.gains.alpha}}},
      {"horizon", sc.horizon},
      {"dt", sc.dt},
      {"integrator", std::string(to_string(sc.integrator))},
  };
  return doc.dump(2);
}

}  // namespace vaa
