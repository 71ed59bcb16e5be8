#include "archdpg_cli/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace archdpg::cli {

namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string item(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError((path.empty() ? std::string("config") : path) + ": expected an object");
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  require_object(j, path);
  for (const auto& [key, value] : j.items()) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!ok) throw ConfigError("unknown key '" + join(path, key) + "'");
  }
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  return j.get<double>();
}

int integer_at(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path + ": expected an integer");
  const auto v = j.get<long long>();
  if (v < -1000000000LL || v > 1000000000LL) throw ConfigError(path + ": integer out of range");
  return static_cast<int>(v);
}

std::string string_at(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path + ": expected a string");
  return j.get<std::string>();
}

bool bool_at(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ConfigError(path + ": expected true or false");
  return j.get<bool>();
}

const json* find(const json& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const json& required(const json& j, const std::string& path, const char* key) {
  const json* v = find(j, key);
  if (!v) throw ConfigError("missing key '" + join(path, key) + "'");
  return *v;
}

template <class F>
auto wrap(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

Component component_from_name(const std::string& name, const std::string& path) {
  for (Component c : kAllComponents)
    if (component_name(c) == name) return c;
  throw ConfigError(path + ": unknown component '" + name + "' (expected u, w, theta, n, q or m)");
}

int endpoint_from_position(const json& j, const std::string& path) {
  const double x = number_at(j, path);
  if (x == 0.0) return 0;
  if (x == 1.0) return 1;
  throw ConfigError(path + ": position must be 0 or 1");
}

ExprTerm parse_term(const json& j, const std::string& path) {
  ExprTerm t;
  if (j.is_number()) {
    t.kind = ExprTerm::Kind::Polynomial;
    t.coefficients = {j.get<double>()};
    return t;
  }
  require_object(j, path);
  const std::string type = string_at(required(j, path, "type"), join(path, "type"));
  if (type == "poly") {
    check_keys(j, path, {"type", "coefficients", "reflected"});
    const json& coeffs = required(j, path, "coefficients");
    if (!coeffs.is_array() || coeffs.empty())
      throw ConfigError(join(path, "coefficients") + ": expected a non-empty array of numbers");
    t.kind = ExprTerm::Kind::Polynomial;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      t.coefficients.push_back(number_at(coeffs[i], item(join(path, "coefficients"), i)));
  } else if (type == "cos" || type == "sin") {
    check_keys(j, path, {"type", "amplitude", "frequency", "phase", "reflected"});
    t.kind = type == "cos" ? ExprTerm::Kind::Cos : ExprTerm::Kind::Sin;
    t.amplitude = find(j, "amplitude") ? number_at(j["amplitude"], join(path, "amplitude")) : 1.0;
    t.frequency = number_at(required(j, path, "frequency"), join(path, "frequency"));
    t.phase = find(j, "phase") ? number_at(j["phase"], join(path, "phase")) : 0.0;
  } else {
    throw ConfigError(join(path, "type") + ": unknown term type '" + type + "' (expected poly, cos or sin)");
  }
  if (const json* r = find(j, "reflected")) t.reflected = bool_at(*r, join(path, "reflected"));
  return t;
}

Expr parse_expr(const json& j, const std::string& path) {
  Expr e;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) e.add_term(parse_term(j[i], item(path, i)));
  } else {
    e.add_term(parse_term(j, path));
  }
  return e;
}

void parse_load(const json& j, const std::string& path, ArchConfig& cfg) {
  check_keys(j, path, {"f_u", "f_w", "point_loads", "point_load_mode"});
  if (const json* v = find(j, "f_u")) cfg.load.f_u = parse_expr(*v, join(path, "f_u"));
  if (const json* v = find(j, "f_w")) cfg.load.f_w = parse_expr(*v, join(path, "f_w"));
  if (const json* v = find(j, "point_loads")) {
    const std::string lp = join(path, "point_loads");
    if (!v->is_array()) throw ConfigError(lp + ": expected an array");
    for (std::size_t i = 0; i < v->size(); ++i) {
      const json& pl = (*v)[i];
      const std::string ip = item(lp, i);
      check_keys(pl, ip, {"position", "component", "magnitude"});
      const int endpoint = endpoint_from_position(required(pl, ip, "position"), join(ip, "position"));
      const Component c = component_from_name(string_at(required(pl, ip, "component"), join(ip, "component")),
                                              join(ip, "component"));
      const double mag = number_at(required(pl, ip, "magnitude"), join(ip, "magnitude"));
      wrap(ip, [&] {
        cfg.load.add_point_load(endpoint == 0 ? 0.0 : 1.0, c, mag);
        return 0;
      });
    }
  }
  if (const json* v = find(j, "point_load_mode")) {
    const std::string mode = string_at(*v, join(path, "point_load_mode"));
    if (mode == "functional")
      cfg.point_load_mode = PointLoadMode::Functional;
    else if (mode == "essential-trace")
      cfg.point_load_mode = PointLoadMode::EssentialTrace;
    else
      throw ConfigError(join(path, "point_load_mode") + ": expected 'functional' or 'essential-trace'");
  }
}

void parse_boundary_values(const json& j, const std::string& path, ArchConfig& cfg) {
  if (!j.is_array()) throw ConfigError(path + ": expected an array");
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string ip = item(path, i);
    check_keys(j[i], ip, {"position", "component", "value"});
    TraceValue tv;
    tv.endpoint = endpoint_from_position(required(j[i], ip, "position"), join(ip, "position"));
    tv.component = component_from_name(string_at(required(j[i], ip, "component"), join(ip, "component")),
                                       join(ip, "component"));
    tv.value = number_at(required(j[i], ip, "value"), join(ip, "value"));
    cfg.boundary_values.push_back(tv);
  }
}

DiscretizationConfig parse_discretization(const json& j, const std::string& path) {
  check_keys(j, path, {"p", "delta_p", "test_norm", "tau_num", "third_term"});
  DiscretizationConfig d;
  if (const json* v = find(j, "test_norm")) {
    const std::string norm = string_at(*v, join(path, "test_norm"));
    if (norm == "standard")
      d = DiscretizationConfig::standard(1);
    else if (norm == "scaled-graph")
      d = DiscretizationConfig::scaled_graph(1);
    else
      throw ConfigError(join(path, "test_norm") + ": expected 'standard' or 'scaled-graph'");
  }
  if (const json* v = find(j, "p")) d.p = integer_at(*v, join(path, "p"));
  if (const json* v = find(j, "delta_p")) d.delta_p = integer_at(*v, join(path, "delta_p"));
  if (const json* v = find(j, "tau_num")) d.tau_num = number_at(*v, join(path, "tau_num"));
  if (const json* v = find(j, "third_term")) {
    const std::string third = string_at(*v, join(path, "third_term"));
    if (third == "adjoint")
      d.third_term = GraphThirdTerm::Adjoint;
    else if (third == "normal-shear")
      d.third_term = GraphThirdTerm::NormalShear;
    else
      throw ConfigError(join(path, "third_term") + ": expected 'adjoint' or 'normal-shear'");
  }
  wrap(path, [&] {
    d.validate();
    return 0;
  });
  return d;
}

std::vector<int> parse_int_list(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ConfigError(path + ": expected a non-empty array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const int v = integer_at(j[i], item(path, i));
    if (v < 1) throw ConfigError(item(path, i) + ": must be at least 1");
    if (!out.empty() && v <= out.back()) throw ConfigError(path + ": must be strictly increasing");
    out.push_back(v);
  }
  return out;
}

}  // namespace

Mesh RunConfig::mesh() const { return nodes.empty() ? Mesh::uniform(elements) : Mesh(nodes); }

RunConfig parse_run_config(const json& root) {
  check_keys(root, "", {"description", "parameters", "bc", "load", "boundary_values", "discretization", "mesh",
                        "n_list", "oracle", "output"});
  RunConfig rc;
  if (const json* v = find(root, "description")) string_at(*v, "description");

  {
    const json& p = required(root, "", "parameters");
    check_keys(p, "parameters", {"epsilon", "mu", "lambda"});
    const double eps = number_at(required(p, "parameters", "epsilon"), "parameters.epsilon");
    const double mu = number_at(required(p, "parameters", "mu"), "parameters.mu");
    const double lam = number_at(required(p, "parameters", "lambda"), "parameters.lambda");
    rc.problem.params = wrap("parameters", [&] { return ArchParameters(eps, mu, lam); });
  }
  rc.problem.bc = wrap("bc", [&] { return BcPair::parse(string_at(required(root, "", "bc"), "bc")); });
  if (const json* v = find(root, "load")) parse_load(*v, "load", rc.problem);
  if (const json* v = find(root, "boundary_values")) parse_boundary_values(*v, "boundary_values", rc.problem);
  wrap("boundary_values", [&] {
    essential_values(rc.problem, 0, false);
    essential_values(rc.problem, 1, false);
    return 0;
  });
  if (rc.problem.point_load_mode == PointLoadMode::EssentialTrace) {
    for (const PointLoad& pl : rc.problem.load.point_loads) {
      if (!is_essential(rc.problem.bc.at(pl.endpoint), point_load_trace(pl.component)))
        throw ConfigError("load.point_load_mode: 'essential-trace' needs the paired stress trace '" +
                          std::string(component_name(point_load_trace(pl.component))) + "' to be essential at x=" +
                          std::to_string(pl.endpoint));
    }
  }

  if (const json* v = find(root, "discretization")) rc.discretization = parse_discretization(*v, "discretization");

  if (const json* v = find(root, "mesh")) {
    check_keys(*v, "mesh", {"elements", "nodes"});
    const json* e = find(*v, "elements");
    const json* n = find(*v, "nodes");
    if (e && n) throw ConfigError("mesh: give either 'elements' or 'nodes', not both");
    if (e) {
      rc.elements = integer_at(*e, "mesh.elements");
      if (rc.elements < 1) throw ConfigError("mesh.elements: must be at least 1");
    }
    if (n) {
      if (!n->is_array()) throw ConfigError("mesh.nodes: expected an array of numbers");
      for (std::size_t i = 0; i < n->size(); ++i) rc.nodes.push_back(number_at((*n)[i], item("mesh.nodes", i)));
      wrap("mesh.nodes", [&] { return Mesh(rc.nodes); });
    }
  }
  if (const json* v = find(root, "n_list")) rc.n_list = parse_int_list(*v, "n_list");

  if (const json* v = find(root, "oracle")) {
    check_keys(*v, "oracle", {"elements", "stages"});
    if (const json* e = find(*v, "elements")) rc.oracle.elements = integer_at(*e, "oracle.elements");
    if (const json* s = find(*v, "stages")) rc.oracle.stages = integer_at(*s, "oracle.stages");
    if (rc.oracle.elements < 1) throw ConfigError("oracle.elements: must be at least 1");
    if (rc.oracle.stages < 1 || rc.oracle.stages > 32) throw ConfigError("oracle.stages: must lie in [1, 32]");
  }

  if (const json* v = find(root, "output")) {
    check_keys(*v, "output", {"samples_per_element", "prefix", "format"});
    if (const json* s = find(*v, "samples_per_element")) {
      rc.output.samples_per_element = integer_at(*s, "output.samples_per_element");
      if (rc.output.samples_per_element < 2) throw ConfigError("output.samples_per_element: must be at least 2");
    }
    if (const json* p = find(*v, "prefix")) {
      rc.output.prefix = string_at(*p, "output.prefix");
      if (rc.output.prefix.find('/') != std::string::npos || rc.output.prefix.find('\\') != std::string::npos)
        throw ConfigError("output.prefix: must not contain path separators");
    }
    if (const json* f = find(*v, "format"))
      if (string_at(*f, "output.format") != "csv") throw ConfigError("output.format: only 'csv' is supported");
  }
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  json root;
  try {
    root = json::parse(in, nullptr, true, false);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_run_config(root);
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw ConfigError("--n-list: '" + tok + "' is not an integer");
    }
    if (used != tok.size()) throw ConfigError("--n-list: '" + tok + "' is not an integer");
    if (v < 1) throw ConfigError("--n-list: entries must be at least 1");
    if (!out.empty() && v <= out.back()) throw ConfigError("--n-list: entries must be strictly increasing");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("--n-list: empty list");
  return out;
}

}  // namespace archdpg::cli
