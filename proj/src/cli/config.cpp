#include "mdscm/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "mdscm/cli/order_expr.hpp"

namespace mdscm::cli {

using json = nlohmann::json;
using Type = FieldInfo::Type;

std::string to_string(Command c) {
  switch (c) {
    case Command::helmholtz: return "helmholtz";
    case Command::burgers: return "burgers";
    case Command::eigen: return "eigen";
    case Command::cond: return "cond";
    case Command::converge: return "converge";
  }
  return "?";
}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += "\n  " + s;
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid configuration:" + join(problems)), problems_(std::move(problems)) {}

const std::vector<FieldInfo>& config_fields() {
  static const std::vector<FieldInfo> fields = {
      {"command", Type::string, "helmholtz, burgers, eigen, cond or converge"},
      {"preset", Type::string, "named preset supplying defaults"},
      {"name", Type::string, "stem of the output file names"},
      {"mesh", Type::string, "uniform, graded, geometric or composite"},
      {"x_left", Type::number, "left end of the domain"},
      {"x_right", Type::number, "right end of the domain"},
      {"M", Type::integer, "number of elements"},
      {"N", Type::integer, "polynomial degree per element"},
      {"q", Type::number, "grading exponent (graded) or ratio (geometric, composite)"},
      {"split", Type::number, "composite: end of the geometric part"},
      {"m_geo", Type::integer, "composite: elements in the geometric part"},
      {"c", Type::number, "Jacobi parameter c"},
      {"d", Type::number, "Jacobi parameter d"},
      {"alpha", Type::order, "fractional order: number, expression in x and t, or named case"},
      {"problem", Type::string, "helmholtz right-hand side: sine or lowreg"},
      {"u0", Type::string, "burgers initial condition, expression in x"},
      {"tau", Type::number, "penalty parameter"},
      {"lambda", Type::number, "Helmholtz parameter"},
      {"epsilon", Type::number, "burgers viscosity"},
      {"dt", Type::number, "time step"},
      {"t_final", Type::number, "final time"},
      {"snapshots", Type::numbers, "burgers snapshot times"},
      {"penalty_first_step", Type::boolean, "include R in the explicit first step"},
      {"stability_gate", Type::boolean, "check the spectrum of D + R before marching"},
      {"sweep", Type::string, "converge: p (vary N) or h (vary M)"},
      {"values", Type::integers, "converge: N or M values; cond: M values"},
      {"taus", Type::numbers, "converge and cond: penalty values"},
      {"tail_mode", Type::string, "auto, recurrence or quadrature"},
      {"hybrid_delta", Type::number, "recurrence radius beyond an element"},
      {"tail_points", Type::integer, "tail quadrature points, 0 for automatic"},
      {"output_dir", Type::string, "directory for CSV files"},
  };
  return fields;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> list = [] {
    std::vector<Preset> p;
    auto eig = [&](std::string name, std::string desc, double alpha, int M, int N, double tau) {
      p.push_back({std::move(name), std::move(desc),
                   json{{"command", "eigen"}, {"mesh", "uniform"}, {"alpha", alpha}, {"M", M},
                        {"N", N}, {"tau", tau}}});
    };
    eig("fig3-a1.01", "Fig. 3 left: spectrum of D, alpha=1.01, M=8, N=4, tau=0", 1.01, 8, 4, 0.0);
    eig("fig3-a1.99", "Fig. 3 right: spectrum of D, alpha=1.99, M=8, N=4, tau=0", 1.99, 8, 4, 0.0);
    eig("fig4-a1.01", "Fig. 4 left: spectrum of D, alpha=1.01, M=16, N=3, tau=0", 1.01, 16, 3, 0.0);
    eig("fig4-a1.99", "Fig. 4 right: spectrum of D, alpha=1.99, M=16, N=3, tau=0", 1.99, 16, 3, 0.0);
    eig("fig5-a1.01", "Fig. 5 left: spectrum of D+R, alpha=1.01, M=8, N=4, tau=1", 1.01, 8, 4, 1.0);
    eig("fig5-a1.99", "Fig. 5 right: spectrum of D+R, alpha=1.99, M=8, N=4, tau=100", 1.99, 8, 4, 100.0);
    eig("fig6-a1.01", "Fig. 6 left: spectrum of D+R, alpha=1.01, M=16, N=3, tau=10", 1.01, 16, 3, 10.0);
    eig("fig6-a1.99", "Fig. 6 right: spectrum of D+R, alpha=1.99, M=16, N=3, tau=10", 1.99, 16, 3, 10.0);
    p.push_back({"fig7", "Fig. 7: L2 condition number of the Helmholtz matrix, alpha=1.5, N=4, M=8,16,32, tau=0,1000",
                 json{{"command", "cond"}, {"mesh", "uniform"}, {"alpha", 1.5}, {"N", 4}, {"lambda", 0.0},
                      {"values", {8, 16, 32}}, {"taus", {0.0, 1000.0}}}});
    p.push_back({"ex4.1-const", "Example 4.1 (Fig. 8): u=sin(pi x), alpha=1.5, lambda=1, M=4, N=16, tau=1000",
                 json{{"command", "helmholtz"}, {"problem", "sine"}, {"mesh", "uniform"}, {"alpha", 1.5},
                      {"lambda", 1.0}, {"M", 4}, {"N", 16}, {"tau", 1000.0}}});
    p.push_back({"ex4.1-var", "Example 4.1 (Fig. 8): u=sin(pi x), alpha=1.1+(x+1)/2.5, lambda=1, M=4, N=16, tau=1000",
                 json{{"command", "helmholtz"}, {"problem", "sine"}, {"mesh", "uniform"},
                      {"alpha", "1.1+(x+1)/2.5"}, {"lambda", 1.0}, {"M", 4}, {"N", 16}, {"tau", 1000.0}}});
    p.push_back({"ex4.1-psweep", "Example 4.1 (Fig. 8 left): p-refinement, alpha=1.5, M=4, N=4..20, tau=0,1000",
                 json{{"command", "converge"}, {"problem", "sine"}, {"mesh", "uniform"}, {"alpha", 1.5},
                      {"lambda", 1.0}, {"M", 4}, {"sweep", "p"}, {"values", {4, 8, 12, 16, 20}},
                      {"taus", {0.0, 1000.0}}}});
    p.push_back({"ex4.1-hsweep", "Example 4.1 (Fig. 8 right): h-refinement, alpha=1.5, N=4, M=4..32, tau=0,1000",
                 json{{"command", "converge"}, {"problem", "sine"}, {"mesh", "uniform"}, {"alpha", 1.5},
                      {"lambda", 1.0}, {"N", 4}, {"sweep", "h"}, {"values", {4, 8, 16, 32}},
                      {"taus", {0.0, 1000.0}}}});
    p.push_back({"ex4.2", "Example 4.2 (Figs. 10-11): u=(1-x)(1+x)^(alpha-1), alpha=1.5, lambda=0, geometric q=0.5, M=16, N=4, tau=1000",
                 json{{"command", "helmholtz"}, {"problem", "lowreg"}, {"mesh", "geometric"}, {"q", 0.5},
                      {"alpha", 1.5}, {"lambda", 0.0}, {"M", 16}, {"N", 4}, {"tau", 1000.0}}});
    p.push_back({"ex4.2-hsweep", "Example 4.2 (Figs. 10-11): geometric q=0.5, N=4, M=4..24, tau=0,1000",
                 json{{"command", "converge"}, {"problem", "lowreg"}, {"mesh", "geometric"}, {"q", 0.5},
                      {"alpha", 1.5}, {"lambda", 0.0}, {"N", 4}, {"sweep", "h"},
                      {"values", {4, 8, 12, 16, 20, 24}}, {"taus", {0.0, 1000.0}}}});
    auto burgers = [&](std::string name, std::string desc, json alpha, double tau) {
      p.push_back({std::move(name), std::move(desc),
                   json{{"command", "burgers"}, {"mesh", "uniform"}, {"alpha", std::move(alpha)},
                        {"epsilon", 1.0}, {"M", 100}, {"N", 3}, {"tau", tau}, {"dt", 1e-3},
                        {"t_final", 1.0}, {"u0", "sin(pi*x)"}, {"snapshots", {0.25, 0.5, 0.75, 1.0}}}});
    };
    burgers("burgers-case1", "Example 4.3 Case 1 (Fig. 12, reduced to M=100): alpha=1.5, N=3, tau=1e3, dt=1e-3", 1.5, 1e3);
    burgers("burgers-case2", "Example 4.3 Case 2 (Fig. 15 upper left): alpha=1+(5+4x)/10, M=100, N=3, tau=1e5", "case2", 1e5);
    burgers("burgers-case3", "Example 4.3 Case 3 (Fig. 15 upper right): alpha=1+(5-4x)/10, M=100, N=3, tau=1e5", "case3", 1e5);
    burgers("burgers-case4", "Example 4.3 Case 4 (Fig. 15 lower left): alpha=4/5|sin(10 pi (x-t))|+1.1, M=100, N=3, tau=1e5", "case4", 1e5);
    burgers("burgers-case5", "Example 4.3 Case 5 (Fig. 15 lower right): alpha=4/5|x t|+1.1, M=100, N=3, tau=1e5", "case5", 1e5);
    return p;
  }();
  return list;
}

const Preset* find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::optional<std::string> named_order(const std::string& name) {
  static const std::map<std::string, std::string> cases = {
      {"case2", "1+(5+4*x)/10"},
      {"case3", "1+(5-4*x)/10"},
      {"case4", "4/5*abs(sin(10*pi*(x-t)))+1.1"},
      {"case5", "4/5*abs(x*t)+1.1"},
      {"helmholtz-variable", "1.1+(x+1)/2.5"},
  };
  auto it = cases.find(name);
  if (it == cases.end()) return std::nullopt;
  return it->second;
}

namespace {

std::optional<double> parse_number(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e9; }

}  // namespace

OrderField make_order_field(const std::string& alpha, double x_left, double x_right, double t_max) {
  if (auto v = parse_number(alpha)) return OrderField::constant(*v);
  const std::string text = named_order(alpha).value_or(alpha);
  const auto expr = OrderExpr::parse(text);
  if (!expr.uses_x() && !expr.uses_t()) return OrderField::constant(expr(0.0, 0.0));

  const int nx = expr.uses_x() ? 2001 : 1;
  const int nt = expr.uses_t() ? 201 : 1;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < nx; ++i) {
    const double x = nx == 1 ? x_left : x_left + (x_right - x_left) * i / (nx - 1);
    for (int j = 0; j < nt; ++j) {
      const double t = nt == 1 ? 0.0 : t_max * j / (nt - 1);
      const double a = expr(x, t);
      if (!std::isfinite(a)) {
        std::ostringstream os;
        os << "order '" << text << "' is not finite at (x=" << x << ", t=" << t << ")";
        throw std::domain_error(os.str());
      }
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
  }
  const double k = std::ceil(hi);
  if (!(lo > 0.0 && hi < 2.0) || std::ceil(lo) != k) {
    std::ostringstream os;
    os << "order '" << text << "' ranges over [" << lo << ", " << hi
       << "], which is not inside (0,1) or (1,2)";
    throw std::domain_error(os.str());
  }
  const double gap = 10 * OrderField::kIntegerGap;
  return OrderField::function([expr](double x, double t) { return expr(x, t); }, k - 1 + gap, k - gap,
                              expr.uses_t(), text);
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({"config file '" + path + "': " + e.what()});
  }
  if (!j.is_object()) throw ConfigError({"config file '" + path + "' must hold a JSON object"});
  return j;
}

namespace {

const FieldInfo* find_field(const std::string& key) {
  for (const auto& f : config_fields()) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

// Converts command-line text to the JSON value of a field; nullopt on failure.
std::optional<json> from_text(const FieldInfo& f, const std::string& text) {
  switch (f.type) {
    case Type::string: return json(text);
    case Type::order: {
      if (auto v = parse_number(text)) return json(*v);
      return json(text);
    }
    case Type::number: {
      if (auto v = parse_number(text)) return json(*v);
      return std::nullopt;
    }
    case Type::integer: {
      auto v = parse_number(text);
      if (v && is_integer(*v)) return json(static_cast<int>(*v));
      return std::nullopt;
    }
    case Type::boolean:
      if (text == "true" || text == "1") return json(true);
      if (text == "false" || text == "0") return json(false);
      return std::nullopt;
    case Type::numbers:
    case Type::integers: {
      json arr = json::array();
      if (text.empty()) return arr;
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto v = parse_number(item);
        if (!v || (f.type == Type::integers && !is_integer(*v))) return std::nullopt;
        if (f.type == Type::integers) {
          arr.push_back(static_cast<int>(*v));
        } else {
          arr.push_back(*v);
        }
      }
      return arr;
    }
  }
  return std::nullopt;
}

const char* type_name(Type t) {
  switch (t) {
    case Type::number: return "a number";
    case Type::integer: return "an integer";
    case Type::string: return "a string";
    case Type::boolean: return "a boolean";
    case Type::numbers: return "a list of numbers";
    case Type::integers: return "a list of integers";
    case Type::order: return "a number or an expression string";
  }
  return "?";
}

bool has_type(const json& v, Type t) {
  switch (t) {
    case Type::number: return v.is_number();
    case Type::integer: return v.is_number_integer() || (v.is_number() && is_integer(v.get<double>()));
    case Type::string: return v.is_string();
    case Type::boolean: return v.is_boolean();
    case Type::order: return v.is_number() || v.is_string();
    case Type::numbers:
    case Type::integers:
      if (!v.is_array()) return false;
      for (const auto& e : v) {
        if (!has_type(e, t == Type::numbers ? Type::number : Type::integer)) return false;
      }
      return true;
  }
  return false;
}

std::string order_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v.get<double>());
  return std::string(buf, res.ptr);
}

class Validator {
 public:
  explicit Validator(const json& merged) : j_(merged) {}

  std::vector<std::string> errors;

  bool has(const char* key) const { return j_.contains(key); }

  template <class T>
  T get(const char* key, T fallback) const {
    if (!j_.contains(key) || broken_.count(key)) return fallback;
    return j_.at(key).get<T>();
  }

  void mark_broken(const std::string& key) { broken_.insert(key); }

  void require(bool ok, const std::string& message) {
    if (!ok) errors.push_back(message);
  }

 private:
  const json& j_;
  std::set<std::string> broken_;
};

}  // namespace

ExperimentConfig resolve_config(const json& file, const std::map<std::string, std::string>& overrides,
                                const std::optional<std::string>& env_output_dir) {
  std::vector<std::string> errors;
  json cli = json::object();
  for (const auto& [key, text] : overrides) {
    const auto* f = find_field(key);
    if (f == nullptr) {
      errors.push_back("unknown option '" + key + "'");
      continue;
    }
    if (auto v = from_text(*f, text)) {
      cli[key] = *v;
    } else {
      errors.push_back("option '" + key + "' must be " + type_name(f->type) + ", got '" + text + "'");
    }
  }
  if (!file.is_object()) {
    errors.push_back("configuration must be a JSON object");
  } else {
    for (const auto& [key, value] : file.items()) {
      if (find_field(key) == nullptr) errors.push_back("unknown key '" + key + "'");
    }
  }

  // preset < file < environment < command line
  json merged = json::object();
  std::string preset_name;
  if (cli.contains("preset")) {
    preset_name = cli["preset"].get<std::string>();
  } else if (file.is_object() && file.contains("preset") && file["preset"].is_string()) {
    preset_name = file["preset"].get<std::string>();
  }
  if (!preset_name.empty()) {
    if (const auto* p = find_preset(preset_name)) {
      merged = p->values;
    } else {
      errors.push_back("unknown preset '" + preset_name + "'");
    }
  }
  if (file.is_object()) {
    for (const auto& [key, value] : file.items()) {
      if (find_field(key) != nullptr) merged[key] = value;
    }
  }
  if (env_output_dir) merged["output_dir"] = *env_output_dir;
  for (const auto& [key, value] : cli.items()) merged[key] = value;

  Validator v(merged);
  v.errors = std::move(errors);
  for (const auto& [key, value] : merged.items()) {
    const auto* f = find_field(key);
    if (f != nullptr && !has_type(value, f->type)) {
      v.errors.push_back("'" + key + "' must be " + type_name(f->type));
      v.mark_broken(key);
    }
  }

  ExperimentConfig c;
  const std::string command = v.get<std::string>("command", "");
  bool command_ok = true;
  if (command.empty()) {
    v.errors.push_back("no command given (helmholtz, burgers, eigen, cond or converge)");
    command_ok = false;
  } else if (command == "helmholtz") {
    c.command = Command::helmholtz;
  } else if (command == "burgers") {
    c.command = Command::burgers;
  } else if (command == "eigen") {
    c.command = Command::eigen;
  } else if (command == "cond") {
    c.command = Command::cond;
  } else if (command == "converge") {
    c.command = Command::converge;
  } else {
    v.errors.push_back("unknown command '" + command + "'");
    command_ok = false;
  }

  c.name = v.get<std::string>("name", preset_name.empty() ? command : preset_name);
  v.require(!c.name.empty() && c.name.find_first_of("/\\") == std::string::npos,
            "'name' must be a non-empty file stem without path separators");

  // mesh
  bool mesh_ok = true;
  try {
    c.mesh.kind = mesh_kind_from_string(v.get<std::string>("mesh", "uniform"));
  } catch (const std::invalid_argument& e) {
    v.errors.push_back(e.what());
    mesh_ok = false;
  }
  c.mesh.x_left = v.get<double>("x_left", c.mesh.x_left);
  c.mesh.x_right = v.get<double>("x_right", c.mesh.x_right);
  c.mesh.M = v.get<int>("M", c.mesh.M);
  c.mesh.N = v.get<int>("N", c.mesh.N);
  c.mesh.q = v.get<double>("q", c.mesh.kind == MeshSpec::Kind::graded ? 2.0 : c.mesh.q);
  c.mesh.split = v.get<double>("split", c.mesh.split);
  c.mesh.m_geo = v.get<int>("m_geo", c.mesh.m_geo);
  c.mesh.params.c = v.get<double>("c", 0.0);
  c.mesh.params.d = v.get<double>("d", 0.0);
  v.require(c.mesh.x_left < c.mesh.x_right, "'x_left' must be below 'x_right'");
  v.require(c.mesh.M >= 1, "'M' must be at least 1");
  v.require(c.mesh.N >= 2, "'N' must be at least 2");
  v.require(c.mesh.params.c > -1.0 && c.mesh.params.d > -1.0, "Jacobi parameters 'c' and 'd' must exceed -1");
  if (mesh_ok) {
    switch (c.mesh.kind) {
      case MeshSpec::Kind::uniform: break;
      case MeshSpec::Kind::graded: v.require(c.mesh.q > 1.0, "graded mesh needs 'q' > 1"); break;
      case MeshSpec::Kind::geometric:
        v.require(c.mesh.q > 0.0 && c.mesh.q < 1.0, "geometric mesh needs 0 < 'q' < 1");
        break;
      case MeshSpec::Kind::composite:
        v.require(c.mesh.q > 0.0 && c.mesh.q < 1.0, "composite mesh needs 0 < 'q' < 1");
        v.require(c.mesh.split > c.mesh.x_left && c.mesh.split < c.mesh.x_right,
                  "composite mesh needs 'split' inside the domain");
        v.require(c.mesh.m_geo >= 0 && c.mesh.m_geo < c.mesh.M, "composite mesh needs 0 <= 'm_geo' < 'M'");
        break;
    }
  }

  // physics
  c.problem = v.get<std::string>("problem", c.problem);
  c.u0 = v.get<std::string>("u0", c.u0);
  c.tau = v.get<double>("tau", c.tau);
  c.lambda = v.get<double>("lambda", c.lambda);
  c.epsilon = v.get<double>("epsilon", c.epsilon);
  c.dt = v.get<double>("dt", c.dt);
  c.t_final = v.get<double>("t_final", c.t_final);
  c.snapshots = v.get<std::vector<double>>("snapshots", {});
  c.penalty_first_step = v.get<bool>("penalty_first_step", false);
  c.stability_gate = v.get<bool>("stability_gate", true);
  c.sweep = v.get<std::string>("sweep", c.sweep);
  c.values = v.get<std::vector<int>>("values", {});
  c.taus = v.get<std::vector<double>>("taus", {});
  c.output_dir = v.get<std::string>("output_dir", c.output_dir);
  v.require(std::isfinite(c.tau) && c.tau >= 0.0, "'tau' must be a finite value >= 0");
  v.require(std::isfinite(c.lambda), "'lambda' must be finite");
  v.require(!c.output_dir.empty(), "'output_dir' must not be empty");

  const std::string tail = v.get<std::string>("tail_mode", "auto");
  if (tail == "auto") {
    c.assembly.tail_mode = TailMode::automatic;
  } else if (tail == "recurrence") {
    c.assembly.tail_mode = TailMode::recurrence;
  } else if (tail == "quadrature") {
    c.assembly.tail_mode = TailMode::quadrature;
  } else {
    v.errors.push_back("'tail_mode' must be auto, recurrence or quadrature, got '" + tail + "'");
  }
  c.assembly.frac.hybrid_delta = v.get<double>("hybrid_delta", c.assembly.frac.hybrid_delta);
  c.assembly.frac.tail_points = v.get<int>("tail_points", c.assembly.frac.tail_points);
  v.require(c.assembly.frac.hybrid_delta > 0.0, "'hybrid_delta' must be positive");
  v.require(c.assembly.frac.tail_points >= 0, "'tail_points' must be >= 0");

  // order field
  const bool timed = command_ok && c.command == Command::burgers;
  if (v.has("alpha")) {
    c.alpha = order_text(merged["alpha"]);
    if (has_type(merged["alpha"], Type::order)) {
      try {
        const auto field = make_order_field(c.alpha, c.mesh.x_left, c.mesh.x_right, timed ? c.t_final : 0.0);
        if (command_ok && c.command != Command::eigen) {
          v.require(field.branch() == 2, "'alpha' must lie in (1,2) for " + command);
        }
        if (field.time_dependent() && command_ok && c.command != Command::burgers) {
          v.errors.push_back("'alpha' depends on t, which only the burgers command supports");
        }
        if (command_ok && c.problem == "lowreg" && !field.is_constant()) {
          v.errors.push_back("problem 'lowreg' needs a constant 'alpha'");
        }
      } catch (const std::exception& e) {
        v.errors.push_back(std::string("'alpha': ") + e.what());
      }
    }
  } else {
    v.errors.push_back("'alpha' is required");
  }

  if (command_ok) {
    switch (c.command) {
      case Command::helmholtz:
      case Command::converge:
        v.require(c.problem == "sine" || c.problem == "lowreg", "'problem' must be sine or lowreg, got '" + c.problem + "'");
        v.require(c.mesh.x_left == -1.0 && c.mesh.x_right == 1.0,
                  "the Helmholtz problems are posed on [-1, 1]; set x_left=-1 and x_right=1");
        break;
      default: break;
    }
    if (c.command == Command::burgers) {
      v.require(c.epsilon > 0.0, "'epsilon' must be positive");
      v.require(c.dt > 0.0, "'dt' must be positive");
      v.require(c.t_final > 0.0, "'t_final' must be positive");
      if (c.dt > 0.0 && c.t_final > 0.0) {
        const double steps = std::round(c.t_final / c.dt);
        v.require(steps >= 1 && std::fabs(steps * c.dt - c.t_final) <= 1e-12 * std::max(1.0, c.t_final),
                  "'dt' must divide 't_final'");
      }
      for (double s : c.snapshots) {
        v.require(s >= 0.0 && s <= c.t_final, "snapshot time " + order_text(json(s)) + " is outside [0, t_final]");
      }
      try {
        const auto u0 = OrderExpr::parse(c.u0);
        v.require(!u0.uses_t(), "'u0' must not depend on t");
      } catch (const ExprError& e) {
        v.errors.push_back(std::string("'u0': ") + e.what());
      }
    }
    if (c.command == Command::converge) {
      v.require(c.sweep == "p" || c.sweep == "h", "'sweep' must be p or h, got '" + c.sweep + "'");
      v.require(!c.values.empty(), "'values' must list at least one N or M");
      v.require(!c.taus.empty(), "'taus' must list at least one penalty value");
      const int floor = c.sweep == "p" ? 2 : 1;
      for (int n : c.values) {
        v.require(n >= floor, "sweep value " + std::to_string(n) + " is below " + std::to_string(floor));
      }
    }
    if (c.command == Command::cond) {
      for (int m : c.values) v.require(m >= 1, "'values' entries (M) must be at least 1");
    }
    if (c.command == Command::converge || c.command == Command::cond) {
      for (double t : c.taus) v.require(std::isfinite(t) && t >= 0.0, "'taus' entries must be finite and >= 0");
    }
  }

  if (!v.errors.empty()) throw ConfigError(std::move(v.errors));
  return c;
}

}  // namespace mdscm::cli
