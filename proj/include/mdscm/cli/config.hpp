#ifndef MDSCM_CLI_CONFIG_HPP_
#define MDSCM_CLI_CONFIG_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mdscm/assembly.hpp"
#include "mdscm/fracops.hpp"
#include "mdscm/mesh.hpp"

namespace mdscm::cli {

enum class Command { helmholtz, burgers, eigen, cond, converge };

std::string to_string(Command c);

/// Fully validated experiment description.
struct ExperimentConfig {
  Command command = Command::helmholtz;
  std::string name;
  MeshSpec mesh;
  std::string alpha;  // number, expression over (x, t), or named order case
  std::string problem = "sine";
  std::string u0 = "sin(pi*x)";
  double tau = 0.0;
  double lambda = 0.0;
  double epsilon = 1.0;
  double dt = 1e-3;
  double t_final = 1.0;
  std::vector<double> snapshots;
  bool penalty_first_step = false;
  bool stability_gate = true;
  std::string sweep = "p";
  std::vector<int> values;
  std::vector<double> taus;
  AssemblyOptions assembly;
  std::string output_dir = ".";
};

/// Every violation found while reading or validating a configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct FieldInfo {
  enum class Type { number, integer, string, boolean, numbers, integers, order };
  std::string key;
  Type type;
  std::string help;
};

/// Keys accepted in config files; each also exists as a --key command-line flag.
const std::vector<FieldInfo>& config_fields();

struct Preset {
  std::string name;
  std::string description;
  nlohmann::json values;
};

const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

/// Parses a flat JSON object from a file; throws ConfigError.
nlohmann::json load_config_file(const std::string& path);

/// Layers preset < file < output-dir environment value < command-line
/// overrides (given as text), then validates. All problems are reported in a
/// single ConfigError.
ExperimentConfig resolve_config(const nlohmann::json& file,
                                const std::map<std::string, std::string>& overrides,
                                const std::optional<std::string>& env_output_dir = std::nullopt);

/// Expression text of a named order case, or nullopt.
std::optional<std::string> named_order(const std::string& name);

/// Order field for a number, expression or named case. The bounds of an
/// expression are the open branch (k-1, k) that its samples over
/// [x_left, x_right] x [0, t_max] fall in.
OrderField make_order_field(const std::string& alpha, double x_left, double x_right, double t_max);

}  // namespace mdscm::cli

#endif  // MDSCM_CLI_CONFIG_HPP_
