#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mdscm/cli/config.hpp"
#include "mdscm/cli/runner.hpp"

namespace cli = mdscm::cli;

int main(int argc, char** argv) {
  CLI::App app{"Multi-domain spectral collocation for variable-order fractional equations"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "flat JSON config file")->check(CLI::ExistingFile);

  const auto& fields = cli::config_fields();
  std::vector<std::string> values(fields.size());
  std::vector<CLI::Option*> options;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].key == "command") {
      options.push_back(nullptr);
      continue;
    }
    options.push_back(app.add_option("--" + fields[i].key, values[i], fields[i].help));
  }

  std::string command;
  for (const char* name : {"helmholtz", "burgers", "eigen", "cond", "converge"}) {
    app.add_subcommand(name, std::string("run the ") + name + " experiment")->callback([&command, name] {
      command = name;
    });
  }
  app.add_subcommand("run", "run the command named by the config or preset");
  auto* list = app.add_subcommand("presets", "list the named presets");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const auto& p : cli::presets()) std::cout << p.name << "  " << p.description << '\n';
    return 0;
  }

  try {
    std::map<std::string, std::string> overrides;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (options[i] != nullptr && options[i]->count() > 0) overrides[fields[i].key] = values[i];
    }
    if (!command.empty()) overrides["command"] = command;
    const nlohmann::json file = config_path.empty() ? nlohmann::json::object() : cli::load_config_file(config_path);
    std::optional<std::string> env_dir;
    if (const char* e = std::getenv("MDSCM_OUTPUT_DIR"); e != nullptr && *e != '\0') env_dir = e;

    const auto config = cli::resolve_config(file, overrides, env_dir);
    const auto result = cli::run(config);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << result.summary << std::endl;
    return 0;
  } catch (const cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
