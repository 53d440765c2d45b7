// vipbench: run and compare variational-inequality solvers on the benchmark
// problems.
//
//   vipbench run --config cfg.json [--preset example2-algo3] [--out dir]
//   vipbench compare --config cfg.json --algos cg-segm,egm,yang [--out dir]
//   vipbench presets list

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "harness/config.h"
#include "harness/runner.h"

namespace {

using nlohmann::json;

// Preset first, then the config file patched on top of it.
vipbench::RunConfig ResolveConfig(const std::string& config_path,
                                  const std::string& preset_name) {
  if (preset_name.empty()) {
    if (config_path.empty()) {
      throw vipbench::ConfigError("either --config or --preset is required", 0);
    }
    return vipbench::LoadConfigFile(config_path);
  }
  const vipbench::Preset* preset = vipbench::FindPreset(preset_name);
  if (!preset) {
    throw vipbench::ConfigError("unknown preset '" + preset_name + "'", 0);
  }
  if (config_path.empty()) return vipbench::ParseConfig(preset->doc);

  // Validate the file on its own first so messages carry its line numbers.
  std::ifstream in(config_path);
  if (!in) {
    throw vipbench::ConfigError("cannot open config file '" + config_path + "'",
                                0);
  }
  std::stringstream text;
  text << in.rdbuf();
  json patch;
  try {
    patch = json::parse(text.str());
  } catch (const json::parse_error&) {
    vipbench::ParseConfigText(text.str());  // rethrows with a line reference
  }
  json merged = preset->doc;
  merged.merge_patch(patch);
  return vipbench::ParseConfig(merged, text.str());
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark harness for variational inequality solvers"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset_name;
  std::string out_dir;
  std::string algos;

  auto* run = app.add_subcommand("run", "Solve one configured problem");
  run->add_option("--config", config_path, "JSON run configuration");
  run->add_option("--preset", preset_name, "Start from a named preset");
  run->add_option("--out", out_dir,
                  std::string("Output directory (default $") +
                      vipbench::kOutDirEnv + " or cwd)");

  auto* compare = app.add_subcommand("compare", "Run several algorithms");
  compare->add_option("--config", config_path, "JSON run configuration");
  compare->add_option("--preset", preset_name, "Start from a named preset");
  compare->add_option("--algos", algos, "Comma-separated algorithm names")
      ->required();
  compare->add_option("--out", out_dir, "Output directory");

  auto* presets = app.add_subcommand("presets", "Inspect built-in presets");
  presets->add_subcommand("list", "List preset names")->final_callback([] {
    for (const auto& p : vipbench::Presets()) {
      std::cout << p.name << "  " << p.description << '\n';
    }
  });
  presets->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const auto config = ResolveConfig(config_path, preset_name);
      const int code = vipbench::Run(config, vipbench::ResolveOutDir(out_dir));
      std::cout << "run: " << config.algorithm.name << " on "
                << config.problem.kind << " -> exit " << code << '\n';
      return code;
    }
    if (compare->parsed()) {
      const auto config = ResolveConfig(config_path, preset_name);
      const auto names = SplitList(algos);
      if (names.empty()) throw vipbench::ConfigError("--algos is empty", 0);
      for (const auto& n : names) {
        const auto& known = vipbench::AlgorithmNames();
        if (std::find(known.begin(), known.end(), n) == known.end()) {
          throw vipbench::ConfigError("unknown algorithm '" + n + "'", 0);
        }
      }
      return vipbench::Compare(config, names, vipbench::ResolveOutDir(out_dir));
    }
  } catch (const vipbench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return vipbench::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return vipbench::kExitConfigError;
  }
  return 0;
}
