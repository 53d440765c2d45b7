#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace vipbench {

// Thrown for any malformed or out-of-range configuration. `line` is the
// 1-based line in the source text the problem was traced to (0 if unknown).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line)
      : std::runtime_error(message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ScheduleConfig {
  double c = 1.0;
  double a = 1.0;
  double b = 1.0;
  double p = 1.0;
};

struct ProblemConfig {
  std::string kind = "sun";  // sun | ball | game
  std::int64_t dim = 100;    // sun, ball
  double radius = 5.0;       // ball
  double shift = 7.0;        // ball
  std::int64_t houses = 50;  // game
  double alpha = 0.8;        // game: distance decay
  std::string wealth_mode = "uniform";  // game: uniform | constant
  double wealth_value = 50.0;           // game: wealth in constant mode
  std::uint64_t seed = 1;
};

struct AlgorithmConfig {
  std::string name = "cg-segm";  // cg-segm | egm | popov | segm | yang
  // cg-segm; mu and lambda0 are shared with yang.
  double mu = 0.05;
  double psi = 1.0;
  double lambda0 = 0.03;
  double anchor = 0.1;  // rho = anchor * ones, projected onto C
  ScheduleConfig alpha_schedule{1.0, 2.0, 1.0, 0.01};
  ScheduleConfig gamma_schedule{1.0, 1.0, 1.0, 1.2};
  // egm, popov, segm; defaults to 0.9/L (0.9/(3L) for popov).
  std::optional<double> lambda;
};

struct StoppingConfig {
  std::string criterion = "residual";  // residual | gap_xw
  double tol = 1e-4;
  std::int64_t max_iters = 10000;
};

struct OutputConfig {
  std::string trace = "trace.csv";
  std::string summary = "summary.csv";
  // Off by default so traces are byte-reproducible; when on, elapsed_s
  // carries wall-clock seconds.
  bool trace_timing = false;
};

struct RunConfig {
  ProblemConfig problem;
  AlgorithmConfig algorithm;
  StoppingConfig stopping;
  OutputConfig output;
};

const std::vector<std::string>& AlgorithmNames();

// Parses a configuration document. Omitted fields take the defaults for the
// chosen problem kind and algorithm; unknown keys are rejected. `source` is
// the raw text the document came from, used for line references.
RunConfig ParseConfig(const nlohmann::json& doc, std::string_view source = {});
RunConfig ParseConfigText(std::string_view text);
RunConfig LoadConfigFile(const std::string& path);

// Fully resolved configuration, suitable for reproducing a run.
nlohmann::json ToJson(const RunConfig& config);

// The same configuration with the algorithm replaced by `name` and its
// parameter block reset to that algorithm's defaults for the problem.
RunConfig WithAlgorithm(const RunConfig& config, const std::string& name);

struct Preset {
  std::string name;
  std::string description;
  nlohmann::json doc;
};

const std::vector<Preset>& Presets();
const Preset* FindPreset(std::string_view name);

}  // namespace vipbench
