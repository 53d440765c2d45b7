#include "harness/config.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace vipbench {
namespace {

using nlohmann::json;

// Best-effort mapping from a key to the line it appears on, for messages.
class LineLocator {
 public:
  explicit LineLocator(std::string_view source) : source_(source) {}

  int LineOf(std::string_view key) const {
    if (source_.empty()) return 0;
    const std::string quoted = "\"" + std::string(key) + "\"";
    const auto pos = source_.find(quoted);
    if (pos == std::string_view::npos) return 0;
    return 1 + static_cast<int>(std::count(source_.begin(),
                                           source_.begin() + pos, '\n'));
  }

 private:
  std::string_view source_;
};

[[noreturn]] void Fail(const LineLocator& where, std::string_view key,
                       const std::string& message) {
  const int line = where.LineOf(key);
  std::ostringstream os;
  if (line > 0) os << "line " << line << ": ";
  os << message;
  throw ConfigError(os.str(), line);
}

// Reads typed fields out of one JSON object and rejects leftovers.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path, const LineLocator& where)
      : obj_(obj), path_(std::move(path)), where_(where) {
    if (!obj_.is_object()) {
      Fail(where_, path_, "'" + path_ + "' must be an object");
    }
  }

  template <typename T>
  void Read(const char* key, T& out) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      if constexpr (std::is_same_v<T, std::string>) {
        if (!it->is_string()) throw std::runtime_error("expected a string");
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!it->is_boolean()) throw std::runtime_error("expected a boolean");
      } else if constexpr (std::is_integral_v<T>) {
        if (!it->is_number_integer()) {
          throw std::runtime_error("expected an integer");
        }
        if constexpr (std::is_unsigned_v<T>) {
          if (!it->is_number_unsigned() && it->get<std::int64_t>() < 0) {
            throw std::runtime_error("expected a nonnegative integer");
          }
        }
      } else {
        if (!it->is_number()) throw std::runtime_error("expected a number");
      }
      out = it->get<T>();
    } catch (const std::exception& e) {
      Fail(where_, key, "'" + path_ + "." + key + "': " + e.what());
    }
  }

  void Read(const char* key, std::optional<double>& out) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end() || it->is_null()) return;
    if (!it->is_number()) {
      Fail(where_, key, "'" + path_ + "." + key + "': expected a number");
    }
    out = it->get<double>();
  }

  void Read(const char* key, ScheduleConfig& out) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end()) return;
    ObjectReader sub(*it, path_ + "." + key, where_);
    sub.Read("c", out.c);
    sub.Read("a", out.a);
    sub.Read("b", out.b);
    sub.Read("p", out.p);
    sub.Finish();
  }

  const json* Child(const char* key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void Finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.contains(key)) {
        Fail(where_, key, "unknown key '" + path_ + "." + key + "'");
      }
    }
  }

 private:
  const json& obj_;
  std::string path_;
  const LineLocator& where_;
  std::set<std::string, std::less<>> seen_;
};

ProblemConfig ProblemDefaults(const std::string& kind) {
  ProblemConfig p;
  p.kind = kind;
  if (kind == "sun") p.dim = 100;
  if (kind == "ball") p.dim = 50;
  if (kind == "game") p.dim = 2 * p.houses;
  return p;
}

AlgorithmConfig AlgorithmDefaults(const std::string& kind,
                                  const std::string& name) {
  AlgorithmConfig a;
  a.name = name;
  if (name == "cg-segm") {
    // Shared schedule alpha_j = 1/(2j+1)^0.01, Gamma_j = 1/(j+1)^1.2.
    a.mu = 0.05;
    a.lambda0 = 0.03;
    a.anchor = 0.1;
    if (kind == "ball") a.anchor = 0.2;
    if (kind == "game") {
      a.mu = 0.07;
      a.anchor = 0.2;
    }
  } else if (name == "yang") {
    a.mu = 0.5;
    a.lambda0 = 0.5;
  }
  return a;
}

StoppingConfig StoppingDefaults(const std::string& kind) {
  StoppingConfig s;
  if (kind == "sun") {
    s.tol = 1e-4;
    s.max_iters = 10000;
  } else if (kind == "ball") {
    s.tol = 1e-4;
    s.max_iters = 5000;
  } else if (kind == "game") {
    s.tol = 1e-5;
    s.max_iters = 2000000;
  }
  return s;
}

void CheckRanges(const RunConfig& c, const LineLocator& where) {
  const auto& p = c.problem;
  if (p.kind != "sun" && p.kind != "ball" && p.kind != "game") {
    Fail(where, "kind", "problem.kind must be one of sun, ball, game");
  }
  if (p.kind != "game" && p.dim < 1) Fail(where, "dim", "problem.dim must be >= 1");
  if (p.kind == "game" && p.houses < 1) {
    Fail(where, "houses", "problem.houses must be >= 1");
  }
  if (!(p.radius > 0.0)) Fail(where, "radius", "problem.radius must be positive");
  if (!(p.alpha > 0.0)) Fail(where, "alpha", "problem.alpha must be positive");
  if (p.wealth_mode != "uniform" && p.wealth_mode != "constant") {
    Fail(where, "wealth_mode", "problem.wealth_mode must be uniform or constant");
  }
  if (!(p.wealth_value > 0.0)) {
    Fail(where, "wealth_value", "problem.wealth_value must be positive");
  }
  const auto& names = AlgorithmNames();
  if (std::find(names.begin(), names.end(), c.algorithm.name) == names.end()) {
    Fail(where, "name",
         "algorithm.name must be one of cg-segm, egm, popov, segm, yang");
  }
  if (c.stopping.criterion != "residual" && c.stopping.criterion != "gap_xw") {
    Fail(where, "criterion", "stopping.criterion must be residual or gap_xw");
  }
  if (!(c.stopping.tol > 0.0)) Fail(where, "tol", "stopping.tol must be positive");
  if (c.stopping.max_iters < 0) {
    Fail(where, "max_iters", "stopping.max_iters must be >= 0");
  }
  if (c.algorithm.lambda && !(*c.algorithm.lambda > 0.0)) {
    Fail(where, "lambda", "algorithm.lambda must be positive");
  }
}

json ScheduleJson(const ScheduleConfig& s) {
  return {{"c", s.c}, {"a", s.a}, {"b", s.b}, {"p", s.p}};
}

}  // namespace

const std::vector<std::string>& AlgorithmNames() {
  static const std::vector<std::string> names = {"cg-segm", "egm", "popov",
                                                 "segm", "yang"};
  return names;
}

RunConfig ParseConfig(const json& doc, std::string_view source) {
  const LineLocator where(source);
  ObjectReader root(doc, "config", where);

  // First pass: the problem kind and algorithm name select the defaults.
  std::string kind = "sun";
  std::string name = "cg-segm";
  const json* problem_doc = root.Child("problem");
  const json* algorithm_doc = root.Child("algorithm");
  const json* stopping_doc = root.Child("stopping");
  const json* output_doc = root.Child("output");
  if (problem_doc && problem_doc->is_object() && problem_doc->contains("kind") &&
      (*problem_doc)["kind"].is_string()) {
    kind = (*problem_doc)["kind"].get<std::string>();
  }
  if (algorithm_doc && algorithm_doc->is_object() &&
      algorithm_doc->contains("name") && (*algorithm_doc)["name"].is_string()) {
    name = (*algorithm_doc)["name"].get<std::string>();
  }

  RunConfig config;
  config.problem = ProblemDefaults(kind);
  config.algorithm = AlgorithmDefaults(kind, name);
  config.stopping = StoppingDefaults(kind);

  if (problem_doc) {
    ObjectReader r(*problem_doc, "problem", where);
    r.Read("kind", config.problem.kind);
    r.Read("dim", config.problem.dim);
    r.Read("radius", config.problem.radius);
    r.Read("shift", config.problem.shift);
    r.Read("houses", config.problem.houses);
    r.Read("alpha", config.problem.alpha);
    r.Read("wealth_mode", config.problem.wealth_mode);
    r.Read("wealth_value", config.problem.wealth_value);
    r.Read("seed", config.problem.seed);
    r.Finish();
  }
  if (config.problem.kind == "game") config.problem.dim = 2 * config.problem.houses;

  if (algorithm_doc) {
    ObjectReader r(*algorithm_doc, "algorithm", where);
    r.Read("name", config.algorithm.name);
    r.Read("mu", config.algorithm.mu);
    r.Read("psi", config.algorithm.psi);
    r.Read("lambda0", config.algorithm.lambda0);
    r.Read("anchor", config.algorithm.anchor);
    r.Read("alpha_schedule", config.algorithm.alpha_schedule);
    r.Read("gamma_schedule", config.algorithm.gamma_schedule);
    r.Read("lambda", config.algorithm.lambda);
    r.Finish();
  }
  if (stopping_doc) {
    ObjectReader r(*stopping_doc, "stopping", where);
    r.Read("criterion", config.stopping.criterion);
    r.Read("tol", config.stopping.tol);
    r.Read("max_iters", config.stopping.max_iters);
    r.Finish();
  }
  if (output_doc) {
    ObjectReader r(*output_doc, "output", where);
    r.Read("trace", config.output.trace);
    r.Read("summary", config.output.summary);
    r.Read("trace_timing", config.output.trace_timing);
    r.Finish();
  }
  root.Finish();
  CheckRanges(config, where);
  return config;
}

RunConfig ParseConfigText(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports "... at line L, column C: ..." in what().
    int line = 1 + static_cast<int>(std::count(
                       text.begin(),
                       text.begin() + std::min<std::size_t>(e.byte, text.size()),
                       '\n'));
    throw ConfigError(std::string("line ") + std::to_string(line) + ": " +
                          e.what(),
                      line);
  }
  return ParseConfig(doc, text);
}

RunConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfigText(buffer.str());
}

json ToJson(const RunConfig& c) {
  json problem = {{"kind", c.problem.kind}, {"seed", c.problem.seed}};
  if (c.problem.kind == "game") {
    problem["houses"] = c.problem.houses;
    problem["alpha"] = c.problem.alpha;
    problem["wealth_mode"] = c.problem.wealth_mode;
    problem["wealth_value"] = c.problem.wealth_value;
  } else {
    problem["dim"] = c.problem.dim;
  }
  if (c.problem.kind == "ball") {
    problem["radius"] = c.problem.radius;
    problem["shift"] = c.problem.shift;
  }

  json algorithm = {{"name", c.algorithm.name}};
  if (c.algorithm.name == "cg-segm") {
    algorithm["mu"] = c.algorithm.mu;
    algorithm["psi"] = c.algorithm.psi;
    algorithm["lambda0"] = c.algorithm.lambda0;
    algorithm["anchor"] = c.algorithm.anchor;
    algorithm["alpha_schedule"] = ScheduleJson(c.algorithm.alpha_schedule);
    algorithm["gamma_schedule"] = ScheduleJson(c.algorithm.gamma_schedule);
  } else if (c.algorithm.name == "yang") {
    algorithm["mu"] = c.algorithm.mu;
    algorithm["lambda0"] = c.algorithm.lambda0;
  } else if (c.algorithm.lambda) {
    algorithm["lambda"] = *c.algorithm.lambda;
  }

  return {{"problem", problem},
          {"algorithm", algorithm},
          {"stopping",
           {{"criterion", c.stopping.criterion},
            {"tol", c.stopping.tol},
            {"max_iters", c.stopping.max_iters}}},
          {"output",
           {{"trace", c.output.trace},
            {"summary", c.output.summary},
            {"trace_timing", c.output.trace_timing}}}};
}

RunConfig WithAlgorithm(const RunConfig& config, const std::string& name) {
  RunConfig out = config;
  if (config.algorithm.name != name) {
    out.algorithm = AlgorithmDefaults(config.problem.kind, name);
  }
  return out;
}

namespace {

json PublishedCgSegm(double mu, double anchor) {
  return {{"name", "cg-segm"},
          {"mu", mu},
          {"psi", 1.0},
          {"lambda0", 0.03},
          {"anchor", anchor},
          {"alpha_schedule", {{"c", 1.0}, {"a", 2.0}, {"b", 1.0}, {"p", 0.01}}},
          {"gamma_schedule", {{"c", 1.0}, {"a", 1.0}, {"b", 1.0}, {"p", 1.2}}}};
}

std::vector<Preset> BuildPresets() {
  const json sun = {{"kind", "sun"}, {"dim", 100}, {"seed", 1}};
  const json ball = {{"kind", "ball"}, {"dim", 50}, {"radius", 5.0},
                     {"shift", 7.0}, {"seed", 1}};
  const json game = {{"kind", "game"}, {"houses", 50}, {"alpha", 0.8},
                     {"wealth_mode", "uniform"}, {"seed", 1}};
  const json stop1 = {{"criterion", "residual"}, {"tol", 1e-4},
                      {"max_iters", 10000}};
  const json stop2 = {{"criterion", "residual"}, {"tol", 1e-4},
                      {"max_iters", 5000}};
  const json stop3 = {{"criterion", "residual"}, {"tol", 1e-5},
                      {"max_iters", 2000000}};

  std::vector<Preset> presets = {
      {"example1-algo3",
       "Sun's VIP on R^100_+, mu=0.05, lambda0=0.03, rho=0.1",
       {{"problem", sun}, {"algorithm", PublishedCgSegm(0.05, 0.1)},
        {"stopping", stop1}}},
      {"example2-algo3",
       "pseudomonotone operator on the radius-5 ball, d=50, rho=0.2",
       {{"problem", ball}, {"algorithm", PublishedCgSegm(0.05, 0.2)},
        {"stopping", stop2}}},
      {"example3-algo3",
       "policeman/burglar game, 50 houses, mu=0.07, rho=0.2, tol 1e-5",
       {{"problem", game}, {"algorithm", PublishedCgSegm(0.07, 0.2)},
        {"stopping", stop3}}},
  };
  const std::pair<const char*, json> problems[] = {
      {"example1", sun}, {"example2", ball}, {"example3", game}};
  const json stops[] = {stop1, stop2, stop3};
  for (std::size_t k = 0; k < 3; ++k) {
    for (const char* method : {"egm", "popov", "segm", "yang"}) {
      presets.push_back(
          {std::string(problems[k].first) + "-" + method,
           std::string(method) + " baseline with default steps",
           {{"problem", problems[k].second},
            {"algorithm", {{"name", method}}},
            {"stopping", stops[k]}}});
    }
  }
  return presets;
}

}  // namespace

const std::vector<Preset>& Presets() {
  static const std::vector<Preset> presets = BuildPresets();
  return presets;
}

const Preset* FindPreset(std::string_view name) {
  for (const auto& p : Presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace vipbench
