#include "harness/runner.h"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "vipsolve/baselines.h"
#include "vipsolve/problems.h"
#include "vipsolve/projection.h"
#include "vipsolve/residual.h"
#include "vipsolve/rng.h"

namespace vipbench {

using vipsolve::Vector;

namespace {

constexpr const char* kTraceFormat = "vipbench-trace/1";

std::string FormatReal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string FormatSeconds(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

vipsolve::StopCriterion Criterion(const StoppingConfig& s) {
  return s.criterion == "gap_xw" ? vipsolve::StopCriterion::kGapXW
                                 : vipsolve::StopCriterion::kResidual;
}

bool HasDualityGap(const RunConfig& config) {
  return config.problem.kind == "game";
}

void WriteRowValues(std::ostream& out, const vipsolve::IterationRecord& r,
                    bool timing, bool gap) {
  out << r.j << ',' << FormatReal(r.residual) << ',' << FormatReal(r.gap_xw)
      << ',' << FormatReal(r.lambda) << ','
      << FormatSeconds(timing ? r.elapsed : 0.0);
  if (gap) {
    double value = 0.0;
    for (const auto& [name, v] : r.extra) {
      if (name == "gap_duality") value = v;
    }
    out << ',' << FormatReal(value);
  }
  out << '\n';
}

std::string TraceHeader(bool gap) {
  std::string h = "iter,residual,gap_xw,lambda,elapsed_s";
  if (gap) h += ",gap_duality";
  return h;
}

void WriteFileOrThrow(const std::filesystem::path& path,
                      const std::function<void(std::ostream&)>& body) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  body(out);
}

}  // namespace

int ExitCodeFor(vipsolve::StopReason reason) {
  switch (reason) {
    case vipsolve::StopReason::kConverged:
      return kExitConverged;
    case vipsolve::StopReason::kMaxIters:
      return kExitMaxIters;
    case vipsolve::StopReason::kNonFinite:
      return kExitNonFinite;
  }
  return kExitNonFinite;
}

vipsolve::ProblemInstance BuildProblem(const ProblemConfig& config) {
  if (config.kind == "sun") return vipsolve::SunProblem(config.dim).Instance();
  if (config.kind == "ball") {
    return vipsolve::BallProblem(config.dim, config.radius, config.shift)
        .Instance();
  }
  if (config.kind == "game") {
    Vector wealth =
        config.wealth_mode == "constant"
            ? Vector::Constant(config.houses, config.wealth_value)
            : vipsolve::GameProblem::UniformWealth(config.houses, config.seed);
    return vipsolve::GameProblem(std::move(wealth), config.alpha).Instance();
  }
  throw ConfigError("unknown problem kind '" + config.kind + "'", 0);
}

Vector SeededInit(vipsolve::Index dim, std::uint64_t seed,
                  const vipsolve::FeasibleSet& set) {
  vipsolve::SplitMix64 rng(seed);
  Vector x(dim);
  for (vipsolve::Index i = 0; i < dim; ++i) x[i] = rng.NextUnit();
  return set.project(x);
}

RunOutcome Execute(const RunConfig& config,
                   const vipsolve::StepObserver* observer) {
  const vipsolve::ProblemInstance problem = BuildProblem(config.problem);
  const Vector x0 = SeededInit(problem.dim, config.problem.seed, problem.set);
  const auto& a = config.algorithm;

  RunOutcome outcome;
  outcome.algorithm = a.name;
  try {
    if (a.name == "cg-segm") {
      vipsolve::SolverParams params;
      params.mu = a.mu;
      params.psi = a.psi;
      params.lambda0 = a.lambda0;
      params.anchor =
          problem.set.project(Vector::Constant(problem.dim, a.anchor));
      params.alpha = vipsolve::PowerSchedule::ForAnchor(
          a.alpha_schedule.c, a.alpha_schedule.a, a.alpha_schedule.b,
          a.alpha_schedule.p);
      params.gamma = vipsolve::PowerSchedule::ForDirection(
          a.gamma_schedule.c, a.gamma_schedule.a, a.gamma_schedule.b,
          a.gamma_schedule.p);
      params.max_iters = config.stopping.max_iters;
      params.tol = config.stopping.tol;
      params.criterion = Criterion(config.stopping);
      outcome.result = vipsolve::Solve(problem, params, x0, observer);
    } else {
      const auto method = vipsolve::ParseBaselineMethod(a.name);
      if (!method) throw ConfigError("unknown algorithm '" + a.name + "'", 0);
      vipsolve::BaselineParams params;
      params.mu = a.mu;
      params.lambda0 = a.lambda0;
      params.max_iters = config.stopping.max_iters;
      params.tol = config.stopping.tol;
      params.criterion = Criterion(config.stopping);
      if (a.lambda) {
        params.lambda = *a.lambda;
      } else if (auto step = vipsolve::DefaultFixedStep(*method, problem)) {
        params.lambda = *step;
      } else if (config.problem.kind == "sun") {
        const double L = vipsolve::SunProblem::kUnitBoxLipschitz;
        params.lambda =
            *method == vipsolve::BaselineMethod::kPopov ? 0.9 / (3 * L) : 0.9 / L;
      }
      outcome.result = vipsolve::SolveBaseline(*method, problem, params, x0);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("rejected parameters: ") + e.what(), 0);
  }

  const auto& r = outcome.result;
  if (r.reason == vipsolve::StopReason::kConverged && !r.trace.empty()) {
    outcome.iterations = r.trace.back().j;
    outcome.final_residual = r.trace.back().residual;
  } else {
    outcome.iterations = static_cast<std::int64_t>(r.trace.size());
    outcome.final_residual = vipsolve::AllFinite(r.x)
                                 ? vipsolve::NaturalResidual(r.x, problem)
                                 : std::numeric_limits<double>::quiet_NaN();
  }
  return outcome;
}

void WriteTrace(std::ostream& out, const RunConfig& config,
                const RunOutcome& outcome) {
  const bool gap = HasDualityGap(config);
  out << "# format: " << kTraceFormat << '\n';
  out << "# prng: " << vipsolve::SplitMix64::kName
      << " seed=" << config.problem.seed << '\n';
  out << "# algorithm: " << outcome.algorithm << '\n';
  out << "# stop_reason: " << vipsolve::ToString(outcome.result.reason) << '\n';
  out << "# config: " << ToJson(config).dump() << '\n';
  out << TraceHeader(gap) << '\n';
  for (const auto& record : outcome.result.trace) {
    WriteRowValues(out, record, config.output.trace_timing, gap);
  }
}

void WriteSummaryRow(std::ostream& out, const RunConfig& config,
                     const RunOutcome& outcome) {
  out << outcome.algorithm << ',' << config.problem.kind << ','
      << outcome.iterations << ',' << FormatReal(outcome.final_residual) << ','
      << FormatSeconds(outcome.result.wall_seconds) << ','
      << vipsolve::ToString(outcome.result.reason) << '\n';
}

void WriteCombinedTrace(std::ostream& out, const RunConfig& base,
                        const std::vector<RunOutcome>& outcomes) {
  const bool gap = HasDualityGap(base);
  out << "# format: " << kTraceFormat << '\n';
  out << "# prng: " << vipsolve::SplitMix64::kName
      << " seed=" << base.problem.seed << '\n';
  out << "# problem: " << ToJson(base)["problem"].dump() << '\n';
  out << "algorithm," << TraceHeader(gap) << '\n';
  for (const auto& o : outcomes) {
    for (const auto& record : o.result.trace) {
      out << o.algorithm << ',';
      WriteRowValues(out, record, base.output.trace_timing, gap);
    }
  }
}

void WritePlotScript(std::ostream& out, const std::string& csv_name,
                     const std::vector<RunOutcome>& outcomes,
                     const std::string& title) {
  out << "# gnuplot script; render with: gnuplot compare.gp\n"
      << "set datafile separator ','\n"
      << "set terminal pngcairo size 900,600\n"
      << "set output 'compare.png'\n"
      << "set title '" << title << "'\n"
      << "set xlabel 'iteration'\n"
      << "set ylabel 'natural residual'\n"
      << "set logscale y\n"
      << "set key top right\n"
      << "plot ";
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const auto& name = outcomes[k].algorithm;
    if (k > 0) out << ", \\\n     ";
    out << "'" << csv_name << "' using 2:(stringcolumn(1) eq '" << name
        << "' ? $3 : 1/0) with lines title '" << name << "'";
  }
  out << '\n';
}

std::filesystem::path ResolveOutDir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return std::filesystem::current_path();
}

int Run(const RunConfig& config, const std::filesystem::path& out_dir) {
  const RunOutcome outcome = Execute(config);
  WriteFileOrThrow(out_dir / config.output.trace,
                   [&](std::ostream& out) { WriteTrace(out, config, outcome); });
  WriteFileOrThrow(out_dir / config.output.summary, [&](std::ostream& out) {
    out << kSummaryHeader << '\n';
    WriteSummaryRow(out, config, outcome);
  });
  return ExitCodeFor(outcome.result.reason);
}

int Compare(const RunConfig& base, const std::vector<std::string>& algorithms,
            const std::filesystem::path& out_dir) {
  std::vector<RunConfig> configs;
  for (const auto& name : algorithms) configs.push_back(WithAlgorithm(base, name));

  // Runs are independent; collect in the requested order.
  std::vector<std::future<RunOutcome>> pending;
  for (const auto& c : configs) {
    pending.push_back(std::async(std::launch::async, [&c] { return Execute(c); }));
  }
  std::vector<RunOutcome> outcomes;
  for (auto& f : pending) outcomes.push_back(f.get());

  WriteFileOrThrow(out_dir / "compare.csv", [&](std::ostream& out) {
    WriteCombinedTrace(out, base, outcomes);
  });
  WriteFileOrThrow(out_dir / "compare_summary.csv", [&](std::ostream& out) {
    out << kSummaryHeader << '\n';
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
      WriteSummaryRow(out, configs[k], outcomes[k]);
    }
  });
  WriteFileOrThrow(out_dir / "compare.gp", [&](std::ostream& out) {
    WritePlotScript(out, "compare.csv", outcomes,
                    "residual vs iteration (" + base.problem.kind + ")");
  });

  bool all_converged = true;
  for (const auto& o : outcomes) {
    all_converged &= o.result.reason == vipsolve::StopReason::kConverged;
  }
  return all_converged ? kExitConverged : kExitMaxIters;
}

}  // namespace vipbench
