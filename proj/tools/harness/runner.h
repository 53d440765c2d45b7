#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "harness/config.h"
#include "vipsolve/cg_segm.h"
#include "vipsolve/types.h"

namespace vipbench {

inline constexpr int kExitConverged = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitMaxIters = 2;
inline constexpr int kExitNonFinite = 3;

// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "VIPBENCH_OUT_DIR";

int ExitCodeFor(vipsolve::StopReason reason);

vipsolve::ProblemInstance BuildProblem(const ProblemConfig& config);

// Componentwise U[0, 1) draws from SplitMix64(seed), projected onto `set`.
vipsolve::Vector SeededInit(vipsolve::Index dim, std::uint64_t seed,
                            const vipsolve::FeasibleSet& set);

struct RunOutcome {
  std::string algorithm;
  vipsolve::SolveResult result;
  std::int64_t iterations = 0;  // index of the returned iterate
  double final_residual = 0.0;
};

// Builds the problem and x0 from `config` and runs the selected method.
// Throws ConfigError when the parameters are rejected by the solver.
// `observer` sees every cg-segm step; baselines ignore it.
RunOutcome Execute(const RunConfig& config,
                   const vipsolve::StepObserver* observer = nullptr);

// Trace CSV: '#' metadata lines (format version, PRNG, effective config),
// then the header iter,residual,gap_xw,lambda,elapsed_s[,gap_duality].
void WriteTrace(std::ostream& out, const RunConfig& config,
                const RunOutcome& outcome);

inline constexpr const char* kSummaryHeader =
    "algorithm,problem,iterations,final_residual,wall_time_s,stop_reason";
void WriteSummaryRow(std::ostream& out, const RunConfig& config,
                     const RunOutcome& outcome);

// Long-format trace across algorithms: algorithm,iter,residual,... .
void WriteCombinedTrace(std::ostream& out, const RunConfig& base,
                        const std::vector<RunOutcome>& outcomes);

// gnuplot script drawing residual against iteration, one curve per
// algorithm, from the combined CSV at `csv_name`.
void WritePlotScript(std::ostream& out, const std::string& csv_name,
                     const std::vector<RunOutcome>& outcomes,
                     const std::string& title);

// Resolves the output directory: explicit flag, then $VIPBENCH_OUT_DIR,
// then the working directory.
std::filesystem::path ResolveOutDir(const std::string& flag);

// `run`: one solve, trace + summary written under out_dir. Returns the exit
// status for the stop reason.
int Run(const RunConfig& config, const std::filesystem::path& out_dir);

// `compare`: every algorithm on the same problem and x0. Writes
// compare.csv, compare_summary.csv and compare.gp. Returns 0 if every run
// converged, 2 otherwise.
int Compare(const RunConfig& base, const std::vector<std::string>& algorithms,
            const std::filesystem::path& out_dir);

}  // namespace vipbench
