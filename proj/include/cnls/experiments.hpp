#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cnls/config.hpp"
#include "cnls/diagnostics.hpp"
#include "cnls/stability.hpp"
#include "cnls/steppers.hpp"

namespace cnls {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDivergence = 3;
inline constexpr int kExitIo = 4;

// -- in-memory drivers --------------------------------------------------------

struct SimulationOutput {
  SystemState state;
  std::vector<DiagnosticRecord> records;
  std::size_t steps = 0;
  std::vector<std::string> warnings;
  std::optional<std::size_t> divergence_step;  // set when the run diverged
  std::string divergence_message;
};

/// Called at step 0, every snapshot_every steps and at the final step.
using SnapshotSink =
    std::function<void(std::size_t step, const SystemState&, const Grid&)>;

/// Runs `config` with the step config.k. Diagnostics are recorded at step 0,
/// every diagnostics_every steps and at the last step. Divergence does not
/// throw; it is reported in the output together with the records so far.
SimulationOutput simulate(const ExperimentConfig& config,
                          const SnapshotSink& snapshots = {});

/// Initial state of a config (reads initial_file for the "file" preset).
SystemState initial_state(const ExperimentConfig& config, const Grid& grid);

enum class ErrorMode { Exact, SuccessiveDifference };

struct ConvergenceRow {
  double k = 0.0;
  double linf_error = 0.0;
  std::optional<double> order;
  double cpu_seconds = 0.0;
};

struct ConvergenceTable {
  ErrorMode mode = ErrorMode::Exact;
  ErrorNorm norm = ErrorNorm::Complex;
  std::vector<ConvergenceRow> rows;
  std::vector<std::string> warnings;
};

/// Temporal ladder on component 1 at time T. Exact mode (config.exact_solution)
/// compares with the travelling soliton; otherwise error(k_i) is the norm of
/// Psi_1(k_i) - Psi_1(k_i / 2), which adds one run at k_last / 2. cpu_seconds
/// is process CPU time of the k_i run. Throws DivergenceError.
ConvergenceTable converge_time(const ExperimentConfig& config,
                               std::span<const double> ks);

struct SpaceRow {
  std::size_t n = 0;
  double linf_error = 0.0;
  double cpu_seconds = 0.0;
};

/// Spatial ladder against the exact solution (needs exact_solution); N is
/// applied to every axis.
std::vector<SpaceRow> converge_space(const ExperimentConfig& config,
                                     std::span<const std::size_t> ns);

// -- file-producing runs --------------------------------------------------------

struct RunOutcome {
  int exit_code = kExitOk;
  std::filesystem::path dir;
  std::vector<std::filesystem::path> files;  // relative to dir
  std::vector<std::string> warnings;
  std::string message;
};

/// diagnostics.csv, snapshots/, manifest.json under `dir`.
RunOutcome run_simulate(const ExperimentConfig& config,
                        const std::filesystem::path& dir);

/// run_simulate plus conservation.csv: quantity,initial,final,max_abs_drift.
RunOutcome run_conserve(const ExperimentConfig& config,
                        const std::filesystem::path& dir);

/// converge_time.csv with columns k,linf_error,order,cpu_seconds.
RunOutcome run_converge_time(const ExperimentConfig& config,
                             std::span<const double> ks,
                             const std::filesystem::path& dir);

/// converge_space.csv with columns N,linf_error,cpu_seconds.
RunOutcome run_converge_space(const ExperimentConfig& config,
                              std::span<const std::size_t> ns,
                              const std::filesystem::path& dir);

/// One stability_<i>.csv per y (first line "y,<re>,<im>", then
/// "x_re,x_im,abs_r" rows) and stability_areas.csv. An empty list writes
/// nothing and returns a warning.
RunOutcome run_stability_map(std::span<const Complex> ys, const Window& window,
                             std::size_t nx, std::size_t ny,
                             const std::filesystem::path& dir);

std::string convergence_csv(const ConvergenceTable& table);
std::string space_csv(std::span<const SpaceRow> rows);
std::string stability_csv(const StabilityGrid& grid);

}  // namespace cnls
