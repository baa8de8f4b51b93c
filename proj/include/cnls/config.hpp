#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnls/grid.hpp"
#include "cnls/model.hpp"
#include "cnls/pade.hpp"

namespace cnls {

/// Any problem with a configuration file or command-line value. Raised
/// before anything is allocated or written.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SnapshotFormat { Modulus, Complex };
enum class ErrorNorm { Complex, Modulus };

std::string_view to_string(ErrorNorm norm);

struct AxisSpec {
  double a = 0.0;
  double b = 0.0;
  std::size_t n = 0;
};

struct ExperimentConfig {
  std::string name;
  std::size_t dimension = 1;
  std::vector<AxisSpec> axes;  // one per dimension
  BoundaryCondition bc = BoundaryCondition::Periodic;
  SystemCoefficients coefficients;
  InitialCondition initial;
  std::string initial_file;  // set when the preset is "file"
  StepperKind stepper = StepperKind::KrogstadP22;
  double k = 0.0;
  double T = 0.0;
  std::size_t diagnostics_every = 1;  // steps
  std::size_t snapshot_every = 0;     // steps, 0 disables snapshots
  SnapshotFormat snapshot_format = SnapshotFormat::Modulus;
  std::optional<double> energy_mu;    // energy column is empty when unset
  bool exact_solution = false;        // SingleSoliton only
  ErrorNorm error_norm = ErrorNorm::Complex;
  std::filesystem::path output_dir = "out";

  std::size_t components() const { return coefficients.components(); }
  Grid make_grid() const;
};

/// Parses and validates. Relative `initial_file` paths are resolved against
/// `base_dir`. Throws ConfigError with the offending key in the message.
ExperimentConfig parse_config(const std::string& json_text,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& file);

/// Cross-field checks; parse_config already calls this.
void validate(const ExperimentConfig& config);

/// Canonical JSON echo of a config (used in manifests).
std::string config_to_json(const ExperimentConfig& config);

/// `dir` if absolute, otherwise $CNLS_OUTPUT_ROOT/dir (or ./dir when the
/// variable is unset or empty).
std::filesystem::path resolve_output_dir(const std::filesystem::path& dir);

/// "0.025", "1/40", "2.5e-2".
double parse_step_value(const std::string& text);

/// "-1", "0.5-2i", "3i", "-i".
Complex parse_complex(const std::string& text);

}  // namespace cnls
