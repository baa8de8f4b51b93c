#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cnls {

inline constexpr const char* kSoftwareVersion = "0.1.0";

/// Run record written as manifest.json next to a run's outputs: resolved
/// config echo, software version, wall clock per phase, emitted files with
/// SHA-256 hashes, status and warnings.
class RunManifest {
 public:
  RunManifest(std::string command, std::filesystem::path dir);
  ~RunManifest();
  RunManifest(RunManifest&&) noexcept;
  RunManifest& operator=(RunManifest&&) noexcept;

  const std::filesystem::path& dir() const { return dir_; }

  /// `config_json` must be a JSON document (as produced by config_to_json).
  void set_config(const std::string& config_json);
  void set_parameter(const std::string& key, const std::string& json_value);
  void add_phase(const std::string& name, double seconds);
  /// Path relative to dir(); hashed when write() runs.
  void add_file(const std::filesystem::path& relative);
  void add_warning(const std::string& message);
  void set_status(const std::string& status,
                  std::optional<std::size_t> divergence_step = std::nullopt);

  const std::vector<std::filesystem::path>& files() const { return files_; }

  /// Hashes every listed file and writes manifest.json atomically.
  void write() const;

 private:
  struct Data;
  std::string command_;
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> files_;
  std::unique_ptr<Data> data_;
};

/// Wall clock of one phase, reported to the manifest on finish().
class PhaseTimer {
 public:
  PhaseTimer(RunManifest& manifest, std::string name);
  double finish();

 private:
  RunManifest& manifest_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
  bool done_ = false;
};

}  // namespace cnls
