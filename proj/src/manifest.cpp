#include "cnls/manifest.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>

#include "cnls/io.hpp"

namespace cnls {

using nlohmann::ordered_json;

struct RunManifest::Data {
  ordered_json config = nullptr;
  ordered_json parameters = ordered_json::object();
  ordered_json phases = ordered_json::object();
  ordered_json warnings = ordered_json::array();
  std::string status = "ok";
  std::optional<std::size_t> divergence_step;
};

RunManifest::RunManifest(std::string command, std::filesystem::path dir)
    : command_(std::move(command)),
      dir_(std::move(dir)),
      data_(std::make_unique<Data>()) {}

RunManifest::~RunManifest() = default;
RunManifest::RunManifest(RunManifest&&) noexcept = default;
RunManifest& RunManifest::operator=(RunManifest&&) noexcept = default;

void RunManifest::set_config(const std::string& config_json) {
  data_->config = ordered_json::parse(config_json);
}

void RunManifest::set_parameter(const std::string& key,
                                const std::string& json_value) {
  data_->parameters[key] = ordered_json::parse(json_value);
}

void RunManifest::add_phase(const std::string& name, double seconds) {
  data_->phases[name] = data_->phases.value(name, 0.0) + seconds;
}

void RunManifest::add_file(const std::filesystem::path& relative) {
  files_.push_back(relative);
}

void RunManifest::add_warning(const std::string& message) {
  data_->warnings.push_back(message);
}

void RunManifest::set_status(const std::string& status,
                             std::optional<std::size_t> divergence_step) {
  data_->status = status;
  data_->divergence_step = divergence_step;
}

void RunManifest::write() const {
  ordered_json j;
  j["software"] = {{"name", "cnls"}, {"version", kSoftwareVersion}};
  j["command"] = command_;
  j["status"] = data_->status;
  if (data_->divergence_step) j["divergence_step"] = *data_->divergence_step;
  j["config"] = data_->config;
  j["parameters"] = data_->parameters;
  j["wall_seconds"] = data_->phases;
  ordered_json files = ordered_json::array();
  for (const auto& rel : files_) {
    const auto full = dir_ / rel;
    files.push_back({{"path", rel.generic_string()},
                     {"bytes", std::filesystem::file_size(full)},
                     {"sha256", sha256_file(full)}});
  }
  j["files"] = files;
  j["warnings"] = data_->warnings;
  write_text_atomic(dir_ / "manifest.json", j.dump(2) + "\n");
}

PhaseTimer::PhaseTimer(RunManifest& manifest, std::string name)
    : manifest_(manifest),
      name_(std::move(name)),
      start_(std::chrono::steady_clock::now()) {}

double PhaseTimer::finish() {
  const double s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  if (!done_) manifest_.add_phase(name_, s);
  done_ = true;
  return s;
}

}  // namespace cnls
