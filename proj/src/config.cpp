#include "cnls/config.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "cnls/io.hpp"
#include "cnls/steppers.hpp"

namespace cnls {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& why) {
  throw ConfigError(key + ": " + why);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) fail(where + key, "unknown key");
  }
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) fail(key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(key, "must be finite");
  return d;
}

std::size_t count(const json& v, const std::string& key) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    fail(key, "expected a non-negative integer");
  }
  const auto i = v.get<long long>();
  if (i < 0) fail(key, "expected a non-negative integer");
  return static_cast<std::size_t>(i);
}

std::string text(const json& v, const std::string& key) {
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

double step_value(const json& v, const std::string& key) {
  if (v.is_string()) {
    try {
      return parse_step_value(v.get<std::string>());
    } catch (const ConfigError& e) {
      fail(key, e.what());
    }
  }
  return number(v, key);
}

SechPulse parse_pulse(const json& v, const std::string& key) {
  if (!v.is_object()) fail(key, "expected {r, shift, v}");
  reject_unknown(v, {"r", "shift", "v"}, key + ".");
  SechPulse p;
  if (v.contains("r")) p.r = number(v["r"], key + ".r");
  if (v.contains("shift")) p.shift = number(v["shift"], key + ".shift");
  if (v.contains("v")) p.v = number(v["v"], key + ".v");
  if (!(p.r > 0.0)) fail(key + ".r", "must be positive");
  return p;
}

template <std::size_t M>
void parse_pulses(const json& ic, std::array<SechPulse, M>& pulses) {
  if (!ic.contains("pulses")) return;
  const auto& list = ic["pulses"];
  if (!list.is_array() || list.size() != M) {
    fail("initial.pulses", "expected " + std::to_string(M) + " pulses");
  }
  for (std::size_t i = 0; i < M; ++i) {
    pulses[i] = parse_pulse(list[i], "initial.pulses[" + std::to_string(i) + "]");
  }
}

void parse_initial(const json& ic, ExperimentConfig& cfg,
                   const std::filesystem::path& base_dir) {
  if (!ic.is_object()) fail("initial", "expected an object");
  const auto preset = text(ic.value("preset", json()), "initial.preset");
  if (preset == "single_soliton") {
    reject_unknown(ic, {"preset", "mu", "alpha", "e", "v"}, "initial.");
    SingleSoliton p;
    if (ic.contains("mu")) p.mu = number(ic["mu"], "initial.mu");
    if (ic.contains("alpha")) p.alpha = number(ic["alpha"], "initial.alpha");
    if (ic.contains("e")) p.e = number(ic["e"], "initial.e");
    if (ic.contains("v")) p.v = number(ic["v"], "initial.v");
    if (!(p.mu * p.alpha > 0.0)) fail("initial", "mu * alpha must be positive");
    if (!(1.0 + p.e > 0.0)) fail("initial.e", "1 + e must be positive");
    cfg.initial = p;
  } else if (preset == "two_soliton") {
    reject_unknown(ic, {"preset", "pulses"}, "initial.");
    TwoSoliton p;
    parse_pulses(ic, p.pulses);
    cfg.initial = p;
  } else if (preset == "four_soliton") {
    reject_unknown(ic, {"preset", "pulses"}, "initial.");
    FourSoliton p;
    parse_pulses(ic, p.pulses);
    cfg.initial = p;
  } else if (preset == "four_wave_2d" || preset == "four_wave_3d") {
    reject_unknown(ic, {"preset", "c"}, "initial.");
    const double c = ic.contains("c") ? number(ic["c"], "initial.c") : 3.0;
    if (preset == "four_wave_2d") {
      cfg.initial = FourWave2D{c};
    } else {
      cfg.initial = FourWave3D{c};
    }
  } else if (preset == "blowup_pair") {
    reject_unknown(ic, {"preset"}, "initial.");
    cfg.initial = BlowUpPair{};
  } else if (preset == "file") {
    reject_unknown(ic, {"preset", "path"}, "initial.");
    std::filesystem::path p = text(ic.value("path", json()), "initial.path");
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    cfg.initial = CustomFields{};
    cfg.initial_file = p.string();
  } else {
    fail("initial.preset", "unknown preset '" + preset + "'");
  }
}

std::size_t expected_dims(const InitialCondition& ic) {
  if (std::holds_alternative<FourWave2D>(ic)) return 2;
  if (std::holds_alternative<FourWave3D>(ic)) return 3;
  return 1;
}

}  // namespace

std::string_view to_string(ErrorNorm norm) {
  return norm == ErrorNorm::Complex ? "complex" : "modulus";
}

Grid ExperimentConfig::make_grid() const {
  std::vector<AxisGrid> built;
  for (const auto& ax : axes) built.push_back(build_axis(bc, ax.a, ax.b, ax.n));
  return Grid(std::move(built));
}

double parse_step_value(const std::string& s) {
  auto parse = [&](const std::string& t) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad step value '" + s + "'");
    }
    if (used != t.size()) throw ConfigError("bad step value '" + s + "'");
    return v;
  };
  const auto slash = s.find('/');
  const double v = slash == std::string::npos
                       ? parse(s)
                       : parse(s.substr(0, slash)) / parse(s.substr(slash + 1));
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError("step value '" + s + "' must be positive and finite");
  }
  return v;
}

Complex parse_complex(const std::string& s) {
  auto bad = [&]() { return ConfigError("bad complex value '" + s + "'"); };
  auto real = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != t.size() || !std::isfinite(v)) throw bad();
    return v;
  };
  if (s.empty()) throw bad();
  if (s.back() != 'i') return {real(s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not part of an exponent or the leading sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, real(body)};
  return {real(body.substr(0, split)), real(body.substr(split))};
}

ExperimentConfig parse_config(const std::string& json_text,
                              const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(root,
                 {"name", "dimension", "domain", "n", "bc", "alpha", "sigma",
                  "initial", "stepper", "k", "T", "diagnostics_every",
                  "snapshot_every", "snapshot_format", "energy_mu",
                  "exact_solution", "error_norm", "output_dir"},
                 "");

  ExperimentConfig cfg;
  if (root.contains("name")) cfg.name = text(root["name"], "name");
  cfg.dimension = root.contains("dimension") ? count(root["dimension"], "dimension") : 1;
  if (cfg.dimension < 1 || cfg.dimension > 3) fail("dimension", "must be 1, 2 or 3");

  if (!root.contains("domain")) fail("domain", "required");
  const auto& domain = root["domain"];
  std::vector<std::pair<double, double>> intervals;
  if (domain.is_array() && domain.size() == 2 && domain[0].is_number()) {
    intervals.assign(cfg.dimension, {number(domain[0], "domain[0]"),
                                     number(domain[1], "domain[1]")});
  } else if (domain.is_array() && domain.size() == cfg.dimension) {
    for (std::size_t i = 0; i < cfg.dimension; ++i) {
      const auto key = "domain[" + std::to_string(i) + "]";
      if (!domain[i].is_array() || domain[i].size() != 2) fail(key, "expected [a, b]");
      intervals.emplace_back(number(domain[i][0], key), number(domain[i][1], key));
    }
  } else {
    fail("domain", "expected [a, b] or one [a, b] per dimension");
  }

  if (!root.contains("n")) fail("n", "required");
  std::vector<std::size_t> ns;
  if (root["n"].is_array()) {
    if (root["n"].size() != cfg.dimension) fail("n", "one entry per dimension");
    for (const auto& v : root["n"]) ns.push_back(count(v, "n"));
  } else {
    ns.assign(cfg.dimension, count(root["n"], "n"));
  }
  for (std::size_t i = 0; i < cfg.dimension; ++i) {
    cfg.axes.push_back({intervals[i].first, intervals[i].second, ns[i]});
  }

  try {
    cfg.bc = parse_boundary_condition(text(root.value("bc", json()), "bc"));
  } catch (const std::invalid_argument& e) {
    fail("bc", e.what());
  }

  if (!root.contains("initial")) fail("initial", "required");
  parse_initial(root["initial"], cfg, base_dir);

  if (root.contains("alpha") != root.contains("sigma")) {
    fail("alpha/sigma", "give both or neither");
  }
  if (root.contains("alpha")) {
    if (!root["alpha"].is_array()) fail("alpha", "expected an array");
    for (const auto& v : root["alpha"]) cfg.coefficients.alpha.push_back(number(v, "alpha"));
    if (!root["sigma"].is_array()) fail("sigma", "expected an M x M array");
    for (const auto& row : root["sigma"]) {
      if (!row.is_array()) fail("sigma", "expected an M x M array");
      std::vector<double> r;
      for (const auto& v : row) r.push_back(number(v, "sigma"));
      cfg.coefficients.sigma.push_back(std::move(r));
    }
  } else if (auto* p = std::get_if<SingleSoliton>(&cfg.initial)) {
    cfg.coefficients = single_soliton_coefficients(*p);
  } else {
    fail("alpha/sigma", "required for this preset");
  }

  if (root.contains("stepper")) {
    try {
      cfg.stepper = parse_stepper_kind(text(root["stepper"], "stepper"));
    } catch (const std::invalid_argument& e) {
      fail("stepper", e.what());
    }
  }
  if (root.contains("k")) cfg.k = step_value(root["k"], "k");
  if (!root.contains("T")) fail("T", "required");
  cfg.T = number(root["T"], "T");
  if (root.contains("diagnostics_every")) {
    cfg.diagnostics_every = count(root["diagnostics_every"], "diagnostics_every");
  }
  if (root.contains("snapshot_every")) {
    cfg.snapshot_every = count(root["snapshot_every"], "snapshot_every");
  }
  if (root.contains("snapshot_format")) {
    const auto f = text(root["snapshot_format"], "snapshot_format");
    if (f == "modulus") {
      cfg.snapshot_format = SnapshotFormat::Modulus;
    } else if (f == "complex") {
      cfg.snapshot_format = SnapshotFormat::Complex;
    } else {
      fail("snapshot_format", "expected 'modulus' or 'complex'");
    }
  }
  if (root.contains("energy_mu") && !root["energy_mu"].is_null()) {
    cfg.energy_mu = number(root["energy_mu"], "energy_mu");
  }
  if (root.contains("exact_solution")) {
    if (!root["exact_solution"].is_boolean()) fail("exact_solution", "expected true/false");
    cfg.exact_solution = root["exact_solution"].get<bool>();
  }
  if (root.contains("error_norm")) {
    const auto n = text(root["error_norm"], "error_norm");
    if (n == "complex") {
      cfg.error_norm = ErrorNorm::Complex;
    } else if (n == "modulus") {
      cfg.error_norm = ErrorNorm::Modulus;
    } else {
      fail("error_norm", "expected 'complex' or 'modulus'");
    }
  }
  if (root.contains("output_dir")) cfg.output_dir = text(root["output_dir"], "output_dir");
  else if (!cfg.name.empty()) cfg.output_dir = std::filesystem::path("out") / cfg.name;

  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read config " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  auto cfg = parse_config(buf.str(), file.parent_path());
  if (cfg.name.empty()) {
    cfg.name = file.stem().string();
    if (cfg.output_dir == "out") cfg.output_dir = std::filesystem::path("out") / cfg.name;
  }
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.axes.size() != cfg.dimension) fail("domain", "one interval per dimension");
  for (const auto& ax : cfg.axes) {
    try {
      (void)build_axis(cfg.bc, ax.a, ax.b, 2);
    } catch (const std::invalid_argument& e) {
      fail("domain", e.what());
    }
    if (ax.n < 2) fail("n", "must be at least 2");
    if (cfg.bc == BoundaryCondition::Periodic && ax.n % 2 != 0) {
      fail("n", "periodic grids need an even N");
    }
  }
  try {
    cfg.coefficients.validate();
  } catch (const std::invalid_argument& e) {
    fail("alpha/sigma", e.what());
  }

  std::size_t m = component_count(cfg.initial);
  std::size_t dims = expected_dims(cfg.initial);
  if (!cfg.initial_file.empty()) {
    FieldFileHeader h;
    try {
      h = read_field_header(cfg.initial_file);
    } catch (const IoError& e) {
      fail("initial.path", e.what());
    }
    m = h.components;
    dims = h.dims;
    if (h.bc != cfg.bc) fail("initial.path", "boundary condition differs from config");
    for (std::size_t i = 0; i < h.extents.size() && i < cfg.axes.size(); ++i) {
      if (h.extents[i] != cfg.axes[i].n) fail("initial.path", "shape differs from config");
    }
  }
  if (dims != cfg.dimension) {
    fail("initial", "preset needs dimension " + std::to_string(dims));
  }
  if (m != cfg.components()) {
    fail("alpha/sigma", "preset has " + std::to_string(m) + " components, sigma is " +
                            std::to_string(cfg.components()) + " x " +
                            std::to_string(cfg.components()));
  }

  if (!(cfg.T > 0.0) || !std::isfinite(cfg.T)) fail("T", "must be positive");
  if (cfg.k != 0.0) {
    try {
      (void)step_count(cfg.T, cfg.k);
    } catch (const std::invalid_argument& e) {
      fail("k", e.what());
    }
  }
  if (cfg.diagnostics_every == 0) fail("diagnostics_every", "must be >= 1");
  if (cfg.energy_mu) {
    if (!(*cfg.energy_mu > 0.0)) fail("energy_mu", "must be positive");
    if (cfg.components() % 2 != 0) fail("energy_mu", "energy needs an even M");
  }
  if (cfg.exact_solution && !std::holds_alternative<SingleSoliton>(cfg.initial)) {
    fail("exact_solution", "only available with the single_soliton preset");
  }
  if (cfg.output_dir.empty()) fail("output_dir", "must not be empty");
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  j["dimension"] = cfg.dimension;
  json domain = json::array(), ns = json::array();
  for (const auto& ax : cfg.axes) {
    domain.push_back({ax.a, ax.b});
    ns.push_back(ax.n);
  }
  j["domain"] = domain;
  j["n"] = ns;
  j["bc"] = std::string(to_string(cfg.bc));
  j["alpha"] = cfg.coefficients.alpha;
  j["sigma"] = cfg.coefficients.sigma;

  json ic;
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        auto pulses = [](const auto& list) {
          json out = json::array();
          for (const auto& s : list) out.push_back({{"r", s.r}, {"shift", s.shift}, {"v", s.v}});
          return out;
        };
        if constexpr (std::is_same_v<P, SingleSoliton>) {
          ic = {{"preset", "single_soliton"}, {"mu", p.mu}, {"alpha", p.alpha},
                {"e", p.e}, {"v", p.v}};
        } else if constexpr (std::is_same_v<P, TwoSoliton>) {
          ic = {{"preset", "two_soliton"}, {"pulses", pulses(p.pulses)}};
        } else if constexpr (std::is_same_v<P, FourSoliton>) {
          ic = {{"preset", "four_soliton"}, {"pulses", pulses(p.pulses)}};
        } else if constexpr (std::is_same_v<P, FourWave2D>) {
          ic = {{"preset", "four_wave_2d"}, {"c", p.c}};
        } else if constexpr (std::is_same_v<P, FourWave3D>) {
          ic = {{"preset", "four_wave_3d"}, {"c", p.c}};
        } else if constexpr (std::is_same_v<P, BlowUpPair>) {
          ic = {{"preset", "blowup_pair"}};
        } else {
          ic = {{"preset", "file"}, {"path", cfg.initial_file}};
        }
      },
      cfg.initial);
  j["initial"] = ic;
  j["stepper"] = std::string(to_string(cfg.stepper));
  j["k"] = cfg.k;
  j["T"] = cfg.T;
  j["diagnostics_every"] = cfg.diagnostics_every;
  j["snapshot_every"] = cfg.snapshot_every;
  j["snapshot_format"] =
      cfg.snapshot_format == SnapshotFormat::Modulus ? "modulus" : "complex";
  j["energy_mu"] = cfg.energy_mu ? json(*cfg.energy_mu) : json(nullptr);
  j["exact_solution"] = cfg.exact_solution;
  j["error_norm"] = std::string(to_string(cfg.error_norm));
  j["output_dir"] = cfg.output_dir.string();
  return j.dump(2);
}

std::filesystem::path resolve_output_dir(const std::filesystem::path& dir) {
  if (dir.is_absolute()) return dir;
  const char* root = std::getenv("CNLS_OUTPUT_ROOT");
  if (root && *root) return std::filesystem::path(root) / dir;
  return dir;
}

}  // namespace cnls
