#include "cnls/experiments.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>

#include "cnls/io.hpp"
#include "cnls/manifest.hpp"

namespace cnls {

namespace fs = std::filesystem;

namespace {

double norm_of(ErrorNorm norm, const ComplexField& a, const ComplexField& b) {
  return norm == ErrorNorm::Modulus ? linf_modulus_error(a, b) : linf_error(a, b);
}

double cpu_now() { return static_cast<double>(std::clock()) / CLOCKS_PER_SEC; }

ExperimentConfig with_step(const ExperimentConfig& cfg, double k) {
  ExperimentConfig c = cfg;
  c.k = k;
  validate(c);
  return c;
}

SystemState run_to_end(const ExperimentConfig& cfg, const Grid& grid) {
  auto stepper =
      ExponentialStepper::for_system(cfg.stepper, cfg.k, grid, cfg.coefficients);
  return integrate(stepper, initial_state(cfg, grid), cfg.T).state;
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void write_file(const fs::path& dir, const fs::path& rel, const std::string& text,
                RunOutcome& out) {
  write_text_atomic(dir / rel, text);
  out.files.push_back(rel);
}

std::string diagnostics_csv(std::size_t components,
                            const std::vector<DiagnosticRecord>& records) {
  std::string text = csv_header(components) + "\n";
  for (const auto& r : records) text += csv_row(r) + "\n";
  return text;
}

std::string conservation_csv(const std::vector<DiagnosticRecord>& records) {
  std::string text = "quantity,initial,final,max_abs_drift\n";
  if (records.empty()) return text;
  const auto& first = records.front();
  const auto& last = records.back();
  for (std::size_t j = 0; j < first.mass.size(); ++j) {
    double drift = 0.0;
    for (const auto& r : records) drift = std::max(drift, std::abs(r.mass[j] - first.mass[j]));
    text += fmt::format("I_{},{:.17g},{:.17g},{:.6e}\n", j + 1, first.mass[j],
                        last.mass[j], drift);
  }
  if (first.energy) {
    double drift = 0.0;
    for (const auto& r : records) drift = std::max(drift, std::abs(*r.energy - *first.energy));
    text += fmt::format("E,{:.17g},{:.17g},{:.6e}\n", *first.energy, *last.energy, drift);
  }
  return text;
}

RunOutcome simulate_into(const ExperimentConfig& cfg, const fs::path& dir,
                         const std::string& command, bool conservation) {
  RunOutcome out;
  out.dir = dir;
  RunManifest manifest(command, dir);
  manifest.set_config(config_to_json(cfg));
  make_dir(dir);

  double snapshot_seconds = 0.0;
  SnapshotSink sink;
  if (cfg.snapshot_every > 0) {
    make_dir(dir / "snapshots");
    sink = [&](std::size_t step, const SystemState& s, const Grid& grid) {
      const double t0 = cpu_now();
      if (cfg.snapshot_format == SnapshotFormat::Complex) {
        const fs::path rel = fs::path("snapshots") / fmt::format("step_{:07d}.csv", step);
        write_fields(dir / rel, s.fields, grid);
        out.files.push_back(rel);
      } else {
        for (std::size_t j = 0; j < s.fields.size(); ++j) {
          const fs::path rel =
              fs::path("snapshots") / fmt::format("step_{:07d}_psi{}.csv", step, j + 1);
          write_modulus(dir / rel, s.fields[j], grid);
          out.files.push_back(rel);
        }
      }
      snapshot_seconds += cpu_now() - t0;
    };
  }

  PhaseTimer run_timer(manifest, "simulate");
  SimulationOutput sim = simulate(cfg, sink);
  run_timer.finish();
  if (snapshot_seconds > 0.0) manifest.add_phase("snapshots_cpu", snapshot_seconds);

  PhaseTimer write_timer(manifest, "write");
  write_file(dir, "diagnostics.csv", diagnostics_csv(cfg.components(), sim.records), out);
  if (conservation) write_file(dir, "conservation.csv", conservation_csv(sim.records), out);
  write_timer.finish();

  for (const auto& w : sim.warnings) manifest.add_warning(w);
  out.warnings = sim.warnings;
  if (sim.divergence_step) {
    out.exit_code = kExitDivergence;
    out.message = sim.divergence_message;
    manifest.set_status("diverged", sim.divergence_step);
  }
  manifest.set_parameter("steps", std::to_string(sim.steps));
  for (const auto& f : out.files) manifest.add_file(f);
  manifest.write();
  return out;
}

}  // namespace

SystemState initial_state(const ExperimentConfig& cfg, const Grid& grid) {
  if (!cfg.initial_file.empty()) {
    return make_initial(CustomFields{read_fields(cfg.initial_file)}, grid);
  }
  return make_initial(cfg.initial, grid);
}

SimulationOutput simulate(const ExperimentConfig& cfg, const SnapshotSink& snapshots) {
  if (!(cfg.k > 0.0)) throw ConfigError("k: required for a simulation run");
  validate(cfg);
  const Grid grid = cfg.make_grid();
  auto stepper =
      ExponentialStepper::for_system(cfg.stepper, cfg.k, grid, cfg.coefficients);
  const auto* soliton = std::get_if<SingleSoliton>(&cfg.initial);

  SimulationOutput out;
  auto record = [&](std::size_t, const SystemState& s) {
    DiagnosticRecord r;
    r.time = s.time;
    for (const auto& f : s.fields) r.mass.push_back(mass(f, grid));
    if (cfg.energy_mu) {
      r.energy = energy(s.fields, grid, stepper.transform(), cfg.coefficients,
                        *cfg.energy_mu);
    }
    if (cfg.exact_solution && soliton) {
      r.linf_error = norm_of(cfg.error_norm, s.fields[0],
                             exact_single_soliton(grid, s.time, *soliton));
    }
    out.records.push_back(std::move(r));
  };
  std::vector<Observer> observers{{cfg.diagnostics_every, record}};
  if (snapshots && cfg.snapshot_every > 0) {
    observers.push_back({cfg.snapshot_every, [&](std::size_t step, const SystemState& s) {
                           snapshots(step, s, grid);
                         }});
  }

  try {
    auto result = integrate(stepper, initial_state(cfg, grid), cfg.T, observers);
    out.state = std::move(result.state);
    out.steps = result.steps;
    out.warnings = std::move(result.warnings);
  } catch (const DivergenceError& e) {
    out.divergence_step = e.step();
    out.divergence_message = e.what();
    out.steps = e.step();
  }
  return out;
}

ConvergenceTable converge_time(const ExperimentConfig& cfg, std::span<const double> ks) {
  if (ks.empty()) throw ConfigError("ks: ladder is empty");
  ConvergenceTable table;
  table.mode = cfg.exact_solution ? ErrorMode::Exact : ErrorMode::SuccessiveDifference;
  table.norm = cfg.error_norm;
  const Grid grid = cfg.make_grid();

  std::vector<ComplexField> finals;
  for (double k : ks) {
    const auto c = with_step(cfg, k);
    const double t0 = cpu_now();
    SystemState s = run_to_end(c, grid);
    const double cpu = cpu_now() - t0;
    table.rows.push_back({k, 0.0, std::nullopt, cpu});
    if (table.mode == ErrorMode::Exact) {
      const auto& p = std::get<SingleSoliton>(cfg.initial);
      table.rows.back().linf_error =
          norm_of(table.norm, s.fields[0], exact_single_soliton(grid, cfg.T, p));
    }
    finals.push_back(std::move(s.fields[0]));
  }
  if (table.mode == ErrorMode::SuccessiveDifference) {
    finals.push_back(run_to_end(with_step(cfg, ks.back() / 2.0), grid).fields[0]);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      table.rows[i].linf_error = norm_of(table.norm, finals[i], finals[i + 1]);
    }
  }

  std::vector<double> errors;
  for (const auto& r : table.rows) errors.push_back(r.linf_error);
  if (errors.size() >= 2) {
    const bool usable = std::all_of(errors.begin(), errors.end(),
                                    [](double e) { return e > 0.0 && std::isfinite(e); });
    if (usable) {
      const auto orders = convergence_order(errors);
      for (std::size_t i = 0; i < orders.size(); ++i) table.rows[i + 1].order = orders[i];
    } else {
      table.warnings.push_back("an error is zero or not finite; orders left empty");
    }
  }
  return table;
}

std::vector<SpaceRow> converge_space(const ExperimentConfig& cfg,
                                     std::span<const std::size_t> ns) {
  if (ns.empty()) throw ConfigError("ns: ladder is empty");
  if (!cfg.exact_solution) {
    throw ConfigError("exact_solution: spatial convergence needs the exact solution");
  }
  if (!(cfg.k > 0.0)) throw ConfigError("k: required for spatial convergence");
  const auto& p = std::get<SingleSoliton>(cfg.initial);
  std::vector<SpaceRow> rows;
  for (std::size_t n : ns) {
    ExperimentConfig c = cfg;
    for (auto& ax : c.axes) ax.n = n;
    validate(c);
    const Grid grid = c.make_grid();
    const double t0 = cpu_now();
    SystemState s = run_to_end(c, grid);
    const double cpu = cpu_now() - t0;
    rows.push_back({n, norm_of(c.error_norm, s.fields[0], exact_single_soliton(grid, c.T, p)),
                    cpu});
  }
  return rows;
}

std::string convergence_csv(const ConvergenceTable& table) {
  std::string text = "k,linf_error,order,cpu_seconds\n";
  for (const auto& r : table.rows) {
    text += fmt::format("{:.17g},{:.17g},{},{:.6f}\n", r.k, r.linf_error,
                        r.order ? fmt::format("{:.4f}", *r.order) : "", r.cpu_seconds);
  }
  return text;
}

std::string space_csv(std::span<const SpaceRow> rows) {
  std::string text = "N,linf_error,cpu_seconds\n";
  for (const auto& r : rows) {
    text += fmt::format("{},{:.17g},{:.6f}\n", r.n, r.linf_error, r.cpu_seconds);
  }
  return text;
}

std::string stability_csv(const StabilityGrid& grid) {
  std::string text = fmt::format("y,{:.17g},{:.17g}\nx_re,x_im,abs_r\n", grid.y.real(),
                                 grid.y.imag());
  for (std::size_t iy = 0; iy < grid.ny; ++iy) {
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const auto x = grid.x_at(ix, iy);
      text += fmt::format("{:.17g},{:.17g},{:.17g}\n", x.real(), x.imag(),
                          grid.abs_r[iy * grid.nx + ix]);
    }
  }
  return text;
}

RunOutcome run_simulate(const ExperimentConfig& cfg, const fs::path& dir) {
  return simulate_into(cfg, dir, "simulate", false);
}

RunOutcome run_conserve(const ExperimentConfig& cfg, const fs::path& dir) {
  return simulate_into(cfg, dir, "conserve", true);
}

RunOutcome run_converge_time(const ExperimentConfig& cfg, std::span<const double> ks,
                             const fs::path& dir) {
  RunOutcome out;
  out.dir = dir;
  RunManifest manifest("converge-time", dir);
  manifest.set_config(config_to_json(cfg));
  std::string ladder = "[";
  for (std::size_t i = 0; i < ks.size(); ++i) ladder += fmt::format("{}{:.17g}", i ? "," : "", ks[i]);
  manifest.set_parameter("ks", ladder + "]");
  make_dir(dir);

  PhaseTimer timer(manifest, "ladder");
  ConvergenceTable table;
  try {
    table = converge_time(cfg, ks);
  } catch (const DivergenceError& e) {
    timer.finish();
    out.exit_code = kExitDivergence;
    out.message = e.what();
    manifest.set_status("diverged", e.step());
    manifest.write();
    return out;
  }
  timer.finish();
  manifest.set_parameter("error_mode", table.mode == ErrorMode::Exact
                                           ? "\"exact\""
                                           : "\"successive_difference\"");
  manifest.set_parameter("error_norm", fmt::format("\"{}\"", to_string(table.norm)));
  write_file(dir, "converge_time.csv", convergence_csv(table), out);
  for (const auto& w : table.warnings) manifest.add_warning(w);
  out.warnings = table.warnings;
  for (const auto& f : out.files) manifest.add_file(f);
  manifest.write();
  return out;
}

RunOutcome run_converge_space(const ExperimentConfig& cfg,
                              std::span<const std::size_t> ns, const fs::path& dir) {
  RunOutcome out;
  out.dir = dir;
  RunManifest manifest("converge-space", dir);
  manifest.set_config(config_to_json(cfg));
  std::string ladder = "[";
  for (std::size_t i = 0; i < ns.size(); ++i) ladder += fmt::format("{}{}", i ? "," : "", ns[i]);
  manifest.set_parameter("ns", ladder + "]");
  make_dir(dir);

  PhaseTimer timer(manifest, "ladder");
  std::vector<SpaceRow> rows;
  try {
    rows = converge_space(cfg, ns);
  } catch (const DivergenceError& e) {
    timer.finish();
    out.exit_code = kExitDivergence;
    out.message = e.what();
    manifest.set_status("diverged", e.step());
    manifest.write();
    return out;
  }
  timer.finish();
  manifest.set_parameter("error_norm", fmt::format("\"{}\"", to_string(cfg.error_norm)));
  write_file(dir, "converge_space.csv", space_csv(rows), out);
  for (const auto& f : out.files) manifest.add_file(f);
  manifest.write();
  return out;
}

RunOutcome run_stability_map(std::span<const Complex> ys, const Window& window,
                             std::size_t nx, std::size_t ny, const fs::path& dir) {
  RunOutcome out;
  out.dir = dir;
  if (ys.empty()) {
    out.warnings.push_back("no y values given; nothing written");
    return out;
  }
  // Validate every input before touching the filesystem.
  (void)stability_region(ys.front(), window, 16, 16);

  RunManifest manifest("stability-map", dir);
  std::string params = fmt::format(
      "{{\"window\":[{:.17g},{:.17g},{:.17g},{:.17g}],\"nx\":{},\"ny\":{},\"ys\":[",
      window.re_min, window.re_max, window.im_min, window.im_max, nx, ny);
  for (std::size_t i = 0; i < ys.size(); ++i) {
    params += fmt::format("{}[{:.17g},{:.17g}]", i ? "," : "", ys[i].real(), ys[i].imag());
  }
  manifest.set_config(params + "]}");
  make_dir(dir);

  PhaseTimer timer(manifest, "sample");
  std::string areas = "y_re,y_im,stable_area\n";
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const auto grid = stability_region(ys[i], window, nx, ny);
    write_file(dir, fmt::format("stability_{:02d}.csv", i), stability_csv(grid), out);
    areas += fmt::format("{:.17g},{:.17g},{:.17g}\n", ys[i].real(), ys[i].imag(),
                         grid.stable_area());
  }
  write_file(dir, "stability_areas.csv", areas, out);
  timer.finish();
  for (const auto& f : out.files) manifest.add_file(f);
  manifest.write();
  return out;
}

}  // namespace cnls
