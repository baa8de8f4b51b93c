// cnls: experiment runner for coupled NLS systems.
//
//   cnls simulate       --config FILE [--output DIR]
//   cnls conserve       --config FILE [--output DIR]
//   cnls converge-time  --config FILE --ks 1/40,1/80,... [--output DIR]
//   cnls converge-space --config FILE --ns 64,128,... [--k K --T T] [--output DIR]
//   cnls stability-map  --ys=0,-1,-2 [--window=-6,1,-5,5] [--res=64,64]
//
// Relative output directories are placed under $CNLS_OUTPUT_ROOT when set.
// Exit codes: 0 ok, 2 invalid configuration or arguments, 3 divergence,
// 4 I/O failure, 1 anything else.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "cnls/config.hpp"
#include "cnls/experiments.hpp"
#include "cnls/io.hpp"
#include "cnls/manifest.hpp"

namespace fs = std::filesystem;

namespace {

void report(const cnls::RunOutcome& out) {
  for (const auto& w : out.warnings) fmt::print(stderr, "warning: {}\n", w);
  if (!out.message.empty()) fmt::print(stderr, "{}\n", out.message);
  for (const auto& f : out.files) fmt::print("{}\n", (out.dir / f).string());
  if (!out.files.empty()) fmt::print("{}\n", (out.dir / "manifest.json").string());
}

fs::path output_for(const std::string& override_dir, const fs::path& fallback) {
  return cnls::resolve_output_dir(override_dir.empty() ? fallback : fs::path(override_dir));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral exponential integrators for coupled NLS systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cnls::kSoftwareVersion);

  std::string config_file, output;
  std::vector<std::string> ks, ys;
  std::vector<std::size_t> ns;
  std::vector<double> window{-6.0, 1.0, -5.0, 5.0};
  std::vector<std::size_t> res{64, 64};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "experiment config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--output", output, "output directory (overrides config)");
  };

  auto* simulate = app.add_subcommand("simulate", "run one configuration");
  add_common(simulate);
  auto* conserve = app.add_subcommand("conserve", "simulate and summarise invariant drift");
  add_common(conserve);
  auto* ctime = app.add_subcommand("converge-time", "temporal convergence ladder");
  add_common(ctime);
  ctime->add_option("--ks", ks, "step sizes, e.g. 1/40,1/80")->required()->delimiter(',');
  auto* cspace = app.add_subcommand("converge-space", "spatial convergence ladder");
  add_common(cspace);
  cspace->add_option("--ns", ns, "grid sizes, e.g. 64,128")->required()->delimiter(',');
  std::string space_k;
  double space_T = 0.0;
  cspace->add_option("--k", space_k, "time step override, e.g. 1e-3");
  cspace->add_option("--T", space_T, "final time override");
  auto* smap = app.add_subcommand("stability-map", "sample |r(x, y)| of IFRK4-P13");
  smap->add_option("--ys", ys, "y values, e.g. --ys=0,-1,-2+1i")->delimiter(',');
  smap->add_option("--window", window, "re_min,re_max,im_min,im_max")
      ->delimiter(',')
      ->expected(4);
  smap->add_option("--res", res, "samples per axis: n or nx,ny")
      ->delimiter(',')
      ->expected(1, 2);
  smap->add_option("--output", output, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (smap->parsed()) {
      std::vector<cnls::Complex> values;
      for (const auto& y : ys) values.push_back(cnls::parse_complex(y));
      const std::size_t nx = res.at(0);
      const std::size_t ny = res.size() > 1 ? res[1] : nx;
      const cnls::Window w{window[0], window[1], window[2], window[3]};
      const auto out =
          cnls::run_stability_map(values, w, nx, ny, output_for(output, "out/stability"));
      report(out);
      return out.exit_code;
    }

    auto cfg = cnls::load_config(config_file);
    if (cspace->parsed() && (!space_k.empty() || space_T > 0.0)) {
      if (!space_k.empty()) cfg.k = cnls::parse_step_value(space_k);
      if (space_T > 0.0) cfg.T = space_T;
      cnls::validate(cfg);
    }
    const auto dir = output_for(output, cfg.output_dir);
    cnls::RunOutcome out;
    if (simulate->parsed()) {
      out = cnls::run_simulate(cfg, dir);
    } else if (conserve->parsed()) {
      out = cnls::run_conserve(cfg, dir);
    } else if (ctime->parsed()) {
      std::vector<double> ladder;
      for (const auto& k : ks) ladder.push_back(cnls::parse_step_value(k));
      out = cnls::run_converge_time(cfg, ladder, dir);
    } else {
      out = cnls::run_converge_space(cfg, ns, dir);
    }
    report(out);
    return out.exit_code;
  } catch (const cnls::ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return cnls::kExitConfig;
  } catch (const cnls::DivergenceError& e) {
    fmt::print(stderr, "{}\n", e.what());
    return cnls::kExitDivergence;
  } catch (const cnls::IoError& e) {
    fmt::print(stderr, "i/o error: {}\n", e.what());
    return cnls::kExitIo;
  } catch (const fs::filesystem_error& e) {
    fmt::print(stderr, "i/o error: {}\n", e.what());
    return cnls::kExitIo;
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "invalid argument: {}\n", e.what());
    return cnls::kExitConfig;
  } catch (const std::domain_error& e) {
    fmt::print(stderr, "invalid argument: {}\n", e.what());
    return cnls::kExitConfig;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
}
