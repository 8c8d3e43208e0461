#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "raysep/raysep.hpp"

namespace fs = std::filesystem;
using namespace raysep;

namespace {

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::invalid_argument: return 2;
    case ErrorCategory::config: return 3;
    case ErrorCategory::format: return 4;
    case ErrorCategory::io: return 5;
    case ErrorCategory::numeric: return 6;
  }
  return 1;
}

struct Globals {
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  bool deterministic = false;

  std::uint64_t seed_for(const ScenarioConfig& cfg) const { return seed.value_or(cfg.seed); }
  RunOptions run() const { return {threads, deterministic}; }
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCategory::io, "cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) fail(ErrorCategory::io, "write to '" + path.string() + "' failed");
}

std::string peak_table(const PeakList& list) {
  std::string s = "rank     emit     recv    arrival_s        value\n";
  char buf[160];
  for (const auto& p : list.peaks) {
    std::snprintf(buf, sizeof buf, "%4d %8.2f %8.2f %12.6f %12.6g\n", p.rank, p.emission, p.reception, p.time,
                  p.value);
    s += buf;
  }
  if (list.truncated) s += "note: fewer local maxima than requested\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent raypath separation with double-array subspace estimators"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Override the scenario seed");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_flag("--deterministic", g.deterministic, "Fixed-order reduction in cumulant accumulation");

  std::string config_path, cube_path, out_path, grid_path, truth_path, method = "double4", csv_path, pgm_prefix;
  std::string out_dir = ".";
  std::size_t count = 0;
  long tolerance = 1;

  auto* synth = app.add_subcommand("synth", "Synthesize a spectral cube from a scenario");
  synth->add_option("--config", config_path)->required();
  synth->add_option("--out", out_path)->required();

  auto* est = app.add_subcommand("estimate", "Evaluate a pseudo-spectrum grid from a cube");
  est->add_option("--config", config_path)->required();
  est->add_option("--cube", cube_path)->required();
  est->add_option("--method", method)->check(CLI::IsMember({"double4", "double2", "smusical"}));
  est->add_option("--out", out_path)->required();
  est->add_option("--csv", csv_path, "Also export the grid as CSV");
  est->add_option("--pgm", pgm_prefix, "Also export PGM slices with this path prefix");

  auto* peaks = app.add_subcommand("peaks", "Extract peaks from a grid file");
  peaks->add_option("--grid", grid_path)->required();
  peaks->add_option("--count", count)->required()->check(CLI::PositiveNumber);
  peaks->add_option("--truth", truth_path, "Scenario config holding the true raypaths");
  peaks->add_option("--tolerance", tolerance, "Match tolerance in grid cells")->check(CLI::NonNegativeNumber);

  auto* cmp = app.add_subcommand("compare", "Run all three estimators on one synthesized cube");
  cmp->add_option("--config", config_path)->required();
  cmp->add_option("--out-dir", out_dir, "Directory for grid files and report.txt");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*synth) {
      const auto cfg = load_config(config_path);
      const auto cube = synthesize(cfg.geometry, cfg.paths, cfg.noise_for(g.seed_for(cfg)));
      save_cube(out_path, cube);
      if (cfg.noise) {
        const auto clean = synthesize_clean(cfg.geometry, cfg.paths);
        std::printf("wrote %s (snr %.6f dB)\n", out_path.c_str(), measure_snr(clean.data, cube.data));
      } else {
        std::printf("wrote %s (noiseless)\n", out_path.c_str());
      }
    } else if (*est) {
      const auto cfg = load_config(config_path);
      const auto cube = attach_geometry(load_cube(cube_path), cfg.geometry);
      const auto grid = run_estimator(cube, cfg, parse_estimator(method), g.run());
      save_grid(out_path, grid);
      if (!csv_path.empty()) export_csv(csv_path, grid);
      if (!pgm_prefix.empty()) export_pgm(pgm_prefix, grid);
      std::printf("wrote %s (%zu points)\n", out_path.c_str(), grid.values.size());
    } else if (*peaks) {
      const auto grid = load_grid(grid_path);
      const auto list = extract_peaks(grid, count);
      std::fputs(peak_table(list).c_str(), stdout);
      if (!truth_path.empty()) {
        const auto cfg = load_config(truth_path);
        const auto report = match_to_truth(list.peaks, cfg.paths, grid.grid, tolerance);
        for (std::size_t i = 0; i < report.truths.size(); ++i) {
          const auto& t = report.truths[i];
          std::printf("truth %zu: %s", i + 1, t.hit ? "hit" : "miss");
          if (t.hit) std::printf(" (peak %d, %ld cells)", t.peak_rank, t.cell_distance);
          std::printf("\n");
        }
        std::printf("hits %zu/%zu\n", report.hits(), report.truths.size());
      }
    } else if (*cmp) {
      const auto cfg = load_config(config_path);
      const auto seed = g.seed_for(cfg);
      const auto outcomes = compare_methods(cfg, seed, g.run());
      fs::create_directories(out_dir);
      for (const auto& o : outcomes) {
        save_grid(fs::path(out_dir) / (std::string(estimator_name(o.method)) + ".grid"), o.grid);
      }
      const auto report = format_report(cfg, seed, outcomes);
      write_text(fs::path(out_dir) / "report.txt", report);
      std::fputs(report.c_str(), stdout);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error category=%s message=%s\n", std::string(category_name(e.category())).c_str(),
                 e.what());
    return exit_code(e.category());
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "error category=io message=%s\n", e.what());
    return exit_code(ErrorCategory::io);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error category=internal message=%s\n", e.what());
    return 1;
  }
  return 0;
}
