#pragma once

#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include "raysep/cumulant.hpp"
#include "raysep/io.hpp"
#include "raysep/smoothing.hpp"
#include "raysep/spectrum.hpp"
#include "raysep/subspace.hpp"
#include "raysep/synth.hpp"

namespace raysep {

struct RunOptions {
  unsigned threads = 1;
  bool deterministic = true;
};

/// Smoothing, statistic estimation, subspace split and grid evaluation for one estimator.
inline PseudoSpectrumGrid run_estimator(const SpectralCube& cube, const ScenarioConfig& cfg, Estimator method,
                                        const RunOptions& run = {}) {
  const std::size_t p = cfg.paths.size();
  SpectrumOptions so;
  so.threads = run.threads;
  switch (method) {
    case Estimator::double4: {
      const CMatrix x = subcube_vectors(cube, cfg.smoothing);
      AccumulationOptions ao;
      ao.threads = run.threads;
      ao.deterministic = run.deterministic;
      auto eo = default_eigen_options(StatisticOrder::fourth);
      eo.want_noise_basis = false;
      const auto split = eigensplit(estimate_trispectrum(x, ao), p, StatisticOrder::fourth, eo);
      return eval_double4(split, cube.geom, cfg.smoothing, cfg.grid, so);
    }
    case Estimator::double2: {
      const CMatrix x = subcube_vectors(cube, cfg.smoothing);
      const auto split = eigensplit(estimate_covariance(x), p, StatisticOrder::second);
      return eval_double2(split, cube.geom, cfg.smoothing, cfg.grid, so);
    }
    case Estimator::smoothing_musical: {
      const CMatrix x = smoothing_musical_realizations(cube, cfg.smoothing);
      const auto split = eigensplit(estimate_covariance(x), p, StatisticOrder::second);
      return eval_smoothing_musical(split, cube.geom, cfg.smoothing, cfg.grid_2d(), so);
    }
  }
  fail(ErrorCategory::invalid_argument, "unknown estimator");
}

struct MethodOutcome {
  Estimator method = Estimator::double4;
  PseudoSpectrumGrid grid;
  PeakList peaks;
  MatchReport match;
};

inline MethodOutcome evaluate_method(const SpectralCube& cube, const ScenarioConfig& cfg, Estimator method,
                                     const RunOptions& run = {}) {
  MethodOutcome out;
  out.method = method;
  out.grid = run_estimator(cube, cfg, method, run);
  out.peaks = extract_peaks(out.grid, cfg.peak_count);
  out.match = match_to_truth(out.peaks.peaks, cfg.paths, out.grid.grid, cfg.tolerance_cells);
  return out;
}

inline constexpr std::array<Estimator, 3> all_estimators{Estimator::smoothing_musical, Estimator::double2,
                                                         Estimator::double4};

/// Synthesizes the configured cube and runs all three estimators on it.
inline std::vector<MethodOutcome> compare_methods(const ScenarioConfig& cfg, std::uint64_t seed,
                                                  const RunOptions& run = {}) {
  const SpectralCube cube = synthesize(cfg.geometry, cfg.paths, cfg.noise_for(seed));
  std::vector<MethodOutcome> out;
  for (Estimator e : all_estimators) out.push_back(evaluate_method(cube, cfg, e, run));
  return out;
}

/// Plain-text hit/miss table, one row per true raypath.
inline std::string format_report(const ScenarioConfig& cfg, std::uint64_t seed,
                                 const std::vector<MethodOutcome>& outcomes) {
  std::string s;
  char buf[256];
  std::snprintf(buf, sizeof buf, "scenario %s seed %llu tolerance %ld cells\n",
                cfg.name.empty() ? "-" : cfg.name.c_str(), static_cast<unsigned long long>(seed),
                cfg.tolerance_cells);
  s += buf;
  std::snprintf(buf, sizeof buf, "%-4s %8s %8s %12s", "path", "emit", "recv", "arrival_s");
  s += buf;
  for (const auto& o : outcomes) {
    std::snprintf(buf, sizeof buf, " %10s", std::string(estimator_name(o.method)).c_str());
    s += buf;
  }
  s += "\n";
  for (std::size_t i = 0; i < cfg.paths.size(); ++i) {
    const auto& p = cfg.paths[i];
    std::snprintf(buf, sizeof buf, "%-4zu %8.2f %8.2f %12.6f", i + 1, p.emission_angle, p.reception_angle,
                  p.arrival_time);
    s += buf;
    for (const auto& o : outcomes) {
      const auto& t = o.match.truths[i];
      if (t.hit) {
        std::snprintf(buf, sizeof buf, " %7s#%-2d", "hit", t.peak_rank);
      } else {
        std::snprintf(buf, sizeof buf, " %10s", "miss");
      }
      s += buf;
    }
    s += "\n";
  }
  std::snprintf(buf, sizeof buf, "%-35s", "hits");
  s += buf;
  for (const auto& o : outcomes) {
    std::snprintf(buf, sizeof buf, " %6zu/%-3zu", o.match.hits(), cfg.paths.size());
    s += buf;
  }
  s += "\n";
  return s;
}

}  // namespace raysep
