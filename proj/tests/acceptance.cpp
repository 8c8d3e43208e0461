// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance --config configs/simulation.json --cli build/raysep --work <dir> [--seeds 20]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace raysep;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Args {
  std::string config;
  std::string cli;
  std::string work = "acceptance_work";
  int seeds = 20;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... v) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, v...);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (std::uint64_t c = 0; c < 10; ++c) {
    const Eigen::Index l = 1 + static_cast<Eigen::Index>((c * 5 + 3) % 8);
    const Eigen::Index r = 1 + static_cast<Eigen::Index>((c * 7 + 2) % 16);
    const CMatrix x = oracle::random_matrix(l, r, 1000 + c);
    worst = std::max(worst, (estimate_trispectrum(x) - oracle::cumulant_quadruple_loop(x)).cwiseAbs().maxCoeff());
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-10 && t < 5.0, fmt("max abs error %.3g over 10 cases, %.2fs", worst, t)};
}

Outcome identical_realizations() {
  const auto t0 = std::chrono::steady_clock::now();
  const CVector v = oracle::random_matrix(8, 1, 2024).col(0);
  const CMatrix c = estimate_trispectrum(v.replicate(1, 16));
  const CMatrix xx = v * v.adjoint();
  CMatrix kron(64, 64);
  for (Eigen::Index a = 0; a < 8; ++a)
    for (Eigen::Index b = 0; b < 8; ++b) kron.block(a * 8, b * 8, 8, 8) = xx(a, b) * xx.conjugate();
  const double rel = (c + kron).norm() / kron.norm();
  const double t = seconds_since(t0);
  return {rel <= 1e-12 && t < 1.0, fmt("relative Frobenius error %.3g, %.3fs", rel, t)};
}

Outcome gaussian_suppression() {
  const auto t0 = std::chrono::steady_clock::now();
  // 2 x 2 array, sub-bands of 2 bins: L = 8, R = K_f.
  auto norm_at = [](const NoiseSpec& spec, std::size_t r) {
    auto g = ArrayGeometry::make(2, 2, 1.0, 1500.0, linspace(1.0, double(r + 1), r + 1));
    SpectralCube cube{g, generate_noise({2, 2, r + 1}, spec)};
    return estimate_trispectrum(subcube_vectors(cube, SmoothingPlan{1, 1, r})).norm();
  };
  std::string detail;
  bool pass = true;
  for (bool colored : {false, true}) {
    std::vector<double> small, large;
    for (std::uint64_t s = 0; s < 10; ++s) {
      NoiseSpec spec{colored ? NoiseKind::colored : NoiseKind::white, 0.0, {0.9}, 500 + s};
      small.push_back(norm_at(spec, 64));
      spec.seed += 100;
      large.push_back(norm_at(spec, 4096));
    }
    const double ratio = median(large) / median(small);
    pass = pass && ratio < 0.25;
    detail += fmt("%s ratio %.3f; ", colored ? "AR(1) 0.9" : "white", ratio);
  }
  const double t = seconds_since(t0);
  return {pass && t < 60.0, detail + fmt("%.1fs", t)};
}

Outcome noiseless_orthogonality() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = ArrayGeometry::make(4, 4, 2.5, 1500.0, linspace(0.0, 5000.0, 75));
  const double t_direct = 2000.0 / 1500.0;
  const std::vector<RaypathParams> all{{1.0, 4.0, -5.0, t_direct + 0.002},
                                       {-1.0, -6.0, 3.0, t_direct + 0.005},
                                       {0.8, 10.0, 8.0, t_direct + 0.008}};
  const SmoothingPlan plan{3, 3, 5, 5, 8, SteeringAnchor::center};  // L = 2 * 2 * 4 = 16
  const GridSpec grid{{-15.0, 15.0, 0.5}, {-15.0, 15.0, 0.5}, {t_direct - 0.001, t_direct + 0.011, 0.0005}};
  double worst = 0.0;
  bool peaks_ok = true;
  std::string detail;
  for (std::size_t p = 1; p <= 3; ++p) {
    const std::vector<RaypathParams> paths(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(p));
    const auto cube = synthesize(g, paths);
    const auto split = eigensplit(estimate_trispectrum(subcube_vectors(cube, plan)), p, StatisticOrder::fourth);
    double w = 0.0;
    for (const auto& path : paths) {
      const CVector d4 = quadratic_steering(
          smoothed_steering(g, plan, path.emission_angle, path.reception_angle, path.arrival_time));
      w = std::max(w, std::sqrt(split.noise_energy(d4)) / d4.norm());
    }
    worst = std::max(worst, w);
    const auto ps = eval_double4(split, g, plan, grid);
    const auto hits = match_to_truth(extract_peaks(ps, p).peaks, paths, grid, 1).hits();
    peaks_ok = peaks_ok && hits == p;
    detail += fmt("P=%zu residual %.3g peaks %zu/%zu; ", p, w, hits, p);
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-6 && peaks_ok && t < 120.0, detail + fmt("L=16, %.1fs", t)};
}

struct SeedTable {
  std::vector<std::array<std::size_t, 3>> hits;  // smusical, double2, double4
  std::size_t paths = 0;
  double seconds = 0.0;
};

SeedTable run_seeds(const ScenarioConfig& cfg, int seeds) {
  SeedTable t;
  t.paths = cfg.paths.size();
  const auto t0 = std::chrono::steady_clock::now();
  for (int s = 1; s <= seeds; ++s) {
    const auto out = compare_methods(cfg, static_cast<std::uint64_t>(s));
    t.hits.push_back({out[0].match.hits(), out[1].match.hits(), out[2].match.hits()});
  }
  t.seconds = seconds_since(t0);
  return t;
}

Outcome reproduction(const SeedTable& t) {
  std::size_t all_hit = 0;
  for (const auto& h : t.hits) all_hit += h[2] == t.paths;
  const double rate = double(all_hit) / double(t.hits.size());
  return {rate >= 0.9 && t.seconds < 900.0,
          fmt("double4 recovered all %zu paths in %zu/%zu seeds (%.0f%%), %.0fs for all estimators", t.paths, all_hit,
              t.hits.size(), 100.0 * rate, t.seconds)};
}

Outcome baseline_contrast(const SeedTable& t) {
  std::array<std::size_t, 3> missed{}, total{};
  std::printf("    seed  smusical  double2  double4\n");
  for (std::size_t s = 0; s < t.hits.size(); ++s) {
    std::printf("    %4zu  %5zu/%zu  %4zu/%zu  %4zu/%zu\n", s + 1, t.hits[s][0], t.paths, t.hits[s][1], t.paths,
                t.hits[s][2], t.paths);
    for (int m = 0; m < 3; ++m) {
      missed[m] += t.hits[s][m] < t.paths;
      total[m] += t.hits[s][m];
    }
  }
  const double n = double(t.hits.size());
  const double denom = n * double(t.paths);
  const bool pass = missed[0] >= n / 2 && missed[1] >= n / 2 && total[2] > total[0] && total[2] > total[1];
  return {pass, fmt("seeds with a miss: smusical %zu, double2 %zu; hit rate smusical %.2f double2 %.2f double4 %.2f",
                    missed[0], missed[1], total[0] / denom, total[1] / denom, total[2] / denom)};
}

Outcome invariance_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = ArrayGeometry::make(4, 4, 2.5, 1500.0, linspace(0.0, 5000.0, 75));
  const double t_direct = 2000.0 / 1500.0;
  const std::vector<RaypathParams> paths{{1.0, 0.0, 0.0, t_direct}, {-1.0, 4.0, -4.0, t_direct + 0.002}};
  const auto cube = synthesize(g, paths, NoiseSpec{NoiseKind::white, 2.0, {}, 77});
  const SmoothingPlan plan{3, 3, 5, 21, 10, SteeringAnchor::center};  // L = 2 * 2 * 6 = 24
  const GridSpec grid{{-8.0, 8.0, 0.5}, {-8.0, 8.0, 0.5}, {t_direct - 0.002, t_direct + 0.006, 0.0005}};
  const CMatrix x = subcube_vectors(cube, plan);
  const CMatrix c = estimate_trispectrum(x);
  const auto split = eigensplit(c, 2, StatisticOrder::fourth);
  const auto base = eval_double4(split, g, plan, grid);

  const auto scaled = eval_double4(eigensplit(CMatrix(c * 1e3), 2, StatisticOrder::fourth), g, plan, grid);
  auto argmax = [](const PseudoSpectrumGrid& ps) {
    return std::max_element(ps.values.begin(), ps.values.end()) - ps.values.begin();
  };
  bool same_peaks = argmax(base) == argmax(scaled);
  const auto pa = extract_peaks(base, 4).peaks, pb = extract_peaks(scaled, 4).peaks;
  same_peaks = same_peaks && pa.size() == pb.size();
  for (std::size_t i = 0; same_peaks && i < pa.size(); ++i) {
    same_peaks = pa[i].ie == pb[i].ie && pa[i].ir == pb[i].ir && pa[i].it == pb[i].it;
  }

  const auto phased = eval_double4(
      eigensplit(estimate_trispectrum(std::polar(1.0, 2.1) * x), 2, StatisticOrder::fourth), g, plan, grid);
  double phase_err = 0.0;
  for (std::size_t i = 0; i < base.values.size(); ++i) {
    phase_err = std::max(phase_err, std::abs(phased.values[i] - base.values[i]) / base.values[i]);
  }

  double comp_err = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const CVector probe = quadratic_steering(oracle::random_matrix(24, 1, 900 + s).col(0));
    const double direct = (split.noise_basis.adjoint() * probe).squaredNorm();
    comp_err = std::max(comp_err, std::abs(direct - split.noise_energy(probe)) / direct);
  }

  CMatrix u(split.dim, split.dim);
  u << split.signal_basis, split.noise_basis;
  const double recon = (u * split.eigenvalues.cast<cplx>().asDiagonal() * u.adjoint() - c).norm() / c.norm();

  const double t = seconds_since(t0);
  const bool pass = same_peaks && phase_err <= 1e-10 && comp_err <= 1e-9 && recon <= 1e-10 && t < 60.0;
  return {pass, fmt("scaled peaks %s, phase %.2g, complement %.2g, reconstruction %.2g, %.1fs",
                    same_peaks ? "identical" : "differ", phase_err, comp_err, recon, t)};
}

Outcome pipeline_determinism(const Args& a) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<fs::path> dirs{fs::path(a.work) / "run1", fs::path(a.work) / "run2"};
  for (const auto& d : dirs) {
    fs::remove_all(d);
    const std::string cmd = "\"" + a.cli + "\" --threads 2 --deterministic compare --config \"" + a.config +
                            "\" --out-dir \"" + d.string() + "\" > \"" + d.string() + ".log\" 2>&1";
    fs::create_directories(d);
    if (std::system(cmd.c_str()) != 0) return {false, "compare failed: " + cmd};
  }
  std::size_t compared = 0;
  for (const char* f : {"smusical.grid", "double2.grid", "double4.grid", "report.txt"}) {
    const auto x = read_text(dirs[0] / f), y = read_text(dirs[1] / f);
    if (x != y) return {false, std::string(f) + " differs between runs"};
    ++compared;
  }
  return {true, fmt("%zu files byte-identical, %.1fs", compared, seconds_since(t0))};
}

}  // namespace

int main(int argc, char** argv) {
  Args a;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string k = argv[i];
    if (k == "--config") a.config = argv[i + 1];
    else if (k == "--cli") a.cli = argv[i + 1];
    else if (k == "--work") a.work = argv[i + 1];
    else if (k == "--seeds") a.seeds = std::atoi(argv[i + 1]);
  }
  if (a.config.empty() || a.cli.empty()) {
    std::fprintf(stderr, "usage: acceptance --config <scenario.json> --cli <raysep> [--work dir] [--seeds n]\n");
    return 2;
  }
  fs::create_directories(a.work);

  int failed = 0;
  auto report = [&](int id, const char* title, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %d %s: %s (%s)\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "cumulant matches quadruple-loop oracle", oracle_equivalence);
  report(2, "identical-realization identity", identical_realizations);
  report(3, "Gaussian cumulant suppression", gaussian_suppression);
  report(4, "noiseless orthogonality and argmax", noiseless_orthogonality);

  const auto cfg = load_config(a.config);
  SeedTable table;
  try {
    table = run_seeds(cfg, a.seeds);
  } catch (const std::exception& e) {
    std::printf("seed sweep failed: %s\n", e.what());
  }
  report(5, "five-path separation at 2 dB", [&] { return reproduction(table); });
  report(6, "baseline contrast", [&] { return baseline_contrast(table); });
  report(7, "invariance suite", invariance_suite);
  report(8, "pipeline determinism", [&] { return pipeline_determinism(a); });

  std::printf("%d of 8 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
