#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "raysep/smoothing.hpp"
#include "raysep/subspace.hpp"

namespace raysep {

struct Axis {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  std::size_t count() const { return static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1; }
  double value(std::size_t i) const { return min + step * static_cast<double>(i); }

  /// Nearest node index, or -1 when `v` lies more than half a step outside the axis.
  long nearest(double v) const {
    const double pos = (v - min) / step;
    const long i = std::lround(pos);
    if (i < 0 || i >= static_cast<long>(count())) return -1;
    return i;
  }

  void validate(const char* name) const {
    require(std::isfinite(min) && std::isfinite(max) && std::isfinite(step),
            std::string("grid: non-finite bounds on the ") + name + " axis");
    require(step > 0.0, std::string("grid: step must be positive on the ") + name + " axis");
    require(min <= max, std::string("grid: min must not exceed max on the ") + name + " axis");
  }
};

struct GridSpec {
  Axis emission;   // degrees
  Axis reception;  // degrees
  Axis time;       // seconds

  std::size_t size() const { return emission.count() * reception.count() * time.count(); }

  void validate() const {
    emission.validate("emission");
    reception.validate("reception");
    time.validate("time");
    require(emission.min > -90.0 && emission.max < 90.0, "grid: emission angles must lie in (-90, 90)");
    require(reception.min > -90.0 && reception.max < 90.0, "grid: reception angles must lie in (-90, 90)");
  }
};

enum class Estimator { double4, double2, smoothing_musical };

inline std::string_view estimator_name(Estimator e) {
  switch (e) {
    case Estimator::double4: return "double4";
    case Estimator::double2: return "double2";
    case Estimator::smoothing_musical: return "smusical";
  }
  return "unknown";
}

/// Pseudo-spectrum values over (emission, reception, time), time index innermost.
struct PseudoSpectrumGrid {
  GridSpec grid;
  std::vector<double> values;
  Estimator estimator = Estimator::double4;

  std::size_t index(std::size_t ie, std::size_t ir, std::size_t it) const {
    return (ie * grid.reception.count() + ir) * grid.time.count() + it;
  }
  double at(std::size_t ie, std::size_t ir, std::size_t it) const { return values[index(ie, ir, it)]; }
};

struct SpectrumOptions {
  unsigned threads = 1;
  double floor_ratio = 1e-12;      // denominator floor relative to |d|^2 (or |d4|^2)
  std::size_t chunk = 256;         // angle pairs per work item
};

namespace detail {

// Evaluates 1 / max(eps, |d|^2 - |Us^H d|^2) for d (order 2) or d (x) conj(d) (order 4).
//
// For a fixed angle pair the steering vector factors as dg(f, s) * e_f(T) with
// e_f(T) = exp(-j 2 pi nu_f T), so every signal-basis projection becomes a small
// quadratic (order 4) or linear (order 2) form in e(T). Those forms are built once
// per angle pair and then swept over the time axis.
inline PseudoSpectrumGrid evaluate_grid(const EigenSplit& split, const ReducedSteering& rs, const GridSpec& grid,
                                        StatisticOrder order, Estimator tag, const SpectrumOptions& opt) {
  grid.validate();
  const auto l = static_cast<Eigen::Index>(rs.layout.size());
  const auto s_len = static_cast<Eigen::Index>(rs.layout.sub_receivers * rs.layout.sub_sources);
  const auto fs = static_cast<Eigen::Index>(rs.layout.sub_freqs);
  const Eigen::Index expected = order == StatisticOrder::fourth ? l * l : l;
  if (static_cast<Eigen::Index>(split.dim) != expected || split.order != order) {
    fail(ErrorCategory::invalid_argument,
         "spectrum: subspace of dimension " + std::to_string(split.dim) + " does not match steering length " +
             std::to_string(l) + (order == StatisticOrder::fourth ? " squared" : ""));
  }
  const Eigen::Index k = split.signal_basis.cols();

  PseudoSpectrumGrid out;
  out.grid = grid;
  out.estimator = tag;
  out.values.assign(grid.size(), 0.0);

  const std::size_t ne = grid.emission.count(), nr = grid.reception.count(), nt = grid.time.count();
  const std::size_t pairs = ne * nr;

  // Phase ramps over the time axis.
  CMatrix e_time(fs, static_cast<Eigen::Index>(nt));
  for (Eigen::Index f = 0; f < fs; ++f) {
    for (std::size_t t = 0; t < nt; ++t) {
      e_time(f, static_cast<Eigen::Index>(t)) =
          std::polar(1.0, -two_pi * rs.freqs[static_cast<std::size_t>(f)] * grid.time.value(t));
    }
  }
  double d_norm2 = 0.0;
  for (const cplx& s : rs.spectrum) d_norm2 += std::norm(s) * static_cast<double>(s_len);
  const double norm2 = order == StatisticOrder::fourth ? d_norm2 * d_norm2 : d_norm2;
  const double floor = opt.floor_ratio * norm2;

  const CMatrix us_adj = split.signal_basis.adjoint();  // k x dim

  auto run_chunk = [&](std::size_t first, std::size_t last) {
    const auto pc = static_cast<Eigen::Index>(last - first);
    CMatrix dg(l, pc);
    for (std::size_t p = first; p < last; ++p) {
      const double te = grid.emission.value(p / nr);
      const double tr = grid.reception.value(p % nr);
      dg.col(static_cast<Eigen::Index>(p - first)) = rs(te, tr, 0.0);
    }

    // coeff(i)(row, pair): order 2 -> row f; order 4 -> row fa + fs * fb.
    std::vector<CMatrix> coeff(static_cast<std::size_t>(k));
    if (order == StatisticOrder::second) {
      for (Eigen::Index i = 0; i < k; ++i) coeff[static_cast<std::size_t>(i)].resize(fs, pc);
      for (Eigen::Index f = 0; f < fs; ++f) {
        const CMatrix h = us_adj.middleCols(f * s_len, s_len) * dg.middleRows(f * s_len, s_len);  // k x pc
        for (Eigen::Index i = 0; i < k; ++i) coeff[static_cast<std::size_t>(i)].row(f) = h.row(i);
      }
    } else {
      CMatrix tm(l, pc);
      for (Eigen::Index i = 0; i < k; ++i) {
        auto& c = coeff[static_cast<std::size_t>(i)];
        c.resize(fs * fs, pc);
        const Eigen::Map<const CMatrix> u(split.signal_basis.col(i).data(), l, l);  // u(b, a) = B(a, b)
        for (Eigen::Index fb = 0; fb < fs; ++fb) {
          tm.noalias() = u.transpose().middleCols(fb * s_len, s_len) * dg.middleRows(fb * s_len, s_len);
          for (Eigen::Index fa = 0; fa < fs; ++fa) {
            c.row(fa + fs * fb) = dg.middleRows(fa * s_len, s_len)
                                      .conjugate()
                                      .cwiseProduct(tm.middleRows(fa * s_len, s_len))
                                      .colwise()
                                      .sum();
          }
        }
      }
    }

    RVector proj(static_cast<Eigen::Index>(nt));
    CMatrix h(fs, fs), g(fs, static_cast<Eigen::Index>(nt));
    for (Eigen::Index p = 0; p < pc; ++p) {
      proj.setZero();
      for (Eigen::Index i = 0; i < k; ++i) {
        const auto& c = coeff[static_cast<std::size_t>(i)];
        if (order == StatisticOrder::second) {
          proj += (c.col(p).transpose() * e_time).cwiseAbs2().transpose();
        } else {
          for (Eigen::Index fb = 0; fb < fs; ++fb) h.col(fb) = c.col(p).segment(fs * fb, fs);
          g.noalias() = h * e_time;
          proj += (e_time.conjugate().cwiseProduct(g)).colwise().sum().cwiseAbs2().transpose();
        }
      }
      const std::size_t pair = first + static_cast<std::size_t>(p);
      for (std::size_t t = 0; t < nt; ++t) {
        const double den = std::max(floor, norm2 - proj(static_cast<Eigen::Index>(t)));
        out.values[pair * nt + t] = 1.0 / den;
      }
    }
  };

  const std::size_t chunk = std::max<std::size_t>(1, opt.chunk);
  const std::size_t nchunks = (pairs + chunk - 1) / chunk;
  const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(nchunks)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < nchunks; c = next++) run_chunk(c * chunk, std::min(pairs, (c + 1) * chunk));
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace detail

/// Fourth-order double-array estimator, 1 / (d4^H Un Un^H d4) with d4 = d (x) conj(d).
inline PseudoSpectrumGrid eval_double4(const EigenSplit& split, const ArrayGeometry& geom, const SmoothingPlan& plan,
                                       const GridSpec& grid, const SpectrumOptions& opt = {}) {
  return detail::evaluate_grid(split, ReducedSteering::make(geom, plan), grid, StatisticOrder::fourth,
                               Estimator::double4, opt);
}

/// Second-order double-array estimator, 1 / (d^H Un Un^H d).
inline PseudoSpectrumGrid eval_double2(const EigenSplit& split, const ArrayGeometry& geom, const SmoothingPlan& plan,
                                       const GridSpec& grid, const SpectrumOptions& opt = {}) {
  return detail::evaluate_grid(split, ReducedSteering::make(geom, plan), grid, StatisticOrder::second,
                               Estimator::double2, opt);
}

/// Geometry and plan of the reference-source slice used by smoothing-MUSICAL.
inline std::pair<ArrayGeometry, SmoothingPlan> smoothing_musical_setup(const ArrayGeometry& geom,
                                                                       const SmoothingPlan& plan) {
  ArrayGeometry g = geom;
  g.num_sources = 1;
  g.ref_source = 0;
  SmoothingPlan p = plan;
  p.k_sources = 1;
  return {g, p};
}

/// Realizations of the receiver x frequency data recorded from the reference source.
inline CMatrix smoothing_musical_realizations(const SpectralCube& cube, const SmoothingPlan& plan) {
  return subcube_vectors(reference_source_slice(cube), smoothing_musical_setup(cube.geom, plan).second);
}

/// Second-order 2D estimator over (reception, time). `geom`/`plan` describe the
/// full double array; the emission axis of `grid` must hold a single node.
inline PseudoSpectrumGrid eval_smoothing_musical(const EigenSplit& split, const ArrayGeometry& geom,
                                                 const SmoothingPlan& plan, const GridSpec& grid,
                                                 const SpectrumOptions& opt = {}) {
  require(grid.emission.count() == 1, "smoothing-MUSICAL: the emission axis must be degenerate (a single node)");
  const auto [g1, p1] = smoothing_musical_setup(geom, plan);
  return detail::evaluate_grid(split, ReducedSteering::make(g1, p1), grid, StatisticOrder::second,
                               Estimator::smoothing_musical, opt);
}

struct Peak {
  double emission = 0.0;   // degrees
  double reception = 0.0;  // degrees
  double time = 0.0;       // seconds
  double value = 0.0;
  int rank = 0;            // 1 = strongest
  std::size_t ie = 0, ir = 0, it = 0;
};

struct PeakList {
  std::vector<Peak> peaks;
  bool truncated = false;  // fewer local maxima than requested
};

/// Local maxima over the full 3x3x3 neighbourhood (boundary cells compare the
/// neighbours they have). Plateaus report their first cell in grid order.
/// Result is sorted by descending value, ties by ascending grid index.
inline PeakList extract_peaks(const PseudoSpectrumGrid& ps, std::size_t count) {
  require(count >= 1, "extract_peaks: count must be >= 1");
  const auto ne = static_cast<long>(ps.grid.emission.count());
  const auto nr = static_cast<long>(ps.grid.reception.count());
  const auto nt = static_cast<long>(ps.grid.time.count());
  std::vector<std::size_t> maxima;
  for (long ie = 0; ie < ne; ++ie) {
    for (long ir = 0; ir < nr; ++ir) {
      for (long it = 0; it < nt; ++it) {
        const std::size_t here = ps.index(ie, ir, it);
        const double v = ps.values[here];
        bool is_max = true;
        for (long de = -1; de <= 1 && is_max; ++de) {
          for (long dr = -1; dr <= 1 && is_max; ++dr) {
            for (long dt = -1; dt <= 1 && is_max; ++dt) {
              if (de == 0 && dr == 0 && dt == 0) continue;
              const long je = ie + de, jr = ir + dr, jt = it + dt;
              if (je < 0 || je >= ne || jr < 0 || jr >= nr || jt < 0 || jt >= nt) continue;
              const std::size_t there = ps.index(je, jr, jt);
              const double w = ps.values[there];
              is_max = there < here ? v > w : v >= w;
            }
          }
        }
        if (is_max) maxima.push_back(here);
      }
    }
  }
  std::stable_sort(maxima.begin(), maxima.end(),
                   [&](std::size_t a, std::size_t b) { return ps.values[a] > ps.values[b]; });
  PeakList out;
  out.truncated = maxima.size() < count;
  const std::size_t keep = std::min(count, maxima.size());
  for (std::size_t i = 0; i < keep; ++i) {
    const std::size_t flat = maxima[i];
    Peak p;
    p.it = flat % static_cast<std::size_t>(nt);
    p.ir = (flat / static_cast<std::size_t>(nt)) % static_cast<std::size_t>(nr);
    p.ie = flat / static_cast<std::size_t>(nt * nr);
    p.emission = ps.grid.emission.value(p.ie);
    p.reception = ps.grid.reception.value(p.ir);
    p.time = ps.grid.time.value(p.it);
    p.value = ps.values[flat];
    p.rank = static_cast<int>(i) + 1;
    out.peaks.push_back(p);
  }
  return out;
}

struct TruthMatch {
  bool hit = false;
  int peak_rank = 0;       // rank of the assigned peak, 0 on a miss
  long cell_distance = -1; // Chebyshev distance in cells, -1 on a miss
};

struct MatchReport {
  std::vector<TruthMatch> truths;
  std::size_t hits() const {
    return static_cast<std::size_t>(std::count_if(truths.begin(), truths.end(), [](const auto& t) { return t.hit; }));
  }
  bool all_hit() const { return hits() == truths.size(); }
};

/// Greedy one-to-one assignment of peaks to true raypaths.
///
/// Each truth is snapped to its nearest grid node; a (truth, peak) pair is a
/// candidate when the two are within `cell_tolerance` cells on every axis with
/// more than one node. Candidates are taken in order of distance, then truth
/// index, then peak rank.
inline MatchReport match_to_truth(const std::vector<Peak>& peaks, const std::vector<RaypathParams>& truths,
                                  const GridSpec& grid, long cell_tolerance) {
  struct Candidate {
    long dist;
    std::size_t truth, peak;
  };
  const bool use_e = grid.emission.count() > 1;
  const bool use_r = grid.reception.count() > 1;
  const bool use_t = grid.time.count() > 1;
  std::vector<Candidate> cands;
  for (std::size_t t = 0; t < truths.size(); ++t) {
    const long te = use_e ? grid.emission.nearest(truths[t].emission_angle) : 0;
    const long tr = use_r ? grid.reception.nearest(truths[t].reception_angle) : 0;
    const long tt = use_t ? grid.time.nearest(truths[t].arrival_time) : 0;
    if (te < 0 || tr < 0 || tt < 0) continue;
    for (std::size_t p = 0; p < peaks.size(); ++p) {
      long dist = 0;
      if (use_e) dist = std::max(dist, std::abs(static_cast<long>(peaks[p].ie) - te));
      if (use_r) dist = std::max(dist, std::abs(static_cast<long>(peaks[p].ir) - tr));
      if (use_t) dist = std::max(dist, std::abs(static_cast<long>(peaks[p].it) - tt));
      if (dist <= cell_tolerance) cands.push_back({dist, t, p});
    }
  }
  std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
    return std::tie(a.dist, a.truth, peaks[a.peak].rank) < std::tie(b.dist, b.truth, peaks[b.peak].rank);
  });
  MatchReport report;
  report.truths.assign(truths.size(), TruthMatch{});
  std::vector<bool> used(peaks.size(), false);
  for (const auto& c : cands) {
    if (report.truths[c.truth].hit || used[c.peak]) continue;
    used[c.peak] = true;
    report.truths[c.truth] = {true, peaks[c.peak].rank, c.dist};
  }
  return report;
}

}  // namespace raysep
