#pragma once

#include <string>
#include <vector>

#include "raysep/synth.hpp"

namespace raysep {

/// Where the reduced steering vector sits inside the smoothing window.
///   first:  offsets (0, 0, 0), the first sub-band and first sub-arrays.
///   center: middle offset along every axis (rounded down).
enum class SteeringAnchor { first, center };

/// 3D sliding-window smoothing over sources, receivers and frequency bins.
///
/// `band_begin`/`band_count` select the contiguous run of frequency bins the
/// smoothing operates on; `band_count == 0` means "to the end of the cube".
struct SmoothingPlan {
  std::size_t k_sources = 1;    // K_e
  std::size_t k_receivers = 1;  // K_r
  std::size_t k_freqs = 1;      // K_f
  std::size_t band_begin = 0;
  std::size_t band_count = 0;
  SteeringAnchor anchor = SteeringAnchor::first;

  std::size_t band_size(const ArrayGeometry& g) const {
    return band_count == 0 ? g.num_frequencies() - std::min(band_begin, g.num_frequencies()) : band_count;
  }

  void validate(const ArrayGeometry& g) const {
    require(band_begin < g.num_frequencies(), "smoothing: band start beyond the last frequency bin");
    const std::size_t fb = band_size(g);
    require(fb >= 1 && band_begin + fb <= g.num_frequencies(),
            "smoothing: band [" + std::to_string(band_begin) + ", " + std::to_string(band_begin + fb) +
                ") exceeds the " + std::to_string(g.num_frequencies()) + " frequency bins");
    require(k_sources >= 1 && k_sources <= g.num_sources,
            "smoothing: K_e=" + std::to_string(k_sources) + " must lie in [1, N=" + std::to_string(g.num_sources) + "]");
    require(k_receivers >= 1 && k_receivers <= g.num_receivers,
            "smoothing: K_r=" + std::to_string(k_receivers) + " must lie in [1, M=" +
                std::to_string(g.num_receivers) + "]");
    require(k_freqs >= 1 && k_freqs <= fb,
            "smoothing: K_f=" + std::to_string(k_freqs) + " must lie in [1, F=" + std::to_string(fb) + "]");
  }

  /// Layout of one realization vector (N_r^s, N_e^s, N_f^s).
  FlatIndexLayout sub_layout(const ArrayGeometry& g) const {
    validate(g);
    return {g.num_receivers - k_receivers + 1, g.num_sources - k_sources + 1, band_size(g) - k_freqs + 1};
  }

  std::size_t realization_count() const { return k_sources * k_receivers * k_freqs; }

  struct Offsets {
    std::size_t receiver, source, freq;
  };

  Offsets anchor_offsets() const {
    if (anchor == SteeringAnchor::first) return {0, 0, 0};
    return {(k_receivers - 1) / 2, (k_sources - 1) / 2, (k_freqs - 1) / 2};
  }
};

/// One flattened sub-cube per smoothing offset.
///
/// Realization (i, j, k) holds cube entries with receiver offset i, source
/// offset j and frequency offset k (relative to the band start). Ordering is
/// k-major, then j, then i. Columns of the returned matrix are the realizations.
inline CMatrix subcube_vectors(const SpectralCube& cube, const SmoothingPlan& plan) {
  const auto sub = plan.sub_layout(cube.geom);
  CMatrix out(static_cast<Eigen::Index>(sub.size()), static_cast<Eigen::Index>(plan.realization_count()));
  Eigen::Index col = 0;
  for (std::size_t k = 0; k < plan.k_freqs; ++k) {
    for (std::size_t j = 0; j < plan.k_sources; ++j) {
      for (std::size_t i = 0; i < plan.k_receivers; ++i, ++col) {
        for (std::size_t f = 0; f < sub.sub_freqs; ++f) {
          for (std::size_t n = 0; n < sub.sub_sources; ++n) {
            for (std::size_t m = 0; m < sub.sub_receivers; ++m) {
              out(static_cast<Eigen::Index>(sub.flatten(m, n, f)), col) =
                  cube.at(m + i, n + j, plan.band_begin + f + k);
            }
          }
        }
      }
    }
  }
  return out;
}

/// Precomputed reduced-space steering parameters for a plan.
///
/// The reduced array is the anchor sub-cube: its frequencies are those of the
/// anchor sub-band, and the reference indices are the full array's references
/// expressed in the sub-array's local coordinates.
struct ReducedSteering {
  FlatIndexLayout layout;
  std::vector<double> freqs;
  std::vector<cplx> spectrum;
  double ref_receiver = 0.0;
  double ref_source = 0.0;
  double spacing = 1.0;
  double sound_speed = 1500.0;

  static ReducedSteering make(const ArrayGeometry& g, const SmoothingPlan& plan) {
    ReducedSteering r;
    r.layout = plan.sub_layout(g);
    const auto off = plan.anchor_offsets();
    const std::size_t f0 = plan.band_begin + off.freq;
    r.freqs.assign(g.frequencies.begin() + static_cast<std::ptrdiff_t>(f0),
                   g.frequencies.begin() + static_cast<std::ptrdiff_t>(f0 + r.layout.sub_freqs));
    r.spectrum.assign(g.source_spectrum.begin() + static_cast<std::ptrdiff_t>(f0),
                      g.source_spectrum.begin() + static_cast<std::ptrdiff_t>(f0 + r.layout.sub_freqs));
    r.ref_receiver = static_cast<double>(g.ref_receiver) - static_cast<double>(off.receiver);
    r.ref_source = static_cast<double>(g.ref_source) - static_cast<double>(off.source);
    r.spacing = g.spacing;
    r.sound_speed = g.sound_speed;
    return r;
  }

  CVector operator()(double emission_deg, double reception_deg, double arrival_time) const {
    return steering_block(freqs, spectrum, layout.sub_receivers, layout.sub_sources, ref_receiver, ref_source,
                          delay(emission_deg, spacing, sound_speed), delay(reception_deg, spacing, sound_speed),
                          arrival_time);
  }
};

inline CVector smoothed_steering(const ArrayGeometry& geom, const SmoothingPlan& plan, double emission_deg,
                                 double reception_deg, double arrival_time) {
  return ReducedSteering::make(geom, plan)(emission_deg, reception_deg, arrival_time);
}

/// Plan restricted to the reference source: the receiver x frequency data used
/// by the 2D smoothing-MUSICAL baseline.
inline SpectralCube reference_source_slice(const SpectralCube& cube) {
  const auto& g = cube.geom;
  SpectralCube out;
  out.geom = g;
  out.geom.num_sources = 1;
  out.geom.ref_source = 0;
  out.data.resize(static_cast<Eigen::Index>(out.geom.size()));
  for (std::size_t f = 0; f < g.num_frequencies(); ++f) {
    for (std::size_t m = 0; m < g.num_receivers; ++m) out.at(m, 0, f) = cube.at(m, g.ref_source, f);
  }
  return out;
}

}  // namespace raysep
