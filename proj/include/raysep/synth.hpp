#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "raysep/geometry.hpp"

namespace raysep {

/// Complex spectra x(m, n, nu) stored in FlatIndexLayout order.
struct SpectralCube {
  ArrayGeometry geom;
  CVector data;

  FlatIndexLayout layout() const {
    return {geom.num_receivers, geom.num_sources, geom.num_frequencies()};
  }

  cplx& at(std::size_t m, std::size_t n, std::size_t f) {
    return data(static_cast<Eigen::Index>(layout().flatten(m, n, f)));
  }
  const cplx& at(std::size_t m, std::size_t n, std::size_t f) const {
    return data(static_cast<Eigen::Index>(layout().flatten(m, n, f)));
  }

  void validate() const {
    geom.validate();
    require(static_cast<std::size_t>(data.size()) == geom.size(), "cube: data length does not match geometry");
    require(data.allFinite(), "cube: non-finite values");
  }
};

enum class NoiseKind { white, colored };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::white;
  double snr_db = 0.0;
  std::vector<double> ar_coeffs;  // y[f] = w[f] + sum_k a_k y[f-k]
  std::uint64_t seed = 0;
};

/// True when every root of z^p - a_1 z^(p-1) - ... - a_p lies strictly inside the unit circle.
/// Step-down (Schur-Cohn) recursion on the reflection coefficients.
inline bool ar_is_stable(const std::vector<double>& ar) {
  std::vector<double> a = ar;
  for (std::size_t p = a.size(); p > 0; --p) {
    const double k = a[p - 1];
    if (!(std::abs(k) < 1.0)) return false;
    const double denom = 1.0 - k * k;
    std::vector<double> next(p - 1);
    for (std::size_t i = 0; i + 1 < p; ++i) next[i] = (a[i] + k * a[p - 2 - i]) / denom;
    a = std::move(next);
  }
  return true;
}

namespace detail {

// Stationary output power and burn-in length of the all-pole filter driven by unit white noise.
struct ArResponse {
  double power;
  std::size_t burn_in;
};

inline ArResponse ar_response(const std::vector<double>& ar) {
  if (ar.empty()) return {1.0, 0};
  std::vector<double> h{1.0};
  double power = 1.0;
  constexpr std::size_t max_len = 1'000'000;
  while (h.size() < max_len) {
    double next = 0.0;
    for (std::size_t k = 0; k < ar.size() && k < h.size(); ++k) next += ar[k] * h[h.size() - 1 - k];
    h.push_back(next);
    power += next * next;
    bool tail_small = h.size() > 4 * ar.size();
    for (std::size_t k = 0; tail_small && k < ar.size(); ++k) {
      tail_small = std::abs(h[h.size() - 1 - k]) < 1e-9;
    }
    if (tail_small) break;
  }
  return {power, h.size()};
}

}  // namespace detail

/// Unit-power circular complex Gaussian noise over an M x N x F cube.
///
/// Colored noise is a white sequence run through the AR recursion along the
/// frequency axis, independently per (m, n) channel, started from a burned-in
/// state and normalized by the filter's stationary power.
inline CVector generate_noise(const FlatIndexLayout& shape, const NoiseSpec& spec) {
  const bool colored = spec.kind == NoiseKind::colored;
  if (colored) {
    require(ar_is_stable(spec.ar_coeffs), "noise: AR coefficients describe an unstable filter");
  }
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  auto draw = [&] {
    const double re = gauss(rng);
    const double im = gauss(rng);
    return cplx{re, im};
  };

  CVector out(static_cast<Eigen::Index>(shape.size()));
  if (!colored || spec.ar_coeffs.empty()) {
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = draw();
    return out;
  }

  const auto& ar = spec.ar_coeffs;
  const auto response = detail::ar_response(ar);
  const double scale = 1.0 / std::sqrt(response.power);
  std::vector<cplx> history(ar.size(), cplx{});
  for (std::size_t n = 0; n < shape.sub_sources; ++n) {
    for (std::size_t m = 0; m < shape.sub_receivers; ++m) {
      std::fill(history.begin(), history.end(), cplx{});
      auto step = [&] {
        cplx y = draw();
        for (std::size_t k = 0; k < ar.size(); ++k) y += ar[k] * history[k];
        for (std::size_t k = ar.size() - 1; k > 0; --k) history[k] = history[k - 1];
        history[0] = y;
        return y;
      };
      for (std::size_t b = 0; b < response.burn_in; ++b) step();
      for (std::size_t f = 0; f < shape.sub_freqs; ++f) {
        out(static_cast<Eigen::Index>(shape.flatten(m, n, f))) = scale * step();
      }
    }
  }
  return out;
}

/// 10 log10(|signal|^2 / |noisy - signal|^2); +inf when the two are identical.
inline double measure_snr(const CVector& signal, const CVector& noisy) {
  require(signal.size() == noisy.size(), "measure_snr: shape mismatch");
  const double noise_energy = (noisy - signal).squaredNorm();
  if (noise_energy == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal.squaredNorm() / noise_energy);
}

inline SpectralCube synthesize_clean(const ArrayGeometry& geom, const std::vector<RaypathParams>& paths) {
  geom.validate();
  require(!paths.empty(), "synthesize: at least one raypath is required");
  SpectralCube cube{geom, CVector::Zero(static_cast<Eigen::Index>(geom.size()))};
  for (const auto& p : paths) {
    p.validate();
    cube.data += p.amplitude * steering_vector(geom, p.emission_angle, p.reception_angle, p.arrival_time);
  }
  return cube;
}

/// Adds noise scaled so that the cube-wide SNR equals `spec.snr_db` exactly.
inline void add_noise(SpectralCube& cube, const NoiseSpec& spec) {
  require(std::isfinite(spec.snr_db), "noise: SNR must be finite");
  CVector noise = generate_noise(cube.layout(), spec);
  const double noise_energy = noise.squaredNorm();
  const double signal_energy = cube.data.squaredNorm();
  if (noise_energy == 0.0 || signal_energy == 0.0) return;
  const double target = signal_energy / std::pow(10.0, spec.snr_db / 10.0);
  cube.data += std::sqrt(target / noise_energy) * noise;
}

inline SpectralCube synthesize(const ArrayGeometry& geom, const std::vector<RaypathParams>& paths,
                               const std::optional<NoiseSpec>& noise = std::nullopt) {
  SpectralCube cube = synthesize_clean(geom, paths);
  if (noise) add_noise(cube, *noise);
  return cube;
}

}  // namespace raysep
