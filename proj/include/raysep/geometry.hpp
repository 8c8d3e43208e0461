#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "raysep/error.hpp"

namespace raysep {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Source/receiver double-array configuration plus the frequency grid of the data.
///
/// Reference indices are zero-based here; configuration files use one-based
/// indices and convert on load.
struct ArrayGeometry {
  std::size_t num_receivers = 1;  // M
  std::size_t num_sources = 1;    // N
  double spacing = 1.0;           // d, meters
  std::size_t ref_receiver = 0;   // m0
  std::size_t ref_source = 0;     // n0
  double sound_speed = 1500.0;    // c, m/s
  std::vector<double> frequencies;
  std::vector<cplx> source_spectrum;

  std::size_t num_frequencies() const { return frequencies.size(); }
  std::size_t size() const { return num_receivers * num_sources * frequencies.size(); }

  void validate() const {
    require(num_receivers >= 1 && num_sources >= 1, "geometry: array element counts must be >= 1");
    require(!frequencies.empty(), "geometry: at least one frequency is required");
    require(spacing > 0.0 && std::isfinite(spacing), "geometry: spacing must be positive");
    require(sound_speed > 0.0 && std::isfinite(sound_speed), "geometry: sound speed must be positive");
    require(ref_receiver < num_receivers, "geometry: reference receiver out of range");
    require(ref_source < num_sources, "geometry: reference source out of range");
    for (std::size_t f = 0; f < frequencies.size(); ++f) {
      require(std::isfinite(frequencies[f]), "geometry: non-finite frequency");
      if (f > 0) require(frequencies[f] > frequencies[f - 1], "geometry: frequencies must be strictly increasing");
    }
    require(source_spectrum.size() == frequencies.size(),
            "geometry: source spectrum needs exactly one entry per frequency (" +
                std::to_string(frequencies.size()) + "), got " + std::to_string(source_spectrum.size()));
    for (const cplx& s : source_spectrum) {
      require(std::abs(s) > 0.0 && std::isfinite(s.real()) && std::isfinite(s.imag()),
              "geometry: source spectrum entries must be finite and nonzero");
    }
  }

  /// Midpoint of an n-element array, rounding down (zero-based).
  static std::size_t midpoint(std::size_t n) { return (n - 1) / 2; }

  /// Geometry with midpoint references and a flat unit source spectrum.
  static ArrayGeometry make(std::size_t m, std::size_t n, double d, double c, std::vector<double> freqs) {
    ArrayGeometry g;
    g.num_receivers = m;
    g.num_sources = n;
    g.spacing = d;
    g.sound_speed = c;
    g.ref_receiver = m > 0 ? midpoint(m) : 0;
    g.ref_source = n > 0 ? midpoint(n) : 0;
    g.source_spectrum.assign(freqs.size(), cplx{1.0, 0.0});
    g.frequencies = std::move(freqs);
    return g;
  }
};

/// `count` equally spaced values from `first` to `last` inclusive.
inline std::vector<double> linspace(double first, double last, std::size_t count) {
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = first;
    return v;
  }
  const double step = (last - first) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) v[i] = first + step * static_cast<double>(i);
  v.back() = last;
  return v;
}

struct RaypathParams {
  double amplitude = 1.0;         // a_p, may be negative
  double emission_angle = 0.0;    // degrees
  double reception_angle = 0.0;   // degrees
  double arrival_time = 0.0;      // seconds

  void validate() const {
    require(std::isfinite(amplitude), "raypath: amplitude must be finite");
    require(emission_angle > -90.0 && emission_angle < 90.0, "raypath: emission angle must lie in (-90, 90) degrees");
    require(reception_angle > -90.0 && reception_angle < 90.0, "raypath: reception angle must lie in (-90, 90) degrees");
    require(arrival_time >= 0.0 && std::isfinite(arrival_time), "raypath: arrival time must be >= 0");
  }
};

/// Receiver index innermost, source index in the middle, frequency outermost.
struct FlatIndexLayout {
  std::size_t sub_receivers = 1;
  std::size_t sub_sources = 1;
  std::size_t sub_freqs = 1;

  struct Triple {
    std::size_t m, n, f;
    bool operator==(const Triple&) const = default;
  };

  std::size_t size() const { return sub_receivers * sub_sources * sub_freqs; }

  std::size_t flatten(std::size_t m, std::size_t n, std::size_t f) const {
    return (f * sub_sources + n) * sub_receivers + m;
  }

  Triple unflatten(std::size_t idx) const {
    const std::size_t m = idx % sub_receivers;
    idx /= sub_receivers;
    return {m, idx % sub_sources, idx / sub_sources};
  }
};

/// Inter-element travel-time difference for a plane wave at `angle_deg`.
inline double delay(double angle_deg, double spacing, double sound_speed) {
  return spacing * std::sin(deg2rad(angle_deg)) / sound_speed;
}

/// Steering response of an arbitrary (sub-)array stack.
///
/// Entry (m, n, f) is s_f * exp(-j 2 pi nu_f (T + (n - n0) tau_e + (m - m0) tau_r)).
/// Reference indices may be fractional or fall outside the block, which is how
/// shifted sub-arrays keep the phase origin of the full array.
inline CVector steering_block(std::span<const double> freqs, std::span<const cplx> spectrum,
                              std::size_t sub_receivers, std::size_t sub_sources, double ref_receiver,
                              double ref_source, double tau_e, double tau_r, double arrival_time) {
  const FlatIndexLayout layout{sub_receivers, sub_sources, freqs.size()};
  CVector out(static_cast<Eigen::Index>(layout.size()));
  for (std::size_t f = 0; f < freqs.size(); ++f) {
    for (std::size_t n = 0; n < sub_sources; ++n) {
      for (std::size_t m = 0; m < sub_receivers; ++m) {
        const double lag = arrival_time + (static_cast<double>(n) - ref_source) * tau_e +
                           (static_cast<double>(m) - ref_receiver) * tau_r;
        out(static_cast<Eigen::Index>(layout.flatten(m, n, f))) =
            spectrum[f] * std::polar(1.0, -two_pi * freqs[f] * lag);
      }
    }
  }
  return out;
}

inline CVector steering_vector(const ArrayGeometry& geom, double emission_deg, double reception_deg,
                               double arrival_time) {
  const double tau_e = delay(emission_deg, geom.spacing, geom.sound_speed);
  const double tau_r = delay(reception_deg, geom.spacing, geom.sound_speed);
  return steering_block(geom.frequencies, geom.source_spectrum, geom.num_receivers, geom.num_sources,
                        static_cast<double>(geom.ref_receiver), static_cast<double>(geom.ref_source), tau_e,
                        tau_r, arrival_time);
}

/// d (x) conj(d), the steering vector of the fourth-order space.
inline CVector quadratic_steering(const CVector& d) {
  require(d.size() > 0, "quadratic_steering: empty steering vector");
  const Eigen::Index n = d.size();
  CVector out(n * n);
  for (Eigen::Index a = 0; a < n; ++a) out.segment(a * n, n) = d(a) * d.conjugate();
  return out;
}

}  // namespace raysep
