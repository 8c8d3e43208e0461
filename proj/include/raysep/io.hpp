#pragma once

#include <nlohmann/json.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "raysep/spectrum.hpp"
#include "raysep/synth.hpp"

namespace raysep {

struct BandSpec {
  double begin_hz = 0.0;
  double end_hz = 0.0;
  std::size_t count = 1;
};

// Recorded for provenance; only range_m feeds computation (relative arrival times).
struct ScenarioMetadata {
  std::optional<double> center_hz;
  std::optional<double> bandwidth_hz;
  std::optional<std::size_t> samples;
  std::optional<double> range_m;
};

struct ScenarioConfig {
  std::string name;
  ArrayGeometry geometry;
  BandSpec band;
  ScenarioMetadata metadata;
  std::vector<RaypathParams> paths;
  std::optional<NoiseSpec> noise;
  SmoothingPlan smoothing;
  GridSpec grid;
  Estimator estimator = Estimator::double4;
  std::uint64_t seed = 0;
  std::size_t peak_count = 0;  // defaults to the number of paths
  long tolerance_cells = 1;

  /// Travel time of the reference-to-reference path, D / c.
  std::optional<double> direct_time() const {
    if (!metadata.range_m) return std::nullopt;
    return *metadata.range_m / geometry.sound_speed;
  }

  /// Noise block with the run seed applied.
  std::optional<NoiseSpec> noise_for(std::uint64_t run_seed) const {
    if (!noise) return std::nullopt;
    NoiseSpec n = *noise;
    n.seed = run_seed;
    return n;
  }

  /// The 2D (reception x time) grid used by smoothing-MUSICAL.
  GridSpec grid_2d() const {
    GridSpec g = grid;
    g.emission = Axis{0.0, 0.0, 1.0};
    return g;
  }
};

inline Estimator parse_estimator(const std::string& s) {
  if (s == "double4") return Estimator::double4;
  if (s == "double2") return Estimator::double2;
  if (s == "smusical") return Estimator::smoothing_musical;
  fail(ErrorCategory::config, "unknown estimator '" + s + "' (expected double4, double2 or smusical)");
}

namespace detail {

using nlohmann::json;

inline const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCategory::config, where + ": missing key '" + key + "'");
  return j.at(key);
}

template <class T>
T get_as(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCategory::config, where + ": " + e.what());
  }
}

template <class T>
T field(const json& j, const char* key, const std::string& where) {
  return get_as<T>(need(j, key, where), where + "." + key);
}

template <class T>
T field_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return get_as<T>(j.at(key), where + "." + key);
}

inline Axis parse_axis(const json& j, const std::string& where, double offset = 0.0) {
  return {field<double>(j, "min", where) + offset, field<double>(j, "max", where) + offset,
          field<double>(j, "step", where)};
}

inline void rethrow_as_config(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e); err && err->category() != ErrorCategory::invalid_argument) {
    throw *err;
  }
  fail(ErrorCategory::config, e.what());
}

}  // namespace detail

/// Parses a scenario from JSON text. One-based reference indices and band
/// positions in the file become zero-based in memory.
inline ScenarioConfig parse_config(const std::string& text) {
  using detail::field;
  using detail::field_or;
  using detail::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCategory::config, std::string("config: malformed JSON: ") + e.what());
  }
  if (!root.is_object()) fail(ErrorCategory::config, "config: top level must be an object");

  ScenarioConfig cfg;
  try {
    cfg.name = field_or<std::string>(root, "name", "", "config");

    const auto& g = detail::need(root, "geometry", "config");
    const auto m = field<std::size_t>(g, "M", "geometry");
    const auto n = field<std::size_t>(g, "N", "geometry");
    if (m == 0 || n == 0) fail(ErrorCategory::config, "geometry: M and N must be >= 1");
    const auto& band = detail::need(g, "band", "geometry");
    cfg.band = {field<double>(band, "begin_hz", "geometry.band"), field<double>(band, "end_hz", "geometry.band"),
                field<std::size_t>(band, "count", "geometry.band")};
    if (cfg.band.count == 0) fail(ErrorCategory::config, "geometry.band: count must be >= 1");
    if (cfg.band.count > 1 && !(cfg.band.end_hz > cfg.band.begin_hz)) {
      fail(ErrorCategory::config, "geometry.band: end_hz must exceed begin_hz");
    }
    cfg.geometry = ArrayGeometry::make(m, n, field<double>(g, "d", "geometry"), field<double>(g, "c", "geometry"),
                                       linspace(cfg.band.begin_hz, cfg.band.end_hz, cfg.band.count));
    const auto m0 = field_or<std::size_t>(g, "ref_receiver", cfg.geometry.ref_receiver + 1, "geometry");
    const auto n0 = field_or<std::size_t>(g, "ref_source", cfg.geometry.ref_source + 1, "geometry");
    if (m0 < 1 || m0 > m) fail(ErrorCategory::config, "geometry.ref_receiver must lie in [1, M]");
    if (n0 < 1 || n0 > n) fail(ErrorCategory::config, "geometry.ref_source must lie in [1, N]");
    cfg.geometry.ref_receiver = m0 - 1;
    cfg.geometry.ref_source = n0 - 1;
    cfg.geometry.validate();

    if (g.contains("metadata")) {
      const auto& md = g.at("metadata");
      const std::string w = "geometry.metadata";
      if (md.contains("center_hz")) cfg.metadata.center_hz = field<double>(md, "center_hz", w);
      if (md.contains("bandwidth_hz")) cfg.metadata.bandwidth_hz = field<double>(md, "bandwidth_hz", w);
      if (md.contains("samples")) cfg.metadata.samples = field<std::size_t>(md, "samples", w);
      if (md.contains("range_m")) cfg.metadata.range_m = field<double>(md, "range_m", w);
    }

    const auto& paths = detail::need(root, "paths", "config");
    if (!paths.is_array() || paths.empty()) fail(ErrorCategory::config, "paths: expected a nonempty array");
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const auto& p = paths[i];
      const std::string w = "paths[" + std::to_string(i) + "]";
      RaypathParams rp;
      rp.amplitude = field<double>(p, "amplitude", w);
      rp.emission_angle = field<double>(p, "emission_deg", w);
      rp.reception_angle = field<double>(p, "reception_deg", w);
      if (p.contains("arrival_s")) {
        rp.arrival_time = field<double>(p, "arrival_s", w);
      } else if (p.contains("delay_s")) {
        const auto t0 = cfg.direct_time();
        if (!t0) fail(ErrorCategory::config, w + ": delay_s needs geometry.metadata.range_m");
        rp.arrival_time = *t0 + field<double>(p, "delay_s", w);
      } else {
        fail(ErrorCategory::config, w + ": needs arrival_s or delay_s");
      }
      rp.validate();
      cfg.paths.push_back(rp);
    }

    if (root.contains("noise") && !root.at("noise").is_null()) {
      const auto& nz = root.at("noise");
      NoiseSpec spec;
      const auto kind = field<std::string>(nz, "kind", "noise");
      if (kind == "white") {
        spec.kind = NoiseKind::white;
      } else if (kind == "colored") {
        spec.kind = NoiseKind::colored;
        spec.ar_coeffs = field<std::vector<double>>(nz, "ar", "noise");
        if (!ar_is_stable(spec.ar_coeffs)) fail(ErrorCategory::config, "noise.ar: unstable AR filter");
      } else {
        fail(ErrorCategory::config, "noise.kind: expected white or colored, got '" + kind + "'");
      }
      spec.snr_db = field<double>(nz, "snr_db", "noise");
      cfg.noise = spec;
    }

    const auto& sm = detail::need(root, "smoothing", "config");
    cfg.smoothing.k_sources = field<std::size_t>(sm, "K_e", "smoothing");
    cfg.smoothing.k_receivers = field<std::size_t>(sm, "K_r", "smoothing");
    cfg.smoothing.k_freqs = field<std::size_t>(sm, "K_f", "smoothing");
    const auto band_first = field_or<std::size_t>(sm, "band_first", 1, "smoothing");
    if (band_first < 1) fail(ErrorCategory::config, "smoothing.band_first is one-based");
    cfg.smoothing.band_begin = band_first - 1;
    cfg.smoothing.band_count = field_or<std::size_t>(sm, "band_count", 0, "smoothing");
    const auto anchor = field_or<std::string>(sm, "anchor", "first", "smoothing");
    if (anchor == "first") {
      cfg.smoothing.anchor = SteeringAnchor::first;
    } else if (anchor == "center") {
      cfg.smoothing.anchor = SteeringAnchor::center;
    } else {
      fail(ErrorCategory::config, "smoothing.anchor: expected first or center, got '" + anchor + "'");
    }
    cfg.smoothing.validate(cfg.geometry);

    const json empty = json::object();
    const auto& gr = root.contains("grid") ? root.at("grid") : empty;
    cfg.grid.emission = gr.contains("emission") ? detail::parse_axis(gr.at("emission"), "grid.emission")
                                                : Axis{-30.0, 30.0, 0.5};
    cfg.grid.reception = gr.contains("reception") ? detail::parse_axis(gr.at("reception"), "grid.reception")
                                                  : Axis{-30.0, 30.0, 0.5};
    if (gr.contains("time")) {
      cfg.grid.time = detail::parse_axis(gr.at("time"), "grid.time");
    } else if (gr.contains("time_offset")) {
      const auto t0 = cfg.direct_time();
      if (!t0) fail(ErrorCategory::config, "grid.time_offset needs geometry.metadata.range_m");
      cfg.grid.time = detail::parse_axis(gr.at("time_offset"), "grid.time_offset", *t0);
    } else {
      double lo = cfg.paths.front().arrival_time, hi = lo;
      for (const auto& p : cfg.paths) {
        lo = std::min(lo, p.arrival_time);
        hi = std::max(hi, p.arrival_time);
      }
      lo *= 0.9;
      hi *= 1.1;
      cfg.grid.time = {lo, hi, hi > lo ? (hi - lo) / 199.0 : 1.0};
    }
    cfg.grid.validate();

    cfg.estimator = parse_estimator(field_or<std::string>(root, "estimator", "double4", "config"));
    cfg.seed = field_or<std::uint64_t>(root, "seed", 0, "config");
    if (root.contains("peaks")) {
      cfg.peak_count = field_or<std::size_t>(root.at("peaks"), "count", 0, "peaks");
      cfg.tolerance_cells = field_or<long>(root.at("peaks"), "tolerance_cells", 1, "peaks");
    }
    if (cfg.peak_count == 0) cfg.peak_count = cfg.paths.size();
    if (cfg.tolerance_cells < 0) fail(ErrorCategory::config, "peaks.tolerance_cells must be >= 0");
  } catch (const Error& e) {
    detail::rethrow_as_config(e);
  }
  return cfg;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCategory::io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ScenarioConfig load_config(const std::filesystem::path& path) {
  try {
    return parse_config(read_text(path));
  } catch (const Error& e) {
    if (e.category() == ErrorCategory::io) throw;
    fail(e.category(), path.string() + ": " + e.what());
  }
}

// ---- binary helpers (explicit little-endian) --------------------------------

namespace detail {

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_f64(std::vector<std::uint8_t>& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

inline std::uint32_t get_u32(const std::vector<std::uint8_t>& in, std::size_t pos) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[pos + static_cast<std::size_t>(i)]) << (8 * i);
  return v;
}

inline double get_f64(const std::vector<std::uint8_t>& in, std::size_t pos) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[pos + static_cast<std::size_t>(i)]) << (8 * i);
  return std::bit_cast<double>(v);
}

inline std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCategory::io, "cannot open '" + path.string() + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCategory::io, "cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCategory::io, "write to '" + path.string() + "' failed");
}

inline void check_magic(const std::vector<std::uint8_t>& b, const char* magic, std::size_t header,
                        const std::string& what) {
  if (b.size() < header) {
    fail(ErrorCategory::format, what + ": truncated header, expected at least " + std::to_string(header) +
                                    " bytes, got " + std::to_string(b.size()));
  }
  for (std::size_t i = 0; i < 4; ++i) {
    if (b[i] != static_cast<std::uint8_t>(magic[i])) {
      fail(ErrorCategory::format, what + ": bad magic at byte " + std::to_string(i) + ", expected '" + magic + "'");
    }
  }
}

}  // namespace detail

// ---- SPC1 cube files ---------------------------------------------------------

/// Contents of an SPC1 file: dimensions, frequency axis and flat complex payload.
struct CubeFile {
  std::uint32_t m = 0, n = 0, f = 0;
  std::vector<double> frequencies;
  CVector data;
};

inline std::vector<std::uint8_t> encode_cube(const SpectralCube& cube) {
  cube.validate();
  const auto& g = cube.geom;
  std::vector<std::uint8_t> out{'S', 'P', 'C', '1'};
  out.reserve(16 + 8 * g.num_frequencies() + 16 * g.size());
  detail::put_u32(out, static_cast<std::uint32_t>(g.num_receivers));
  detail::put_u32(out, static_cast<std::uint32_t>(g.num_sources));
  detail::put_u32(out, static_cast<std::uint32_t>(g.num_frequencies()));
  for (double v : g.frequencies) detail::put_f64(out, v);
  for (Eigen::Index i = 0; i < cube.data.size(); ++i) {
    detail::put_f64(out, cube.data(i).real());
    detail::put_f64(out, cube.data(i).imag());
  }
  return out;
}

inline CubeFile decode_cube(const std::vector<std::uint8_t>& b) {
  detail::check_magic(b, "SPC1", 16, "cube");
  CubeFile c;
  c.m = detail::get_u32(b, 4);
  c.n = detail::get_u32(b, 8);
  c.f = detail::get_u32(b, 12);
  if (c.m == 0) fail(ErrorCategory::format, "cube: M at byte 4 must be >= 1");
  if (c.n == 0) fail(ErrorCategory::format, "cube: N at byte 8 must be >= 1");
  if (c.f == 0) fail(ErrorCategory::format, "cube: F at byte 12 must be >= 1");
  const std::uint64_t count = std::uint64_t{c.m} * c.n * c.f;
  const std::uint64_t expected = 16 + 8 * std::uint64_t{c.f} + 16 * count;
  if (b.size() != expected) {
    fail(ErrorCategory::format, "cube: size mismatch, header declares M=" + std::to_string(c.m) +
                                    " N=" + std::to_string(c.n) + " F=" + std::to_string(c.f) + " requiring " +
                                    std::to_string(expected) + " bytes, file has " + std::to_string(b.size()));
  }
  std::size_t pos = 16;
  c.frequencies.resize(c.f);
  for (std::uint32_t i = 0; i < c.f; ++i, pos += 8) {
    c.frequencies[i] = detail::get_f64(b, pos);
    if (!std::isfinite(c.frequencies[i])) {
      fail(ErrorCategory::format, "cube: non-finite frequency at byte " + std::to_string(pos));
    }
    if (i > 0 && !(c.frequencies[i] > c.frequencies[i - 1])) {
      fail(ErrorCategory::format, "cube: frequencies not strictly increasing at byte " + std::to_string(pos));
    }
  }
  c.data.resize(static_cast<Eigen::Index>(count));
  for (Eigen::Index i = 0; i < c.data.size(); ++i, pos += 16) {
    const double re = detail::get_f64(b, pos), im = detail::get_f64(b, pos + 8);
    if (!std::isfinite(re) || !std::isfinite(im)) {
      fail(ErrorCategory::format, "cube: non-finite value at byte " + std::to_string(pos));
    }
    c.data(i) = {re, im};
  }
  return c;
}

inline void save_cube(const std::filesystem::path& path, const SpectralCube& cube) {
  detail::write_bytes(path, encode_cube(cube));
}

inline CubeFile load_cube(const std::filesystem::path& path) {
  try {
    return decode_cube(detail::read_bytes(path));
  } catch (const Error& e) {
    if (e.category() == ErrorCategory::io) throw;
    fail(e.category(), path.string() + ": " + e.what());
  }
}

/// Attaches a loaded payload to the geometry it was recorded with.
inline SpectralCube attach_geometry(const CubeFile& file, const ArrayGeometry& geom) {
  if (file.m != geom.num_receivers || file.n != geom.num_sources || file.f != geom.num_frequencies()) {
    fail(ErrorCategory::format, "cube dimensions " + std::to_string(file.m) + "x" + std::to_string(file.n) + "x" +
                                    std::to_string(file.f) + " do not match the configured geometry " +
                                    std::to_string(geom.num_receivers) + "x" + std::to_string(geom.num_sources) +
                                    "x" + std::to_string(geom.num_frequencies()));
  }
  for (std::size_t i = 0; i < file.frequencies.size(); ++i) {
    if (std::abs(file.frequencies[i] - geom.frequencies[i]) > 1e-9 * std::max(1.0, std::abs(geom.frequencies[i]))) {
      fail(ErrorCategory::format, "cube frequency " + std::to_string(i) + " differs from the configured band");
    }
  }
  SpectralCube cube{geom, file.data};
  cube.geom.frequencies = file.frequencies;
  cube.validate();
  return cube;
}

// ---- PSG1 grid files ---------------------------------------------------------

inline std::vector<std::uint8_t> encode_grid(const PseudoSpectrumGrid& ps) {
  std::vector<std::uint8_t> out{'P', 'S', 'G', '1'};
  detail::put_u32(out, static_cast<std::uint32_t>(ps.estimator));
  for (const Axis* a : {&ps.grid.emission, &ps.grid.reception, &ps.grid.time}) {
    detail::put_f64(out, a->min);
    detail::put_f64(out, a->max);
    detail::put_f64(out, a->step);
  }
  for (double v : ps.values) detail::put_f64(out, v);
  return out;
}

inline PseudoSpectrumGrid decode_grid(const std::vector<std::uint8_t>& b) {
  constexpr std::size_t header = 8 + 9 * 8;
  detail::check_magic(b, "PSG1", header, "grid");
  PseudoSpectrumGrid ps;
  const auto tag = detail::get_u32(b, 4);
  if (tag > 2) fail(ErrorCategory::format, "grid: unknown estimator tag at byte 4");
  ps.estimator = static_cast<Estimator>(tag);
  std::size_t pos = 8;
  for (Axis* a : {&ps.grid.emission, &ps.grid.reception, &ps.grid.time}) {
    a->min = detail::get_f64(b, pos);
    a->max = detail::get_f64(b, pos + 8);
    a->step = detail::get_f64(b, pos + 16);
    pos += 24;
  }
  try {
    ps.grid.validate();
  } catch (const Error& e) {
    fail(ErrorCategory::format, std::string("grid: invalid axes in header: ") + e.what());
  }
  const std::size_t expected = header + 8 * ps.grid.size();
  if (b.size() != expected) {
    fail(ErrorCategory::format, "grid: size mismatch, header requires " + std::to_string(expected) +
                                    " bytes, file has " + std::to_string(b.size()));
  }
  ps.values.resize(ps.grid.size());
  for (auto& v : ps.values) {
    v = detail::get_f64(b, pos);
    pos += 8;
  }
  return ps;
}

inline void save_grid(const std::filesystem::path& path, const PseudoSpectrumGrid& ps) {
  detail::write_bytes(path, encode_grid(ps));
}

inline PseudoSpectrumGrid load_grid(const std::filesystem::path& path) {
  try {
    return decode_grid(detail::read_bytes(path));
  } catch (const Error& e) {
    if (e.category() == ErrorCategory::io) throw;
    fail(e.category(), path.string() + ": " + e.what());
  }
}

// ---- exports -----------------------------------------------------------------

inline std::string grid_csv(const PseudoSpectrumGrid& ps) {
  std::string out = "theta_e_deg,theta_r_deg,t_s,value\n";
  char line[160];
  const auto& g = ps.grid;
  for (std::size_t ie = 0; ie < g.emission.count(); ++ie) {
    for (std::size_t ir = 0; ir < g.reception.count(); ++ir) {
      for (std::size_t it = 0; it < g.time.count(); ++it) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", g.emission.value(ie), g.reception.value(ir),
                      g.time.value(it), ps.at(ie, ir, it));
        out += line;
      }
    }
  }
  return out;
}

inline void export_csv(const std::filesystem::path& path, const PseudoSpectrumGrid& ps) {
  const std::string s = grid_csv(ps);
  detail::write_bytes(path, std::vector<std::uint8_t>(s.begin(), s.end()));
}

/// One binary PGM per emission-angle slice: rows are reception angles
/// (first row = smallest angle), columns are time samples. Values are
/// log10-scaled and mapped to [0, 255] with grid-wide bounds; a constant grid
/// maps to 128.
inline std::vector<std::vector<std::uint8_t>> grid_pgm_slices(const PseudoSpectrumGrid& ps) {
  const auto& g = ps.grid;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::vector<double> lv(ps.values.size());
  for (std::size_t i = 0; i < lv.size(); ++i) {
    lv[i] = std::log10(std::max(ps.values[i], std::numeric_limits<double>::min()));
    lo = std::min(lo, lv[i]);
    hi = std::max(hi, lv[i]);
  }
  std::vector<std::vector<std::uint8_t>> slices;
  const std::size_t nr = g.reception.count(), nt = g.time.count();
  for (std::size_t ie = 0; ie < g.emission.count(); ++ie) {
    const std::string head = "P5\n" + std::to_string(nt) + " " + std::to_string(nr) + "\n255\n";
    std::vector<std::uint8_t> img(head.begin(), head.end());
    for (std::size_t ir = 0; ir < nr; ++ir) {
      for (std::size_t it = 0; it < nt; ++it) {
        const double v = lv[ps.index(ie, ir, it)];
        const double u = hi > lo ? (v - lo) / (hi - lo) : 128.0 / 255.0;
        img.push_back(static_cast<std::uint8_t>(std::lround(255.0 * u)));
      }
    }
    slices.push_back(std::move(img));
  }
  return slices;
}

/// Writes `<prefix>_e<index>.pgm` files and returns their paths.
inline std::vector<std::filesystem::path> export_pgm(const std::filesystem::path& prefix,
                                                     const PseudoSpectrumGrid& ps) {
  std::vector<std::filesystem::path> written;
  const auto slices = grid_pgm_slices(ps);
  for (std::size_t ie = 0; ie < slices.size(); ++ie) {
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, "_e%03zu.pgm", ie);
    std::filesystem::path p = prefix;
    p += suffix;
    detail::write_bytes(p, slices[ie]);
    written.push_back(p);
  }
  return written;
}

}  // namespace raysep
