#pragma once

// Run configuration: a flat key=value file whose keys mirror RunConfig
// fields, plus command-line overrides routed through the same setter.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "dirosc/params.hpp"

namespace dirosc::harness {

enum class Mode { spectrum, evolve, sweep, verify };
enum class Format { csv, json };

inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::spectrum: return "spectrum";
    case Mode::evolve: return "evolve";
    case Mode::sweep: return "sweep";
    default: return "verify";
  }
}
inline const char* to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

/// Defaults reproduce the entanglement study: m=3.2, alpha=1.2, A=0, B=1,
/// n=0, theta=pi/4, t in [0,30], gamma in [0, 2m].
struct RunConfig {
  Mode mode = Mode::spectrum;
  ModelParams params = [] {
    ModelParams p = ModelParams::for_dimension(1);
    p.m = 3.2;
    p.alpha = 1.2;
    p.A = 0.0;
    p.B = 1.0;
    p.gamma = 0.0;
    return p;
  }();
  int n = 0;
  double theta = std::numbers::pi / 4.0;
  double t_min = 0.0;
  double t_max = 30.0;
  int t_steps = 301;
  double gamma_min = 0.0;
  double gamma_max = 6.4;
  int gamma_steps = 65;
  int n_range_min = -2;  // -2 and -1 are the singlet and triplet sectors
  int n_range_max = 10;
  int n_max_truncation = 40;
  std::string output_path;
  Format format = Format::csv;
  std::uint64_t seed = 20240917;
  int workers = 0;  // 0: one per hardware thread
  int draws = 10000;

  void validate() const {
    params.validate();
    if (!(t_max >= t_min)) throw ConfigError("t_max must be >= t_min");
    if (!(gamma_max >= gamma_min)) throw ConfigError("gamma_max must be >= gamma_min");
    if (t_steps < 1 || gamma_steps < 1) throw ConfigError("grid steps must be >= 1");
    if (n_range_max < n_range_min) throw ConfigError("n_range upper end below lower end");
    if (n < 0) throw ConfigError("n must be >= 0");
    if (n_max_truncation < 2) throw ConfigError("n_max_truncation must be >= 2");
    if (workers < 0) throw ConfigError("workers must be >= 0");
    if (draws < 1) throw ConfigError("draws must be >= 1");
  }

  bool operator==(const RunConfig&) const = default;
};

/// Shortest text that round-trips through strtod: 17 significant digits.
inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x)) throw ConfigError("field '" + key + "': not a finite number: '" + v + "'");
  return x;
}

template <class Int>
Int parse_int(const std::string& key, const std::string& v) {
  Int x{};
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end) throw ConfigError("field '" + key + "': not an integer: '" + v + "'");
  return x;
}

inline LadderConvention parse_convention(const std::string& v) {
  if (v == "unit") return LadderConvention::unit();
  if (v == "doubled") return LadderConvention::doubled();
  LadderConvention c{parse_double("convention", v)};
  if (!(c.scale > 0.0)) throw ConfigError("field 'convention': scale must be positive");
  return c;
}

inline std::string convention_text(const LadderConvention& c) {
  if (c == LadderConvention::unit()) return "unit";
  if (c == LadderConvention::doubled()) return "doubled";
  return format_double(c.scale);
}

inline std::pair<int, int> parse_range(const std::string& v) {
  const auto colon = v.find(':');
  if (colon == std::string::npos) throw ConfigError("field 'n_range': expected LO:HI, got '" + v + "'");
  return {parse_int<int>("n_range", trim(v.substr(0, colon))), parse_int<int>("n_range", trim(v.substr(colon + 1)))};
}

}  // namespace detail

/// Keys in canonical (serialization) order.
inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "mode",  "dimension", "convention", "m",           "A",         "B",           "alpha",
      "gamma", "n",         "theta",      "t_min",       "t_max",     "t_steps",     "gamma_min",
      "gamma_max", "gamma_steps", "n_range", "n_max_truncation", "output_path", "format", "seed",
      "workers", "draws"};
  return keys;
}

/// Applies one key. "dimension" resets the ladder convention to that
/// dimension's default; build_config applies it before "convention".
inline void set_field(RunConfig& c, const std::string& key, const std::string& value) {
  using namespace detail;
  if (key == "mode") {
    if (value == "spectrum") c.mode = Mode::spectrum;
    else if (value == "evolve") c.mode = Mode::evolve;
    else if (value == "sweep") c.mode = Mode::sweep;
    else if (value == "verify") c.mode = Mode::verify;
    else throw ConfigError("field 'mode': unknown mode '" + value + "'");
  } else if (key == "dimension") {
    const int d = parse_int<int>(key, value);
    if (d < 1 || d > 3) throw ConfigError("field 'dimension': must be 1, 2 or 3");
    c.params.dimension = d;
    c.params.convention = ModelParams::for_dimension(d).convention;
  } else if (key == "convention") {
    c.params.convention = parse_convention(value);
  } else if (key == "m") {
    c.params.m = parse_double(key, value);
  } else if (key == "A") {
    c.params.A = parse_double(key, value);
  } else if (key == "B") {
    c.params.B = parse_double(key, value);
  } else if (key == "alpha") {
    c.params.alpha = parse_double(key, value);
  } else if (key == "gamma") {
    c.params.gamma = parse_double(key, value);
  } else if (key == "n") {
    c.n = parse_int<int>(key, value);
  } else if (key == "theta") {
    c.theta = parse_double(key, value);
  } else if (key == "t_min") {
    c.t_min = parse_double(key, value);
  } else if (key == "t_max") {
    c.t_max = parse_double(key, value);
  } else if (key == "t_steps") {
    c.t_steps = parse_int<int>(key, value);
  } else if (key == "gamma_min") {
    c.gamma_min = parse_double(key, value);
  } else if (key == "gamma_max") {
    c.gamma_max = parse_double(key, value);
  } else if (key == "gamma_steps") {
    c.gamma_steps = parse_int<int>(key, value);
  } else if (key == "n_range") {
    std::tie(c.n_range_min, c.n_range_max) = parse_range(value);
  } else if (key == "n_max_truncation") {
    c.n_max_truncation = parse_int<int>(key, value);
  } else if (key == "output_path") {
    c.output_path = value;
  } else if (key == "format") {
    if (value == "csv") c.format = Format::csv;
    else if (value == "json") c.format = Format::json;
    else throw ConfigError("field 'format': expected csv or json, got '" + value + "'");
  } else if (key == "seed") {
    c.seed = parse_int<std::uint64_t>(key, value);
  } else if (key == "workers") {
    c.workers = parse_int<int>(key, value);
  } else if (key == "draws") {
    c.draws = parse_int<int>(key, value);
  } else {
    throw ConfigError("unknown field '" + key + "'");
  }
}

using FieldMap = std::map<std::string, std::string>;

/// Parses key=value lines; '#' starts a comment. Errors carry the line number.
inline FieldMap parse_fields(std::string_view text) {
  FieldMap out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(t.substr(0, eq));
    const std::string value = detail::trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (out.count(key)) throw ConfigError("line " + std::to_string(lineno) + ": duplicate field '" + key + "'");
    out[key] = value;
  }
  return out;
}

/// Builds a config from fields in canonical key order, so that "dimension"
/// precedes "convention" regardless of the order in the source.
inline RunConfig build_config(const FieldMap& fields, RunConfig base = {}) {
  for (const auto& [k, v] : fields) {
    (void)v;
    if (std::find(config_keys().begin(), config_keys().end(), k) == config_keys().end()) throw ConfigError("unknown field '" + k + "'");
  }
  for (const auto& key : config_keys())
    if (auto it = fields.find(key); it != fields.end()) set_field(base, key, it->second);
  base.validate();
  return base;
}

inline RunConfig parse_config(std::string_view text, RunConfig base = {}) {
  try {
    return build_config(parse_fields(text), std::move(base));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

inline FieldMap read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_fields(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

inline std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  auto put = [&](const char* k, const std::string& v) { out << k << " = " << v << '\n'; };
  put("mode", to_string(c.mode));
  put("dimension", std::to_string(c.params.dimension));
  put("convention", detail::convention_text(c.params.convention));
  put("m", format_double(c.params.m));
  put("A", format_double(c.params.A));
  put("B", format_double(c.params.B));
  put("alpha", format_double(c.params.alpha));
  put("gamma", format_double(c.params.gamma));
  put("n", std::to_string(c.n));
  put("theta", format_double(c.theta));
  put("t_min", format_double(c.t_min));
  put("t_max", format_double(c.t_max));
  put("t_steps", std::to_string(c.t_steps));
  put("gamma_min", format_double(c.gamma_min));
  put("gamma_max", format_double(c.gamma_max));
  put("gamma_steps", std::to_string(c.gamma_steps));
  put("n_range", std::to_string(c.n_range_min) + ":" + std::to_string(c.n_range_max));
  put("n_max_truncation", std::to_string(c.n_max_truncation));
  put("output_path", c.output_path);
  put("format", to_string(c.format));
  put("seed", std::to_string(c.seed));
  put("workers", std::to_string(c.workers));
  put("draws", std::to_string(c.draws));
  return out.str();
}

}  // namespace dirosc::harness
