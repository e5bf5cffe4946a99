#pragma once

#include "lcskit/common.hpp"
#include "lcskit/integrate.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcskit {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ChartConfig {
  std::string name = "euclidean";
  double radius = 1.0;      // sphere only
  double pole_clamp = 1e-3;  // sphere only
};

struct FieldConfig {
  std::string name = "nonlinear_saddle";
  double L = 2.0;      // nonlinear_saddle
  double q1 = 1.0;     // nonlinear_saddle
  double q2 = 0.15;    // nonlinear_saddle
  double lambda = 0.3;  // linear_saddle
  double omega = 0.2;   // sphere_rotation
};

struct GridConfig {
  std::size_t nx = 201;
  std::size_t ny = 201;
  double x0 = -1.0;
  double x1 = 1.0;
  double y0 = -1.0;
  double y1 = 1.0;
};

struct TimeConfig {
  double t1 = 0.0;
  double T = 1.0;  // advection span, t2 = t1 + T; negative runs backward
};

struct DerivConfig {
  double h = 1e-5;     // finite-difference seed offset
  double lie_h = 0.01;  // Lie-derivative stencil length
};

struct LinesConfig {
  std::vector<Vec2d> strain_seeds = {{0.01, 0.0}};
  std::vector<Vec2d> stretch_seeds = {{0.0, 0.01}};
  double step = 1e-3;
  double max_len = 0.2;
};

struct OutputConfig {
  std::string dir = "out";
  bool write_csv = true;
  bool write_binary = true;
};

/// One run recipe: what to compute, where, and how accurately.
struct RunConfig {
  unsigned threads = 0;  // 0 = hardware parallelism
  ChartConfig chart;
  FieldConfig field;
  GridConfig grid;
  TimeConfig time;
  IntegratorParams integrator;
  DerivConfig deriv;
  LinesConfig lines;
  OutputConfig output;
};

/// Parses the sectioned key/value text. Unknown sections or keys and
/// malformed values raise ConfigError. Parsing alone does not validate
/// ranges; call validate afterwards.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::filesystem::path& path);

/// Emits text that parses back to an identical configuration.
std::string serialize_config(const RunConfig& cfg);

/// Applies one `section.key=value` override (`threads=N` for the top level).
void apply_override(RunConfig& cfg, const std::string& assignment);

/// Range and cross-field checks; throws ConfigError with the offending key.
void validate_config(const RunConfig& cfg);

}  // namespace lcskit
