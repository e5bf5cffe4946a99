#include "lcskit/cli.hpp"

#include "lcskit/config.hpp"
#include "lcskit/curves.hpp"
#include "lcskit/extrema.hpp"
#include "lcskit/io.hpp"
#include "lcskit/pipeline.hpp"
#include "lcskit/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcskit {

namespace {

namespace fs = std::filesystem;

fs::path ensure_out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.output.dir);
  fs::create_directories(dir);
  return dir;
}

/// Exit code from the invalid-point fraction: 3 past the degradation
/// threshold, 0 otherwise.
int finish(const PipelineResult& res) {
  if (res.def.invalid_fraction() >= 0.01) {
    std::fprintf(stderr, "numerical degradation: %zu of %zu points invalid\n",
                 res.def.invalid_count(), res.def.grid.size());
    return 3;
  }
  return 0;
}

int cmd_ftle(const RunConfig& cfg) {
  const PipelineResult res = run_forward(cfg);
  const fs::path dir = ensure_out_dir(cfg);
  if (cfg.output.write_csv) {
    write_flowmap_csv(dir / "flowmap.csv", res.fm);
    write_deformation_csv(dir / "deformation.csv", res.def);
  }
  if (cfg.output.write_binary) {
    write_field_block(dir / "field.bin", deformation_block(res.def));
  }
  std::printf("ftle: %zux%zu grid, t %g -> %g, %zu invalid, -> %s\n",
              res.def.grid.nx, res.def.grid.ny, cfg.time.t1,
              cfg.time.t1 + cfg.time.T, res.def.invalid_count(),
              dir.string().c_str());
  return finish(res);
}

MaterialCurve trace_curve(const DirectionField& d, const DeformationField& def,
                          const Vec2d& seed, CurveKind kind,
                          const LineIntegrationParams& params) {
  MaterialCurve c;
  try {
    c = integrate_line_field(d, seed, params);
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "warning: seed (%g, %g): %s\n", seed.x(), seed.y(),
                 e.what());
    c.kind = kind;
    c.vertices = {seed};
    return c;
  }
  try {
    classify_variational(c, def);
  } catch (const std::invalid_argument&) {
    // curve too short for the vertex tests; stays unclassified
  }
  return c;
}

int cmd_lines(const RunConfig& cfg) {
  const PipelineResult res = run_forward(cfg);
  const DirectionField d1 = direction_field(res.def, DirectionTag::xi1);
  const DirectionField d2 = direction_field(res.def, DirectionTag::xi2);
  LineIntegrationParams params;
  params.step = cfg.lines.step;
  params.max_len = cfg.lines.max_len;

  std::vector<MaterialCurve> curves;
  for (const Vec2d& s : cfg.lines.strain_seeds) {
    curves.push_back(trace_curve(d1, res.def, s, CurveKind::strainline, params));
  }
  for (const Vec2d& s : cfg.lines.stretch_seeds) {
    curves.push_back(trace_curve(d2, res.def, s, CurveKind::stretchline, params));
  }

  const fs::path dir = ensure_out_dir(cfg);
  write_curves_csv(dir / "curves.csv", curves);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const MaterialCurve& c = curves[i];
    std::printf("curve %zu: %s, %zu vertices, arclength %g, %s\n", i,
                to_string(c.kind).c_str(), c.vertices.size(), c.arclength,
                to_string(c.cls).c_str());
  }
  return finish(res);
}

int cmd_extrema(const RunConfig& cfg) {
  const PipelineResult res = run_forward(cfg);
  const SampledScalarField s2 = scalar_field(res.def, FieldQuantity::sigma2);
  const SampledScalarField s1 = scalar_field(res.def, FieldQuantity::sigma1);
  const DirectionField d2 = direction_field(res.def, DirectionTag::xi2);
  const DirectionField d1 = direction_field(res.def, DirectionTag::xi1);
  const double h = cfg.deriv.lie_h;
  const auto strain =
      generalized_extrema(s2, d2, res.def.grid, ExtremaKind::max, h);
  const auto stretch =
      generalized_extrema(s1, d1, res.def.grid, ExtremaKind::min, h);

  const fs::path dir = ensure_out_dir(cfg);
  write_extrema_csv(dir / "extrema_strain.csv", strain);
  write_extrema_csv(dir / "extrema_stretch.csv", stretch);
  std::printf("extrema: %zu strain maxima, %zu stretch minima, -> %s\n",
              strain.size(), stretch.size(), dir.string().c_str());
  return finish(res);
}

int cmd_verify(const RunConfig& cfg) {
  const VerifyReport rep = run_verification(cfg);
  const fs::path dir = ensure_out_dir(cfg);
  {
    std::ofstream os(dir / "verify.json", std::ios::binary);
    os << report_to_json(rep, cfg);
  }
  for (const CheckResult& c : rep.checks) {
    std::string line;
    if (c.skipped) {
      line = "[skip] " + c.suite + "." + c.metric + " (" + c.note + ")";
    } else {
      char buf[128];
      std::snprintf(buf, sizeof buf, " %.6g vs %.6g", c.value, c.threshold);
      line = std::string(c.pass ? "[pass] " : "[FAIL] ") + c.suite + "." +
             c.metric + buf;
      if (!c.note.empty()) line += " (" + c.note + ")";
    }
    std::printf("%s\n", line.c_str());
  }
  std::printf("invalid fraction: %g\n", rep.invalid_fraction);
  if (rep.degraded()) return 3;
  return rep.all_pass() ? 0 : 4;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"finite-time stretching diagnostics and material-curve extraction"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  int threads = -1;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "run configuration file");
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    sub->add_option("--set", overrides,
                    "section.key=value override, repeatable");
    sub->add_option("--threads", threads, "worker threads (0 = hardware count)");
  };

  CLI::App* c_ftle = app.add_subcommand(
      "ftle", "advect the grid and export flow-map and deformation fields");
  CLI::App* c_lines = app.add_subcommand(
      "lines", "integrate and classify strainlines and stretchlines");
  CLI::App* c_extrema = app.add_subcommand(
      "extrema", "export pointwise strain maxima and stretch minima");
  CLI::App* c_verify = app.add_subcommand(
      "verify", "run the residual suites and write a pass/fail report");
  CLI::App* c_dump =
      app.add_subcommand("dump-config", "print the effective configuration");
  for (CLI::App* sub : {c_ftle, c_lines, c_extrema, c_verify, c_dump}) {
    add_common(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    for (const std::string& s : overrides) apply_override(cfg, s);
    if (!out_dir.empty()) cfg.output.dir = out_dir;
    if (threads >= 0) cfg.threads = static_cast<unsigned>(threads);
    validate_config(cfg);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }

  try {
    if (c_ftle->parsed()) return cmd_ftle(cfg);
    if (c_lines->parsed()) return cmd_lines(cfg);
    if (c_extrema->parsed()) return cmd_extrema(cfg);
    if (c_verify->parsed()) return cmd_verify(cfg);
    if (c_dump->parsed()) {
      std::fputs(serialize_config(cfg).c_str(), stdout);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace lcskit
