#include <doctest.h>

#include "lcskit/config.hpp"
#include "lcskit/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <string>

using namespace lcskit;

namespace {

bool same_config(const RunConfig& a, const RunConfig& b) {
  return serialize_config(a) == serialize_config(b);
}

}  // namespace

TEST_CASE("defaults serialize and parse back unchanged") {
  const RunConfig def;
  const RunConfig back = parse_config(serialize_config(def));
  CHECK(same_config(def, back));
  CHECK(back.grid.nx == 201);
  CHECK(back.field.name == "nonlinear_saddle");
  CHECK(back.integrator.method == IntegratorMethod::rk45);
}

TEST_CASE("a fully customized config round-trips") {
  RunConfig cfg;
  cfg.threads = 3;
  cfg.chart.name = "sphere";
  cfg.chart.radius = 2.5;
  cfg.chart.pole_clamp = 0.01;
  cfg.field.name = "sphere_rotation";
  cfg.field.omega = -0.7;
  cfg.grid = {33, 17, -3.0, 3.0, -1.5, 1.5};
  cfg.time.t1 = -2.0;
  cfg.time.T = 0.125;
  cfg.integrator.method = IntegratorMethod::rk4;
  cfg.integrator.step = 1e-3;
  cfg.deriv.h = 1e-6;
  cfg.deriv.lie_h = 0.02;
  cfg.lines.strain_seeds = {{0.1, 0.2}, {-0.3, 0.4}};
  cfg.lines.stretch_seeds = {};
  cfg.lines.max_len = 0.55;
  cfg.output.dir = "elsewhere";
  cfg.output.write_csv = false;

  const RunConfig back = parse_config(serialize_config(cfg));
  CHECK(same_config(cfg, back));
  CHECK(back.lines.strain_seeds.size() == 2);
  CHECK(back.lines.strain_seeds[1].x() == -0.3);
  CHECK(back.lines.stretch_seeds.empty());
  CHECK(back.output.write_csv == false);
  CHECK_NOTHROW(validate_config(back));
}

TEST_CASE("parser accepts comments, blank lines, and spacing") {
  const std::string text =
      "# leading comment\n"
      "threads = 2\n"
      "\n"
      "[grid]\n"
      "  nx = 11   # trailing comment\n"
      "ny=12\n";
  const RunConfig cfg = parse_config(text);
  CHECK(cfg.threads == 2);
  CHECK(cfg.grid.nx == 11);
  CHECK(cfg.grid.ny == 12);
  CHECK(cfg.grid.x0 == -1.0);
}

TEST_CASE("unknown sections, keys, and malformed lines are rejected") {
  CHECK_THROWS_AS(parse_config("[nope]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[grid]\nxq = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("stray\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[grid\nnx = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[grid]\nnx = banana\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[grid]\nnx = 5 trailing\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[output]\nwrite_csv = maybe\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[integrator]\nmethod = euler\n"), ConfigError);
}

TEST_CASE("seed lists parse pairs separated by semicolons") {
  const RunConfig cfg =
      parse_config("[lines]\nstrain_seeds = 1 2; -3.5 4e-2\nstretch_seeds =\n");
  REQUIRE(cfg.lines.strain_seeds.size() == 2);
  CHECK(cfg.lines.strain_seeds[0].x() == 1.0);
  CHECK(cfg.lines.strain_seeds[0].y() == 2.0);
  CHECK(cfg.lines.strain_seeds[1].y() == 4e-2);
  CHECK(cfg.lines.stretch_seeds.empty());
  CHECK_THROWS_AS(parse_config("[lines]\nstrain_seeds = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[lines]\nstrain_seeds = 1 2 3\n"), ConfigError);
}

TEST_CASE("overrides reach every section and reject unknowns") {
  RunConfig cfg;
  apply_override(cfg, "grid.nx=99");
  apply_override(cfg, "time.T=-5");
  apply_override(cfg, "field.name=linear_saddle");
  apply_override(cfg, "threads=4");
  apply_override(cfg, "lines.strain_seeds=0 0.5; 1 1");
  CHECK(cfg.grid.nx == 99);
  CHECK(cfg.time.T == -5.0);
  CHECK(cfg.field.name == "linear_saddle");
  CHECK(cfg.threads == 4);
  CHECK(cfg.lines.strain_seeds.size() == 2);
  CHECK_THROWS_AS(apply_override(cfg, "grid.zz=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "nonsense"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "grid.nx"), ConfigError);
}

TEST_CASE("validation rejects out-of-range settings") {
  RunConfig cfg;
  CHECK_NOTHROW(validate_config(cfg));

  RunConfig bad = cfg;
  bad.time.T = 0.0;
  CHECK_THROWS_AS(validate_config(bad), ConfigError);

  bad = cfg;
  bad.field.name = "vortex";
  CHECK_THROWS_AS(validate_config(bad), ConfigError);

  bad = cfg;
  bad.chart.name = "torus";
  CHECK_THROWS_AS(validate_config(bad), ConfigError);

  bad = cfg;
  bad.chart.name = "sphere";
  bad.chart.pole_clamp = 2.0;
  CHECK_THROWS_AS(validate_config(bad), ConfigError);

  bad = cfg;
  bad.grid.nx = 1;
  CHECK_THROWS_AS(validate_config(bad), ConfigError);

  bad = cfg;
  bad.grid.x1 = bad.grid.x0;
  CHECK_THROWS_AS(validate_config(bad), ConfigError);

  bad = cfg;
  bad.integrator.method = IntegratorMethod::rk4;
  bad.integrator.step = 0.0;
  CHECK_THROWS_AS(validate_config(bad), ConfigError);

  bad = cfg;
  bad.deriv.h = 0.0;
  CHECK_THROWS_AS(validate_config(bad), ConfigError);

  bad = cfg;
  bad.lines.max_len = -1.0;
  CHECK_THROWS_AS(validate_config(bad), ConfigError);

  bad = cfg;
  bad.output.dir = "";
  CHECK_THROWS_AS(validate_config(bad), ConfigError);

  bad = cfg;
  bad.field.lambda = -0.1;
  bad.field.name = "linear_saddle";
  CHECK_THROWS_AS(validate_config(bad), ConfigError);
}

TEST_CASE("load_config reads files and reports missing ones") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "lcskit_cfg_test";
  fs::create_directories(dir);
  const fs::path p = dir / "one.cfg";
  {
    std::ofstream os(p);
    os << "[time]\nT = 7\n";
  }
  const RunConfig cfg = load_config(p);
  CHECK(cfg.time.T == 7.0);
  CHECK_THROWS_AS(load_config(dir / "absent.cfg"), ConfigError);
}

TEST_CASE("checked-in configs parse, validate, and round-trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(LCSKIT_SOURCE_DIR) / "configs";
  std::size_t n = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".cfg") continue;
    ++n;
    const RunConfig cfg = load_config(entry.path());
    CHECK_NOTHROW(validate_config(cfg));
    CHECK(same_config(cfg, parse_config(serialize_config(cfg))));
  }
  CHECK(n == 4);
}

TEST_CASE("pipeline builders reject unknown names") {
  ChartConfig chart;
  chart.name = "torus";
  CHECK_THROWS_AS(build_chart(chart), ConfigError);
  FieldConfig field;
  field.name = "vortex";
  CHECK_THROWS_AS(build_field(field), ConfigError);
  CHECK(build_chart(ChartConfig{}).name == "euclidean");
  CHECK(build_field(FieldConfig{}).name == "nonlinear_saddle");
}
