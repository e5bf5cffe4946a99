#include <doctest.h>

#include "lcskit/flowmap.hpp"
#include "lcskit/io.hpp"
#include "lcskit/pipeline.hpp"
#include "lcskit/velocity.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace lcskit;

namespace {

fs::path temp_file(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "lcskit_io_test";
  fs::create_directories(dir);
  return dir / name;
}

FieldBlock random_block(std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  FieldBlock b;
  b.grid = Grid2{7, 5, -1.0, 1.0, 0.0, 2.0};
  b.channel_names = {"a", "b", "c"};
  b.channels.resize(3);
  for (auto& ch : b.channels) {
    ch.resize(b.grid.size());
    for (double& v : ch) v = u(rng);
  }
  return b;
}

std::size_t count_lines(const fs::path& p) {
  std::ifstream is(p);
  std::size_t n = 0;
  std::string line;
  while (std::getline(is, line)) ++n;
  return n;
}

std::string first_line(const fs::path& p) {
  std::ifstream is(p);
  std::string line;
  std::getline(is, line);
  return line;
}

}  // namespace

TEST_CASE("field block round-trips bit-exactly") {
  FieldBlock b = random_block(2026);
  b.channels[1][3] = std::nan("");
  b.channels[2][0] = -0.0;
  const fs::path p = temp_file("roundtrip.bin");
  write_field_block(p, b);

  const FieldBlock r = read_field_block(p);
  CHECK(r.version == b.version);
  CHECK(r.grid.nx == b.grid.nx);
  CHECK(r.grid.ny == b.grid.ny);
  CHECK(r.grid.x0 == b.grid.x0);
  CHECK(r.grid.x1 == b.grid.x1);
  CHECK(r.grid.y0 == b.grid.y0);
  CHECK(r.grid.y1 == b.grid.y1);
  REQUIRE(r.channels.size() == b.channels.size());
  for (std::size_t c = 0; c < b.channels.size(); ++c) {
    REQUIRE(r.channels[c].size() == b.channels[c].size());
    for (std::size_t i = 0; i < b.channels[c].size(); ++i) {
      std::uint64_t got = 0, want = 0;
      std::memcpy(&got, &r.channels[c][i], 8);
      std::memcpy(&want, &b.channels[c][i], 8);
      CHECK(got == want);
    }
  }
}

TEST_CASE("writing the same block twice yields identical bytes") {
  const FieldBlock b = random_block(7);
  const fs::path p1 = temp_file("det1.bin");
  const fs::path p2 = temp_file("det2.bin");
  write_field_block(p1, b);
  write_field_block(p2, b);
  std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
  std::ostringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK(s1.str().size() == 4 + 3 * 4 + 4 * 8 + 4 + 3 * 35 * 8);
}

TEST_CASE("reader rejects bad magic, bad version, truncation") {
  const FieldBlock b = random_block(11);
  const fs::path p = temp_file("mangle.bin");
  write_field_block(p, b);
  std::ifstream is(p, std::ios::binary);
  std::ostringstream buf;
  buf << is.rdbuf();
  std::string bytes = buf.str();

  auto rewrite = [&](const std::string& s) {
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    os.write(s.data(), static_cast<std::streamsize>(s.size()));
  };

  std::string bad = bytes;
  bad[0] = 'X';
  rewrite(bad);
  CHECK_THROWS_AS(read_field_block(p), std::runtime_error);

  bad = bytes;
  bad[4] = 99;
  rewrite(bad);
  CHECK_THROWS_AS(read_field_block(p), std::runtime_error);

  rewrite(bytes.substr(0, bytes.size() - 5));
  CHECK_THROWS_AS(read_field_block(p), std::runtime_error);

  rewrite(bytes);
  CHECK_NOTHROW(read_field_block(p));

  CHECK_THROWS_AS(read_field_block(temp_file("missing.bin")),
                  std::runtime_error);
}

TEST_CASE("writer rejects channel size mismatch") {
  FieldBlock b = random_block(3);
  b.channels[0].pop_back();
  CHECK_THROWS_AS(write_field_block(temp_file("bad.bin"), b),
                  std::invalid_argument);
}

TEST_CASE("csv exports carry the right headers and row counts") {
  const VelocityField field = make_linear_saddle(0.3);
  const Grid2 grid{5, 4, -1.0, 1.0, -1.0, 1.0};
  const FlowMapGrid fm =
      deformation_gradient_grid(field, grid, 0.0, 1.0, 1e-5, {});
  const DeformationField def = analyze_deformation(fm);

  const fs::path pf = temp_file("fm.csv");
  write_flowmap_csv(pf, fm);
  CHECK(first_line(pf) == "x,y,fx,fy,j11,j12,j21,j22,valid");
  CHECK(count_lines(pf) == 1 + grid.size());

  const fs::path pd = temp_file("def.csv");
  write_deformation_csv(pd, def);
  CHECK(first_line(pd) ==
        "x,y,fx,fy,j11,j12,j21,j22,valid,s1,s2,xi1x,xi1y,xi2x,xi2y,"
        "th1x,th1y,th2x,th2y,ftle_f,ftle_b,degenerate");
  CHECK(count_lines(pd) == 1 + grid.size());

  const FieldBlock blk = deformation_block(def);
  CHECK(blk.channels.size() == 12);
  CHECK(blk.channel_names.size() == 12);
  const std::size_t origin = grid.index(2, 1);
  CHECK(blk.channels[6][origin] == def.sigma1[origin]);
  CHECK(blk.channels[10][origin] == 1.0);
}

TEST_CASE("curve and extrema exports") {
  MaterialCurve c;
  c.kind = CurveKind::stretchline;
  c.vertices = {Vec2d{0.0, 0.0}, Vec2d{0.0, 0.1}};
  c.arclength = 0.1;
  const fs::path pc = temp_file("curves.csv");
  write_curves_csv(pc, {c});
  CHECK(first_line(pc) == "curve_id,vertex_id,x,y,s1,s2,L1,L2,class");
  CHECK(count_lines(pc) == 3);

  std::ifstream is(pc);
  std::string line;
  std::getline(is, line);
  std::getline(is, line);
  CHECK(line.find("unclassified") != std::string::npos);
  CHECK(line.find("nan") != std::string::npos);

  ExtremumPoint pt;
  pt.x = Vec2d{0.25, -0.5};
  pt.lie1 = 1e-12;
  pt.lie2 = -2.0;
  const fs::path pe = temp_file("ext.csv");
  write_extrema_csv(pe, {pt});
  CHECK(first_line(pe) == "x,y,L1,L2");
  CHECK(count_lines(pe) == 2);
}
