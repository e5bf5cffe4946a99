#include "lcskit/io.hpp"

#include <bit>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "field block serialization assumes a little-endian host");

namespace lcskit {

namespace {

constexpr char kMagic[4] = {'L', 'C', 'S', 'K'};
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void put_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

double get_f64(std::istream& is) {
  double v = 0.0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path) : os_(path) {
    if (!os_) {
      throw std::runtime_error("cannot open for writing: " + path.string());
    }
  }

  void header(const char* text) { os_ << text << '\n'; }

  void field(double v) {
    sep();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os_ << buf;
  }

  void field(std::uint64_t v) {
    sep();
    char buf[24];
    std::snprintf(buf, sizeof buf, "%" PRIu64, v);
    os_ << buf;
  }

  void field(const std::string& v) {
    sep();
    os_ << v;
  }

  void endrow() {
    os_ << '\n';
    first_ = true;
  }

  void close(const std::filesystem::path& path) {
    os_.flush();
    if (!os_) {
      throw std::runtime_error("write failed: " + path.string());
    }
  }

 private:
  void sep() {
    if (!first_) os_ << ',';
    first_ = false;
  }

  std::ofstream os_;
  bool first_ = true;
};

}  // namespace

void write_field_block(const std::filesystem::path& path, const FieldBlock& b) {
  const std::size_t n = b.grid.size();
  for (const auto& c : b.channels) {
    if (c.size() != n) {
      throw std::invalid_argument("field block: channel size does not match grid");
    }
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  os.write(kMagic, sizeof kMagic);
  put_u32(os, b.version);
  put_u32(os, static_cast<std::uint32_t>(b.grid.nx));
  put_u32(os, static_cast<std::uint32_t>(b.grid.ny));
  put_f64(os, b.grid.x0);
  put_f64(os, b.grid.x1);
  put_f64(os, b.grid.y0);
  put_f64(os, b.grid.y1);
  put_u32(os, static_cast<std::uint32_t>(b.channels.size()));
  for (const auto& c : b.channels) {
    os.write(reinterpret_cast<const char*>(c.data()),
             static_cast<std::streamsize>(c.size() * sizeof(double)));
  }
  os.flush();
  if (!os) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

FieldBlock read_field_block(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw std::runtime_error("cannot open for reading: " + path.string());
  }
  char magic[4] = {};
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
    throw std::runtime_error("field block: bad magic in " + path.string());
  }
  FieldBlock b;
  b.version = get_u32(is);
  if (b.version != 1) {
    throw std::runtime_error("field block: unsupported version in " +
                             path.string());
  }
  const std::uint32_t nx = get_u32(is);
  const std::uint32_t ny = get_u32(is);
  const double x0 = get_f64(is);
  const double x1 = get_f64(is);
  const double y0 = get_f64(is);
  const double y1 = get_f64(is);
  const std::uint32_t nchannels = get_u32(is);
  if (!is) {
    throw std::runtime_error("field block: truncated header in " +
                             path.string());
  }
  b.grid = Grid2(nx, ny, x0, x1, y0, y1);
  b.channels.assign(nchannels, std::vector<double>(b.grid.size()));
  for (auto& c : b.channels) {
    is.read(reinterpret_cast<char*>(c.data()),
            static_cast<std::streamsize>(c.size() * sizeof(double)));
  }
  if (!is) {
    throw std::runtime_error("field block: truncated payload in " +
                             path.string());
  }
  return b;
}

void write_flowmap_csv(const std::filesystem::path& path,
                       const FlowMapGrid& fm) {
  CsvWriter w(path);
  w.header("x,y,fx,fy,j11,j12,j21,j22,valid");
  const bool with_df = fm.has_df();
  for (std::size_t j = 0; j < fm.grid.ny; ++j) {
    for (std::size_t i = 0; i < fm.grid.nx; ++i) {
      const std::size_t idx = fm.grid.index(i, j);
      w.field(fm.grid.x(i));
      w.field(fm.grid.y(j));
      w.field(fm.x2[idx][0]);
      w.field(fm.x2[idx][1]);
      const Mat2d df = with_df ? fm.df[idx] : Mat2d::Zero();
      w.field(df(0, 0));
      w.field(df(0, 1));
      w.field(df(1, 0));
      w.field(df(1, 1));
      w.field(static_cast<std::uint64_t>(fm.valid[idx]));
      w.endrow();
    }
  }
  w.close(path);
}

void write_deformation_csv(const std::filesystem::path& path,
                           const DeformationField& f) {
  CsvWriter w(path);
  w.header(
      "x,y,fx,fy,j11,j12,j21,j22,valid,"
      "s1,s2,xi1x,xi1y,xi2x,xi2y,th1x,th1y,th2x,th2y,ftle_f,ftle_b,degenerate");
  for (std::size_t j = 0; j < f.grid.ny; ++j) {
    for (std::size_t i = 0; i < f.grid.nx; ++i) {
      const std::size_t idx = f.grid.index(i, j);
      w.field(f.grid.x(i));
      w.field(f.grid.y(j));
      w.field(f.x2[idx][0]);
      w.field(f.x2[idx][1]);
      w.field(f.df[idx](0, 0));
      w.field(f.df[idx](0, 1));
      w.field(f.df[idx](1, 0));
      w.field(f.df[idx](1, 1));
      w.field(static_cast<std::uint64_t>(f.valid[idx]));
      w.field(f.sigma1[idx]);
      w.field(f.sigma2[idx]);
      w.field(f.xi1[idx][0]);
      w.field(f.xi1[idx][1]);
      w.field(f.xi2[idx][0]);
      w.field(f.xi2[idx][1]);
      w.field(f.th1[idx][0]);
      w.field(f.th1[idx][1]);
      w.field(f.th2[idx][0]);
      w.field(f.th2[idx][1]);
      w.field(f.ftle_f[idx]);
      w.field(f.ftle_b[idx]);
      w.field(static_cast<std::uint64_t>(f.degenerate[idx]));
      w.endrow();
    }
  }
  w.close(path);
}

void write_curves_csv(const std::filesystem::path& path,
                      const std::vector<MaterialCurve>& curves) {
  CsvWriter w(path);
  w.header("curve_id,vertex_id,x,y,s1,s2,L1,L2,class");
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const MaterialCurve& curve = curves[c];
    const bool diag = curve.s1.size() == curve.vertices.size();
    for (std::size_t k = 0; k < curve.vertices.size(); ++k) {
      w.field(static_cast<std::uint64_t>(c));
      w.field(static_cast<std::uint64_t>(k));
      w.field(curve.vertices[k][0]);
      w.field(curve.vertices[k][1]);
      w.field(diag ? curve.s1[k] : kNan);
      w.field(diag ? curve.s2[k] : kNan);
      w.field(diag ? curve.lie1[k] : kNan);
      w.field(diag ? curve.lie2[k] : kNan);
      w.field(to_string(curve.cls));
      w.endrow();
    }
  }
  w.close(path);
}

void write_extrema_csv(const std::filesystem::path& path,
                       const std::vector<ExtremumPoint>& points) {
  CsvWriter w(path);
  w.header("x,y,L1,L2");
  for (const ExtremumPoint& p : points) {
    w.field(p.x[0]);
    w.field(p.x[1]);
    w.field(p.lie1);
    w.field(p.lie2);
    w.endrow();
  }
  w.close(path);
}

FieldBlock deformation_block(const DeformationField& f) {
  FieldBlock b;
  b.grid = f.grid;
  b.channel_names = {"fx", "fy",     "j11",    "j12",   "j21",   "j22",
                     "s1", "s2",     "ftle_f", "ftle_b", "valid",
                     "degenerate"};
  const std::size_t n = f.grid.size();
  b.channels.assign(12, std::vector<double>(n));
  for (std::size_t idx = 0; idx < n; ++idx) {
    b.channels[0][idx] = f.x2[idx][0];
    b.channels[1][idx] = f.x2[idx][1];
    b.channels[2][idx] = f.df[idx](0, 0);
    b.channels[3][idx] = f.df[idx](0, 1);
    b.channels[4][idx] = f.df[idx](1, 0);
    b.channels[5][idx] = f.df[idx](1, 1);
    b.channels[6][idx] = f.sigma1[idx];
    b.channels[7][idx] = f.sigma2[idx];
    b.channels[8][idx] = f.ftle_f[idx];
    b.channels[9][idx] = f.ftle_b[idx];
    b.channels[10][idx] = static_cast<double>(f.valid[idx]);
    b.channels[11][idx] = static_cast<double>(f.degenerate[idx]);
  }
  return b;
}

}  // namespace lcskit
