#include "lcskit/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lcskit {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + v + "'");
  }
  if (pos != v.size()) {
    throw ConfigError(key + ": trailing characters in number: '" + v + "'");
  }
  return out;
}

std::size_t to_size(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  unsigned long long out = 0;
  try {
    out = std::stoull(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a nonnegative integer: '" + v + "'");
  }
  if (pos != v.size() || (!v.empty() && v[0] == '-')) {
    throw ConfigError(key + ": not a nonnegative integer: '" + v + "'");
  }
  return static_cast<std::size_t>(out);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::vector<Vec2d> to_seeds(const std::string& key, const std::string& v) {
  std::vector<Vec2d> out;
  std::stringstream groups(v);
  std::string group;
  while (std::getline(groups, group, ';')) {
    group = trim(group);
    if (group.empty()) continue;
    std::istringstream pair(group);
    double x = 0.0, y = 0.0;
    if (!(pair >> x >> y)) {
      throw ConfigError(key + ": expected 'x y' pairs separated by ';', got '" +
                        v + "'");
    }
    std::string rest;
    if (pair >> rest) {
      throw ConfigError(key + ": trailing characters in seed '" + group + "'");
    }
    out.push_back({x, y});
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const std::vector<Vec2d>& seeds) {
  std::string out;
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    if (k > 0) out += "; ";
    out += fmt(seeds[k][0]) + " " + fmt(seeds[k][1]);
  }
  return out;
}

void set_key(RunConfig& cfg, const std::string& section,
             const std::string& key, const std::string& value) {
  const std::string full = section.empty() ? key : section + "." + key;
  if (section.empty()) {
    if (key == "threads") {
      cfg.threads = static_cast<unsigned>(to_size(full, value));
    } else {
      throw ConfigError("unknown key: " + full);
    }
  } else if (section == "chart") {
    if (key == "name") cfg.chart.name = value;
    else if (key == "radius") cfg.chart.radius = to_double(full, value);
    else if (key == "pole_clamp") cfg.chart.pole_clamp = to_double(full, value);
    else throw ConfigError("unknown key: " + full);
  } else if (section == "field") {
    if (key == "name") cfg.field.name = value;
    else if (key == "L") cfg.field.L = to_double(full, value);
    else if (key == "q1") cfg.field.q1 = to_double(full, value);
    else if (key == "q2") cfg.field.q2 = to_double(full, value);
    else if (key == "lambda") cfg.field.lambda = to_double(full, value);
    else if (key == "omega") cfg.field.omega = to_double(full, value);
    else throw ConfigError("unknown key: " + full);
  } else if (section == "grid") {
    if (key == "nx") cfg.grid.nx = to_size(full, value);
    else if (key == "ny") cfg.grid.ny = to_size(full, value);
    else if (key == "x0") cfg.grid.x0 = to_double(full, value);
    else if (key == "x1") cfg.grid.x1 = to_double(full, value);
    else if (key == "y0") cfg.grid.y0 = to_double(full, value);
    else if (key == "y1") cfg.grid.y1 = to_double(full, value);
    else throw ConfigError("unknown key: " + full);
  } else if (section == "time") {
    if (key == "t1") cfg.time.t1 = to_double(full, value);
    else if (key == "T") cfg.time.T = to_double(full, value);
    else throw ConfigError("unknown key: " + full);
  } else if (section == "integrator") {
    if (key == "method") {
      try {
        cfg.integrator.method = parse_integrator_method(value);
      } catch (const std::exception& e) {
        throw ConfigError(full + ": " + e.what());
      }
    } else if (key == "abs_tol") {
      cfg.integrator.abs_tol = to_double(full, value);
    } else if (key == "rel_tol") {
      cfg.integrator.rel_tol = to_double(full, value);
    } else if (key == "step") {
      cfg.integrator.step = to_double(full, value);
    } else if (key == "max_steps") {
      cfg.integrator.max_steps =
          static_cast<std::int64_t>(to_size(full, value));
    } else {
      throw ConfigError("unknown key: " + full);
    }
  } else if (section == "deriv") {
    if (key == "h") cfg.deriv.h = to_double(full, value);
    else if (key == "lie_h") cfg.deriv.lie_h = to_double(full, value);
    else throw ConfigError("unknown key: " + full);
  } else if (section == "lines") {
    if (key == "strain_seeds") cfg.lines.strain_seeds = to_seeds(full, value);
    else if (key == "stretch_seeds") cfg.lines.stretch_seeds = to_seeds(full, value);
    else if (key == "step") cfg.lines.step = to_double(full, value);
    else if (key == "max_len") cfg.lines.max_len = to_double(full, value);
    else throw ConfigError("unknown key: " + full);
  } else if (section == "output") {
    if (key == "dir") cfg.output.dir = value;
    else if (key == "write_csv") cfg.output.write_csv = to_bool(full, value);
    else if (key == "write_binary") cfg.output.write_binary = to_bool(full, value);
    else throw ConfigError("unknown key: " + full);
  } else {
    throw ConfigError("unknown section: [" + section + "]");
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(lineno) +
                          ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError("line " + std::to_string(lineno) + ": empty section");
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value, got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    }
    set_key(cfg, section, key, value);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) {
    throw ConfigError("cannot read config file: " + path.string());
  }
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "threads = " << cfg.threads << "\n\n";
  os << "[chart]\n";
  os << "name = " << cfg.chart.name << "\n";
  os << "radius = " << fmt(cfg.chart.radius) << "\n";
  os << "pole_clamp = " << fmt(cfg.chart.pole_clamp) << "\n\n";
  os << "[field]\n";
  os << "name = " << cfg.field.name << "\n";
  os << "L = " << fmt(cfg.field.L) << "\n";
  os << "q1 = " << fmt(cfg.field.q1) << "\n";
  os << "q2 = " << fmt(cfg.field.q2) << "\n";
  os << "lambda = " << fmt(cfg.field.lambda) << "\n";
  os << "omega = " << fmt(cfg.field.omega) << "\n\n";
  os << "[grid]\n";
  os << "nx = " << cfg.grid.nx << "\n";
  os << "ny = " << cfg.grid.ny << "\n";
  os << "x0 = " << fmt(cfg.grid.x0) << "\n";
  os << "x1 = " << fmt(cfg.grid.x1) << "\n";
  os << "y0 = " << fmt(cfg.grid.y0) << "\n";
  os << "y1 = " << fmt(cfg.grid.y1) << "\n\n";
  os << "[time]\n";
  os << "t1 = " << fmt(cfg.time.t1) << "\n";
  os << "T = " << fmt(cfg.time.T) << "\n\n";
  os << "[integrator]\n";
  os << "method = " << to_string(cfg.integrator.method) << "\n";
  os << "abs_tol = " << fmt(cfg.integrator.abs_tol) << "\n";
  os << "rel_tol = " << fmt(cfg.integrator.rel_tol) << "\n";
  os << "step = " << fmt(cfg.integrator.step) << "\n";
  os << "max_steps = " << cfg.integrator.max_steps << "\n\n";
  os << "[deriv]\n";
  os << "h = " << fmt(cfg.deriv.h) << "\n";
  os << "lie_h = " << fmt(cfg.deriv.lie_h) << "\n\n";
  os << "[lines]\n";
  os << "strain_seeds = " << fmt(cfg.lines.strain_seeds) << "\n";
  os << "stretch_seeds = " << fmt(cfg.lines.stretch_seeds) << "\n";
  os << "step = " << fmt(cfg.lines.step) << "\n";
  os << "max_len = " << fmt(cfg.lines.max_len) << "\n\n";
  os << "[output]\n";
  os << "dir = " << cfg.output.dir << "\n";
  os << "write_csv = " << (cfg.output.write_csv ? "true" : "false") << "\n";
  os << "write_binary = " << (cfg.output.write_binary ? "true" : "false")
     << "\n";
  return os.str();
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override must be key=value, got '" + assignment + "'");
  }
  const std::string path = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  const std::size_t dot = path.find('.');
  const std::string section =
      dot == std::string::npos ? std::string() : path.substr(0, dot);
  const std::string key =
      dot == std::string::npos ? path : path.substr(dot + 1);
  if (key.empty()) {
    throw ConfigError("override has no key: '" + assignment + "'");
  }
  set_key(cfg, section, key, value);
}

void validate_config(const RunConfig& cfg) {
  if (cfg.chart.name != "euclidean" && cfg.chart.name != "sphere") {
    throw ConfigError("chart.name: unknown chart '" + cfg.chart.name + "'");
  }
  if (cfg.chart.name == "sphere") {
    if (!(cfg.chart.radius > 0.0)) {
      throw ConfigError("chart.radius: must be positive");
    }
    if (!(cfg.chart.pole_clamp > 0.0) ||
        !(cfg.chart.pole_clamp < std::asin(1.0))) {
      throw ConfigError("chart.pole_clamp: must lie in (0, pi/2)");
    }
  }
  if (cfg.field.name == "nonlinear_saddle") {
    if (!(cfg.field.L > 0.0) || !(cfg.field.q1 > 0.0) ||
        !(cfg.field.q2 > 0.0)) {
      throw ConfigError("field: L, q1, q2 must be positive");
    }
  } else if (cfg.field.name == "linear_saddle") {
    if (!(cfg.field.lambda > 0.0)) {
      throw ConfigError("field.lambda: must be positive");
    }
  } else if (cfg.field.name == "sphere_rotation") {
    if (!std::isfinite(cfg.field.omega)) {
      throw ConfigError("field.omega: must be finite");
    }
  } else {
    throw ConfigError("field.name: unknown field '" + cfg.field.name + "'");
  }
  if (cfg.grid.nx < 2 || cfg.grid.ny < 2) {
    throw ConfigError("grid: nx and ny must be at least 2");
  }
  if (!(cfg.grid.x0 < cfg.grid.x1) || !(cfg.grid.y0 < cfg.grid.y1)) {
    throw ConfigError("grid: extents must be increasing");
  }
  if (!std::isfinite(cfg.time.t1) || !std::isfinite(cfg.time.T)) {
    throw ConfigError("time: t1 and T must be finite");
  }
  if (cfg.time.T == 0.0) {
    throw ConfigError("time.T: advection span must be nonzero");
  }
  if (!(cfg.integrator.abs_tol > 0.0) || !(cfg.integrator.rel_tol > 0.0)) {
    throw ConfigError("integrator: tolerances must be positive");
  }
  if (cfg.integrator.method == IntegratorMethod::rk4 &&
      !(cfg.integrator.step > 0.0)) {
    throw ConfigError("integrator.step: rk4 needs a positive step");
  }
  if (cfg.integrator.step < 0.0) {
    throw ConfigError("integrator.step: must be nonnegative");
  }
  if (cfg.integrator.max_steps < 1) {
    throw ConfigError("integrator.max_steps: must be at least 1");
  }
  if (!(cfg.deriv.h > 0.0)) {
    throw ConfigError("deriv.h: must be positive");
  }
  if (!(cfg.deriv.lie_h > 0.0)) {
    throw ConfigError("deriv.lie_h: must be positive");
  }
  if (!(cfg.lines.step > 0.0)) {
    throw ConfigError("lines.step: must be positive");
  }
  if (!(cfg.lines.max_len > 0.0)) {
    throw ConfigError("lines.max_len: must be positive");
  }
  if (cfg.output.dir.empty()) {
    throw ConfigError("output.dir: must not be empty");
  }
}

}  // namespace lcskit
