#include "imcf/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "imcf/error.hpp"
#include "numeric_util.hpp"

namespace imcf {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void fail(int line, const std::string& message) {
  std::ostringstream os;
  if (line > 0) os << "config line " << line << ": ";
  os << message;
  throw Error(ErrorCode::config, os.str());
}

double number(const std::string& key, const std::string& value, int line) {
  double out = 0.0;
  if (!detail::parse_double(value, out) || !std::isfinite(out))
    fail(line, "value of '" + key + "' is not a number: '" + value + "'");
  return out;
}

int integer(const std::string& key, const std::string& value, int line) {
  const double x = number(key, value, line);
  if (x != std::floor(x) || std::abs(x) > 1e9) fail(line, "value of '" + key + "' is not an integer: '" + value + "'");
  return static_cast<int>(x);
}

std::vector<double> number_list(const std::string& key, const std::string& value, int line) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(number(key, trim(item), line));
  if (out.empty()) fail(line, "value of '" + key + "' is an empty list");
  return out;
}

bool boolean(const std::string& key, const std::string& value, int line) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  fail(line, "value of '" + key + "' is not a boolean: '" + value + "'");
}

SurfaceKind surface_kind(const std::string& value, int line) {
  if (value == "slice") return SurfaceKind::slice;
  if (value == "sphere") return SurfaceKind::sphere;
  if (value == "offset_sphere") return SurfaceKind::offset_sphere;
  if (value == "ellipsoid") return SurfaceKind::ellipsoid;
  if (value == "file") return SurfaceKind::file;
  if (value == "torus")
    fail(line, "surface 'torus' is not star-shaped and cannot be represented as a radial graph");
  fail(line, "unknown surface kind '" + value + "' (expected slice, sphere, offset_sphere, ellipsoid or file)");
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ',';
    out += detail::format_double(values[k]);
  }
  return out;
}

void require_positive(double value, const char* key) {
  if (!(value > 0.0)) fail(0, std::string("'") + key + "' must be positive");
}

}  // namespace

std::string to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::slice: return "slice";
    case SurfaceKind::sphere: return "sphere";
    case SurfaceKind::offset_sphere: return "offset_sphere";
    case SurfaceKind::ellipsoid: return "ellipsoid";
    case SurfaceKind::file: return "file";
  }
  return "unknown";
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  bool has_n = false, has_m = false;
  int n = 0;
  double m = 0.0;

  using Setter = std::function<void(const std::string&, const std::string&, int)>;
  const std::map<std::string, Setter> setters{
      {"n", [&](auto& k, auto& v, int l) { n = integer(k, v, l); has_n = true; }},
      {"m", [&](auto& k, auto& v, int l) { m = number(k, v, l); has_m = true; }},
      {"surface", [&](auto&, auto& v, int l) { c.surface.kind = surface_kind(v, l); }},
      {"s", [&](auto& k, auto& v, int l) { c.surface.s = number(k, v, l); }},
      {"r", [&](auto& k, auto& v, int l) { c.surface.r = number(k, v, l); }},
      {"d", [&](auto& k, auto& v, int l) { c.surface.d = number(k, v, l); }},
      {"R", [&](auto& k, auto& v, int l) { c.surface.R = number(k, v, l); }},
      {"a", [&](auto& k, auto& v, int l) { c.surface.a = number(k, v, l); }},
      {"c", [&](auto& k, auto& v, int l) { c.surface.c = number(k, v, l); }},
      {"file", [&](auto&, auto& v, int) { c.surface.file = v; }},
      {"N", [&](auto& k, auto& v, int l) { c.N = integer(k, v, l); }},
      {"t_end", [&](auto& k, auto& v, int l) { c.t_end = number(k, v, l); }},
      {"sample_every", [&](auto& k, auto& v, int l) { c.sample_every = number(k, v, l); }},
      {"dt_max", [&](auto& k, auto& v, int l) { c.dt_max = number(k, v, l); }},
      {"eps_schedule", [&](auto& k, auto& v, int l) { c.eps_schedule = number_list(k, v, l); }},
      {"S_out_factor", [&](auto& k, auto& v, int l) { c.S_out_factor = number(k, v, l); }},
      {"ls_radial_cells", [&](auto& k, auto& v, int l) { c.ls_radial_cells = integer(k, v, l); }},
      {"ls_angular_cells", [&](auto& k, auto& v, int l) { c.ls_angular_cells = integer(k, v, l); }},
      {"ls_levels", [&](auto& k, auto& v, int l) { c.ls_levels = number_list(k, v, l); }},
      {"weak_monotonicity", [&](auto& k, auto& v, int l) { c.weak_monotonicity = boolean(k, v, l); }},
      {"tol_statics", [&](auto& k, auto& v, int l) { c.tol.statics = number(k, v, l); }},
      {"tol_equality", [&](auto& k, auto& v, int l) { c.tol.equality = number(k, v, l); }},
      {"tol_inequality", [&](auto& k, auto& v, int l) { c.tol.inequality = number(k, v, l); }},
      {"tol_monotone", [&](auto& k, auto& v, int l) { c.tol.monotone = number(k, v, l); }},
      {"tol_monotone_weak", [&](auto& k, auto& v, int l) { c.tol.monotone_weak = number(k, v, l); }},
      {"tol_limit", [&](auto& k, auto& v, int l) { c.tol.limit = number(k, v, l); }},
      {"tol_area", [&](auto& k, auto& v, int l) { c.tol.area_law = number(k, v, l); }},
      {"tol_weak_area", [&](auto& k, auto& v, int l) { c.tol.weak_area = number(k, v, l); }},
      {"tol_flux", [&](auto& k, auto& v, int l) { c.tol.flux = number(k, v, l); }},
  };

  std::istringstream is{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(line, "expected key=value, got '" + body + "'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) fail(line, "unknown key '" + key + "'");
    if (value.empty()) fail(line, "key '" + key + "' has an empty value");
    it->second(key, value, line);
  }

  if (!has_n) fail(0, "missing required key 'n'");
  if (!has_m) fail(0, "missing required key 'm'");
  if (n < 3) fail(0, "dimension n must be at least 3");
  if (!(m > 0.0)) fail(0, "mass m must be positive");
  c.params = SpaceParams::make(n, m);

  if (c.N < RadialGraph::kMinNodes) fail(0, "'N' must be at least 16");
  if (!(c.t_end >= 0.0)) fail(0, "'t_end' must be non-negative");
  require_positive(c.sample_every, "sample_every");
  require_positive(c.dt_max, "dt_max");
  require_positive(c.S_out_factor, "S_out_factor");
  if (!(c.S_out_factor > 1.0)) fail(0, "'S_out_factor' must exceed 1");
  if (c.ls_radial_cells < 4) fail(0, "'ls_radial_cells' must be at least 4");
  if (c.ls_angular_cells < RadialGraph::kMinNodes) fail(0, "'ls_angular_cells' must be at least 16");
  for (std::size_t k = 0; k < c.eps_schedule.size(); ++k)
    if (!(c.eps_schedule[k] > 0.0) || (k && !(c.eps_schedule[k] < c.eps_schedule[k - 1])))
      fail(0, "'eps_schedule' must be positive and strictly decreasing");
  for (std::size_t k = 0; k < c.ls_levels.size(); ++k)
    if (!(c.ls_levels[k] > 0.0) || (k && !(c.ls_levels[k] > c.ls_levels[k - 1])))
      fail(0, "'ls_levels' must be positive and strictly increasing");
  const Tolerances& t = c.tol;
  for (double v : {t.statics, t.equality, t.inequality, t.monotone, t.monotone_weak, t.limit, t.area_law, t.weak_area, t.flux})
    if (!(v > 0.0)) fail(0, "tolerances must be positive");

  const SurfaceSpec& s = c.surface;
  switch (s.kind) {
    case SurfaceKind::slice:
      if (!(s.s > c.params.horizon_polar() * (1.0 + kHorizonMargin)))
        fail(0, "slice radius 's' must lie outside the horizon");
      break;
    case SurfaceKind::sphere:
      if (!(s.r > c.params.horizon_isotropic())) fail(0, "sphere radius 'r' must lie outside the horizon");
      break;
    case SurfaceKind::offset_sphere:
      if (!(s.R > std::abs(s.d))) fail(0, "offset sphere must enclose the origin (|d| < R)");
      break;
    case SurfaceKind::ellipsoid:
      require_positive(s.a, "a");
      require_positive(s.c, "c");
      break;
    case SurfaceKind::file:
      if (s.file.empty()) fail(0, "surface=file needs a 'file' key");
      break;
  }
  return c;
}

ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::io, "cannot open config file: " + path);
  std::ostringstream text;
  text << is.rdbuf();
  text << '\n';
  for (const std::string& o : overrides) {
    if (o.find('=') == std::string::npos) throw Error(ErrorCode::config, "override must read key=value: " + o);
    text << o << '\n';
  }
  return parse_config(text.str());
}

std::string config_to_text(const ExperimentConfig& c) {
  using detail::format_double;
  std::ostringstream os;
  os << "n=" << c.params.n << '\n' << "m=" << format_double(c.params.m) << '\n';
  os << "surface=" << to_string(c.surface.kind) << '\n';
  const SurfaceSpec& s = c.surface;
  switch (s.kind) {
    case SurfaceKind::slice: os << "s=" << format_double(s.s) << '\n'; break;
    case SurfaceKind::sphere: os << "r=" << format_double(s.r) << '\n'; break;
    case SurfaceKind::offset_sphere: os << "d=" << format_double(s.d) << "\nR=" << format_double(s.R) << '\n'; break;
    case SurfaceKind::ellipsoid: os << "a=" << format_double(s.a) << "\nc=" << format_double(s.c) << '\n'; break;
    case SurfaceKind::file: os << "file=" << s.file << '\n'; break;
  }
  os << "N=" << c.N << '\n'
     << "t_end=" << format_double(c.t_end) << '\n'
     << "sample_every=" << format_double(c.sample_every) << '\n'
     << "dt_max=" << format_double(c.dt_max) << '\n'
     << "eps_schedule=" << join(c.eps_schedule) << '\n'
     << "S_out_factor=" << format_double(c.S_out_factor) << '\n'
     << "ls_radial_cells=" << c.ls_radial_cells << '\n'
     << "ls_angular_cells=" << c.ls_angular_cells << '\n'
     << "ls_levels=" << join(c.ls_levels) << '\n'
     << "weak_monotonicity=" << (c.weak_monotonicity ? "true" : "false") << '\n'
     << "tol_statics=" << format_double(c.tol.statics) << '\n'
     << "tol_equality=" << format_double(c.tol.equality) << '\n'
     << "tol_inequality=" << format_double(c.tol.inequality) << '\n'
     << "tol_monotone=" << format_double(c.tol.monotone) << '\n'
     << "tol_monotone_weak=" << format_double(c.tol.monotone_weak) << '\n'
     << "tol_limit=" << format_double(c.tol.limit) << '\n'
     << "tol_area=" << format_double(c.tol.area_law) << '\n'
     << "tol_weak_area=" << format_double(c.tol.weak_area) << '\n'
     << "tol_flux=" << format_double(c.tol.flux) << '\n';
  return os.str();
}

RadialGraph build_surface(const ExperimentConfig& c, int N) {
  const SurfaceSpec& s = c.surface;
  switch (s.kind) {
    case SurfaceKind::slice: return surfaces::slice(c.params, s.s, N);
    case SurfaceKind::sphere: return surfaces::centered_sphere(c.params, s.r, N);
    case SurfaceKind::offset_sphere: return surfaces::offset_sphere(c.params, s.d, s.R, N);
    case SurfaceKind::ellipsoid: return surfaces::spheroid(c.params, s.a, s.c, N);
    case SurfaceKind::file: {
      RadialGraph g = read_surface(s.file);
      if (g.params().n != c.params.n || g.params().m != c.params.m)
        throw Error(ErrorCode::config, "surface file '" + s.file + "' was written for different n or m");
      return g;
    }
  }
  throw Error(ErrorCode::config, "unsupported surface kind");
}

bool is_round(const SurfaceSpec& surface) {
  return surface.kind == SurfaceKind::slice || surface.kind == SurfaceKind::sphere ||
         (surface.kind == SurfaceKind::offset_sphere && surface.d == 0.0) ||
         (surface.kind == SurfaceKind::ellipsoid && surface.a == surface.c);
}

}  // namespace imcf
