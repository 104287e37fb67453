#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "imcf/error.hpp"
#include "imcf/hypersurface.hpp"
#include "numeric_util.hpp"

namespace imcf {

void write_surface(std::ostream& os, const RadialGraph& graph) {
  const auto& p = graph.params();
  os << "# " << p.n << ' ' << detail::format_double(p.m) << ' ' << graph.N() << '\n';
  for (int k = 0; k <= graph.N(); ++k)
    os << detail::format_double(graph.theta(k)) << ' ' << detail::format_double(graph.rho()[k]) << '\n';
}

void write_surface(const std::string& path, const RadialGraph& graph) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::io, "cannot open surface file for writing: " + path);
  write_surface(os, graph);
  if (!os) throw Error(ErrorCode::io, "failed writing surface file: " + path);
}

RadialGraph read_surface(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::io, "surface file is empty");
  std::istringstream header(line);
  std::string hash, n_text, m_text, count_text;
  header >> hash >> n_text >> m_text >> count_text;
  double n_value = 0.0, m = 0.0, count = 0.0;
  if (hash != "#" || !detail::parse_double(n_text, n_value) || !detail::parse_double(m_text, m) ||
      !detail::parse_double(count_text, count))
    throw Error(ErrorCode::io, "surface header must read '# n m N'");
  const int n = static_cast<int>(n_value);
  const int N = static_cast<int>(count);
  if (n != n_value || N != count || N < 1) throw Error(ErrorCode::io, "surface header has non-integer n or N");
  const SpaceParams params = SpaceParams::make(n, m);

  std::vector<double> rho;
  rho.reserve(N + 1);
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string t_text, r_text;
    row >> t_text >> r_text;
    double t = 0.0, r = 0.0;
    if (!detail::parse_double(t_text, t) || !detail::parse_double(r_text, r))
      throw Error(ErrorCode::io, "malformed surface row: " + line);
    const int k = static_cast<int>(rho.size());
    if (k > N) throw Error(ErrorCode::io, "surface file has more than N + 1 rows");
    if (std::abs(t - std::numbers::pi * k / N) > 1e-9)
      throw Error(ErrorCode::io, "surface rows must sample the uniform latitude grid");
    rho.push_back(r);
  }
  if (static_cast<int>(rho.size()) != N + 1) throw Error(ErrorCode::io, "surface file has fewer than N + 1 rows");
  return RadialGraph(params, std::move(rho));
}

RadialGraph read_surface(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::io, "cannot open surface file: " + path);
  return read_surface(is);
}

}  // namespace imcf
