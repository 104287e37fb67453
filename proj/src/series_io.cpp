#include <fstream>

#include "imcf/error.hpp"
#include "imcf/flow_smooth.hpp"
#include "numeric_util.hpp"

namespace imcf {

void write_series_csv(std::ostream& os, const FlowSeries& series) {
  using detail::format_double;
  os << "t,area,int_fH,flux,Q,H_min,H_max,umbilicity\n";
  for (const FlowSample& s : series.samples) {
    os << format_double(s.t) << ',' << format_double(s.area) << ',' << format_double(s.int_fH) << ','
       << format_double(s.flux) << ',' << format_double(s.Q) << ',' << format_double(s.H_min) << ','
       << format_double(s.H_max) << ',' << format_double(s.umbilicity) << '\n';
  }
}

void write_series_csv(const std::string& path, const FlowSeries& series) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::io, "cannot open series file for writing: " + path);
  write_series_csv(os, series);
  if (!os) throw Error(ErrorCode::io, "failed writing series file: " + path);
}

}  // namespace imcf
