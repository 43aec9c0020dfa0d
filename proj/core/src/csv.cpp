#include "wavelag/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wavelag {

namespace {
constexpr const char* kHeader =
    "t,lyap_norm_sq,basic_energy,invariant_E,boundary_velocity,delayed_velocity";
}

void emit_timeseries(const TimeSeries& series, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("emit_timeseries: cannot open '" + path + "' for writing");
  for (const auto& [k, v] : series.metadata) {
    std::fprintf(f, "# %s = %s\n", k.c_str(), v.c_str());
  }
  std::fprintf(f, "%s\n", kHeader);
  for (const auto& r : series.rows) {
    std::fprintf(f, "%.16e,%.16e,%.16e,%.16e,%.16e,%.16e\n", r.t, r.lyap_norm_sq,
                 r.basic_energy, r.invariant_E, r.boundary_velocity, r.delayed_velocity);
  }
  if (std::fclose(f) != 0) throw std::runtime_error("emit_timeseries: write failure on '" + path + "'");
}

TimeSeries parse_timeseries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_timeseries: cannot open '" + path + "'");
  TimeSeries s;
  std::string line;
  bool header_seen = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        auto trim = [](std::string t) {
          const auto b = t.find_first_not_of(" \t");
          const auto e = t.find_last_not_of(" \t\r");
          return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
        };
        s.metadata.emplace_back(trim(line.substr(1, eq - 1)), trim(line.substr(eq + 1)));
      }
      continue;
    }
    if (!header_seen) {
      if (line.rfind("t,", 0) != 0) {
        throw std::runtime_error("parse_timeseries: missing header at line " +
                                 std::to_string(lineno));
      }
      header_seen = true;
      continue;
    }
    FunctionalRecord r;
    double* fields[6] = {&r.t, &r.lyap_norm_sq, &r.basic_energy,
                         &r.invariant_E, &r.boundary_velocity, &r.delayed_velocity};
    const char* p = line.c_str();
    for (int k = 0; k < 6; ++k) {
      char* end = nullptr;
      *fields[k] = std::strtod(p, &end);
      if (end == p) {
        throw std::runtime_error("parse_timeseries: bad row at line " + std::to_string(lineno));
      }
      p = end;
      if (k < 5) {
        if (*p != ',') {
          throw std::runtime_error("parse_timeseries: expected ',' at line " +
                                   std::to_string(lineno));
        }
        ++p;
      }
    }
    s.rows.push_back(r);
  }
  if (!header_seen) throw std::runtime_error("parse_timeseries: no header found");
  return s;
}

}  // namespace wavelag
