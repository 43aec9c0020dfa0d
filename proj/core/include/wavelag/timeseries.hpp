#pragma once

#include <string>
#include <utility>
#include <vector>

namespace wavelag {

/// One row of a simulation trace.
struct FunctionalRecord {
  double t = 0.0;
  double lyap_norm_sq = 0.0;
  double basic_energy = 0.0;
  double invariant_E = 0.0;
  double boundary_velocity = 0.0;  // z(L, t)
  double delayed_velocity = 0.0;   // u(1) = z(L, t - tau)
};

/// Recorded rows plus the resolved run description that reproduces them.
struct TimeSeries {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<FunctionalRecord> rows;
};

}  // namespace wavelag
