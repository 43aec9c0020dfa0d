#pragma once

#include <string>

#include "wavelag/timeseries.hpp"

namespace wavelag {

/// Writes '#'-prefixed metadata lines, a header row, then one row per record
/// with every value in full double precision (round-trips bit-exactly).
void emit_timeseries(const TimeSeries& series, const std::string& path);

/// Reads a file produced by emit_timeseries back into memory.
TimeSeries parse_timeseries(const std::string& path);

}  // namespace wavelag
