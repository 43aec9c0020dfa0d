#pragma once

#include <string>

#include "wavelag/grid.hpp"

namespace wavelag {

/// Named initial-data presets, written as "name" or "name(arg1,arg2,...)".
/// Space presets: zero | constant(c) | gaussian(center,width,amplitude) | sine(k).
/// sine(k) is sin(k*pi*x/L).
SpaceFn make_space_preset(const std::string& spec, double L);

/// History presets on s in [-tau, 0]: zero | constant(c) | ramp(slope).
HistoryFn make_history_preset(const std::string& spec);

}  // namespace wavelag
