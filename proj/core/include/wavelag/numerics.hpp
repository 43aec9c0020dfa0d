#pragma once

#include <vector>

namespace wavelag {

/// Composite trapezoid rule on uniformly spaced samples.
double trapezoid(const std::vector<double>& v, double h);

/// Second-order first derivative: centered in the interior, one-sided
/// three-point stencils at both ends.
std::vector<double> gradient(const std::vector<double>& v, double h);

}  // namespace wavelag
