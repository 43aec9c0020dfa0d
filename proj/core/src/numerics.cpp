#include "wavelag/numerics.hpp"

#include <cstddef>
#include <stdexcept>

namespace wavelag {

double trapezoid(const std::vector<double>& v, double h) {
  if (v.size() < 2) throw std::invalid_argument("trapezoid needs at least 2 samples");
  double s = 0.5 * (v.front() + v.back());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
  return s * h;
}

std::vector<double> gradient(const std::vector<double>& v, double h) {
  const std::size_t n = v.size();
  if (n < 3) throw std::invalid_argument("gradient needs at least 3 samples");
  std::vector<double> g(n);
  g[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) g[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  g[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  return g;
}

}  // namespace wavelag
