#include "wavelag/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wavelag {

Grid1D make_grid(double L, int N, int M) {
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("make_grid: L must be > 0");
  if (N < 8) throw std::invalid_argument("make_grid: N must be >= 8, got " + std::to_string(N));
  if (M < 4) throw std::invalid_argument("make_grid: M must be >= 4, got " + std::to_string(M));
  Grid1D g;
  g.L = L;
  g.N = N;
  g.M = M;
  g.dx = L / N;
  g.drho = 1.0 / M;
  return g;
}

State init_state(const Grid1D& g, const SpaceFn& y0, const SpaceFn& z0,
                 const HistoryFn& f, double tau, double* mismatch) {
  if (!(tau > 0.0)) throw std::invalid_argument("init_state: tau must be > 0");
  State s;
  s.t = 0.0;
  s.y.resize(g.N + 1);
  s.z.resize(g.N + 1);
  s.u.resize(g.M + 1);
  for (int i = 0; i <= g.N; ++i) {
    s.y[i] = y0(g.x(i));
    s.z[i] = z0(g.x(i));
  }
  s.u[0] = s.z[g.N];
  for (int j = 1; j <= g.M; ++j) s.u[j] = f(-tau * g.rho(j));

  for (double v : s.y)
    if (!std::isfinite(v)) throw std::invalid_argument("init_state: non-finite y0 sample");
  for (double v : s.z)
    if (!std::isfinite(v)) throw std::invalid_argument("init_state: non-finite z0 sample");
  for (double v : s.u)
    if (!std::isfinite(v)) throw std::invalid_argument("init_state: non-finite history sample");

  if (mismatch) *mismatch = std::abs(f(0.0) - s.z[g.N]);
  return s;
}

}  // namespace wavelag
