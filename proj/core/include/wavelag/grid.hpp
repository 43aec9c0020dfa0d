#pragma once

#include <functional>
#include <vector>

namespace wavelag {

/// Uniform mesh on (0, L) plus the unit interval carrying the delay variable.
/// The left end (x = 0) reflects, the right end (x = L) carries the feedback;
/// boundary integrals in 1D are point evaluations with unit weight.
struct Grid1D {
  double L = 1.0;
  int N = 0;  // spatial cells, nodes 0..N
  int M = 0;  // delay cells, nodes 0..M
  double dx = 0.0;
  double drho = 0.0;

  double x(int i) const { return L * (static_cast<double>(i) / N); }
  double rho(int j) const { return static_cast<double>(j) / M; }
};

/// Requires L > 0, N >= 8, M >= 4.
Grid1D make_grid(double L, int N, int M);

/// Displacement, velocity and delay-line samples at time t.
/// u[j] approximates the boundary velocity at time t - tau*rho_j, so u[0]
/// tracks z at x = L and u[M] is the fully delayed value.
struct State {
  std::vector<double> y;
  std::vector<double> z;
  std::vector<double> u;
  double t = 0.0;
};

using SpaceFn = std::function<double(double)>;
using HistoryFn = std::function<double(double)>;

/// Samples y0, z0 on the nodes and the history f along the characteristic
/// identification s = -tau*rho; u[0] is taken from z0(L), not from f.
/// When mismatch is non-null it receives |f(0) - z0(L)|, the junction gap a
/// caller may want to warn about (the state is built either way).
/// Throws on non-finite samples.
State init_state(const Grid1D& g, const SpaceFn& y0, const SpaceFn& z0,
                 const HistoryFn& f, double tau, double* mismatch = nullptr);

}  // namespace wavelag
