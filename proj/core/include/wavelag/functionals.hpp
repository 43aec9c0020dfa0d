#pragma once

#include <cstdint>

#include "wavelag/grid.hpp"
#include "wavelag/params.hpp"
#include "wavelag/timeseries.hpp"

namespace wavelag {

/// Weighted energy norm squared:
///   int (y_x^2 + z^2) dx + xi * int u^2 drho
///     + varpi * [ int z dx + (alpha+beta) y(L) - beta*tau * int u drho ]^2
/// Trapezoid quadrature; y_x by second-order differences.
double lyapunov_norm_sq(const State& s, const SystemParams& p, const Grid1D& g);

/// Unweighted part: int (y_x^2 + z^2) dx + xi * int u^2 drho.
double basic_energy(const State& s, const SystemParams& p, const Grid1D& g);

/// Conserved linear functional:
///   int z dx + (alpha+beta) y(L) - beta*tau * int u drho.
double invariant_E(const State& s, const SystemParams& p, const Grid1D& g);

/// Limit constant of the flow, evaluated from the raw initial data:
///   chi = [ int z0 dx + (alpha+beta) y0(L) - beta*tau * int f(-tau*rho) drho ]
///         / (alpha+beta).
/// The f integral samples f itself (including rho = 0), so for compatible data
/// (f(0) = z0(L)) this equals invariant_E(init_state(...)) / (alpha+beta).
double equilibrium_chi(const SpaceFn& y0, const SpaceFn& z0, const HistoryFn& f,
                       const SystemParams& p, const Grid1D& g);

/// Product norm squared without weights: int (y^2 + y_x^2 + z^2) dx + int u^2 drho.
double standard_norm_sq(const State& s, const Grid1D& g);

FunctionalRecord evaluate_record(const State& s, const SystemParams& p, const Grid1D& g);

struct RatioBounds {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

/// Extremal values of lyapunov_norm_sq / standard_norm_sq over n_samples
/// random states with entries i.i.d. uniform in [-1,1]. Deterministic for a
/// fixed seed; degenerate (zero-norm) draws are resampled.
RatioBounds norm_equivalence_check(const SystemParams& p, const Grid1D& g,
                                   int n_samples, std::uint64_t seed);

}  // namespace wavelag
