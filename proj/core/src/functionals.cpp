#include "wavelag/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "wavelag/numerics.hpp"

namespace wavelag {

namespace {

void check_sizes(const State& s, const Grid1D& g) {
  if (static_cast<int>(s.y.size()) != g.N + 1 || static_cast<int>(s.z.size()) != g.N + 1 ||
      static_cast<int>(s.u.size()) != g.M + 1) {
    throw std::invalid_argument("state does not match grid sizes");
  }
}

std::vector<double> squared(const std::vector<double>& v) {
  std::vector<double> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] * v[i];
  return w;
}

}  // namespace

double basic_energy(const State& s, const SystemParams& p, const Grid1D& g) {
  check_sizes(s, g);
  const std::vector<double> yx = gradient(s.y, g.dx);
  return trapezoid(squared(yx), g.dx) + trapezoid(squared(s.z), g.dx) +
         p.xi * trapezoid(squared(s.u), g.drho);
}

double invariant_E(const State& s, const SystemParams& p, const Grid1D& g) {
  check_sizes(s, g);
  return trapezoid(s.z, g.dx) + (p.alpha + p.beta) * s.y[g.N] -
         p.beta * p.tau * trapezoid(s.u, g.drho);
}

double lyapunov_norm_sq(const State& s, const SystemParams& p, const Grid1D& g) {
  const double ell = invariant_E(s, p, g);
  return basic_energy(s, p, g) + p.varpi * ell * ell;
}

double equilibrium_chi(const SpaceFn& y0, const SpaceFn& z0, const HistoryFn& f,
                       const SystemParams& p, const Grid1D& g) {
  std::vector<double> z(g.N + 1), fs(g.M + 1);
  for (int i = 0; i <= g.N; ++i) z[i] = z0(g.x(i));
  for (int j = 0; j <= g.M; ++j) fs[j] = f(-p.tau * g.rho(j));
  const double e0 = trapezoid(z, g.dx) + (p.alpha + p.beta) * y0(g.L) -
                    p.beta * p.tau * trapezoid(fs, g.drho);
  return e0 / (p.alpha + p.beta);
}

double standard_norm_sq(const State& s, const Grid1D& g) {
  check_sizes(s, g);
  const std::vector<double> yx = gradient(s.y, g.dx);
  return trapezoid(squared(s.y), g.dx) + trapezoid(squared(yx), g.dx) +
         trapezoid(squared(s.z), g.dx) + trapezoid(squared(s.u), g.drho);
}

FunctionalRecord evaluate_record(const State& s, const SystemParams& p, const Grid1D& g) {
  FunctionalRecord r;
  r.t = s.t;
  r.lyap_norm_sq = lyapunov_norm_sq(s, p, g);
  r.basic_energy = basic_energy(s, p, g);
  r.invariant_E = invariant_E(s, p, g);
  r.boundary_velocity = s.z[g.N];
  r.delayed_velocity = s.u[g.M];
  return r;
}

RatioBounds norm_equivalence_check(const SystemParams& p, const Grid1D& g,
                                   int n_samples, std::uint64_t seed) {
  if (n_samples < 100) {
    throw std::invalid_argument("norm_equivalence_check: n_samples must be >= 100");
  }
  std::mt19937_64 rng(seed);
  // explicit mapping to [-1,1] so the stream is identical across platforms
  auto uniform = [&rng]() {
    const double v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2.0 * v - 1.0;
  };

  State s;
  s.y.resize(g.N + 1);
  s.z.resize(g.N + 1);
  s.u.resize(g.M + 1);

  RatioBounds b{std::numeric_limits<double>::infinity(), 0.0};
  int accepted = 0;
  while (accepted < n_samples) {
    for (auto& v : s.y) v = uniform();
    for (auto& v : s.z) v = uniform();
    for (auto& v : s.u) v = uniform();
    const double denom = standard_norm_sq(s, g);
    if (!(denom > 0.0)) continue;  // degenerate draw: resample
    const double ratio = lyapunov_norm_sq(s, p, g) / denom;
    if (!std::isfinite(ratio)) throw std::runtime_error("norm_equivalence_check: non-finite ratio");
    b.min_ratio = std::min(b.min_ratio, ratio);
    b.max_ratio = std::max(b.max_ratio, ratio);
    ++accepted;
  }
  return b;
}

}  // namespace wavelag
