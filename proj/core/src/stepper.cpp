#include "wavelag/stepper.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wavelag/delay_line.hpp"
#include "wavelag/functionals.hpp"

namespace wavelag {

namespace {
constexpr double kBlowUpThreshold = 1e12;
}

Discretization resolve(const Scenario& s) {
  Discretization d;
  const double tau = s.params.tau;
  if (!(s.cfl > 0.0 && s.cfl <= 1.0)) {
    throw std::invalid_argument("resolve: cfl must lie in (0,1]");
  }
  if (!(s.T_final >= 0.0)) throw std::invalid_argument("resolve: T_final must be >= 0");
  if (s.record_every < 1) throw std::invalid_argument("resolve: record_every must be >= 1");

  const double dx = s.params.L / s.N;
  // smallest M with tau/M <= cfl*dx, never below M_min (or the mesh minimum)
  const int lock = static_cast<int>(std::ceil(tau / (s.cfl * dx) - 1e-12));
  const int M = std::max({s.M_min, lock, 4});
  d.grid = make_grid(s.params.L, s.N, M);
  d.dt = tau / M;
  d.steps = s.T_final > 0.0 ? static_cast<int>(std::ceil(s.T_final / d.dt - 1e-9)) : 0;
  return d;
}

Stepper::Stepper(const SystemParams& p, const Grid1D& g, const State& initial, double dt,
                 double cfl, SourceHooks hooks)
    : p_(p), g_(g), hooks_(std::move(hooks)), dt_(dt) {
  if (static_cast<int>(initial.y.size()) != g.N + 1 ||
      static_cast<int>(initial.z.size()) != g.N + 1 ||
      static_cast<int>(initial.u.size()) != g.M + 1) {
    throw std::invalid_argument("Stepper: initial state does not match grid");
  }
  if (std::abs(dt * g.M - p.tau) > 1e-12 * p.tau) {
    throw std::invalid_argument("Stepper: dt must equal tau/M (characteristic lock)");
  }
  r_ = dt_ / g.dx;
  if (r_ > cfl * (1.0 + 1e-9)) {
    std::ostringstream os;
    os << "Stepper: CFL violation, dt/dx = " << r_ << " exceeds cfl = " << cfl;
    throw std::invalid_argument(os.str());
  }

  yc_ = initial.y;
  line_ = initial.u;
  yn_.assign(g.N + 1, 0.0);
  snap_ = initial;

  // Virtual pre-initial level: y(-dt) = y0 - dt*z0 + dt^2/2 * (lap y0 + S),
  // with the boundary closures folded into the Laplacian. Every later step is
  // then plain leapfrog, and the centered velocity at level 0 reproduces z0
  // exactly.
  const std::vector<double>& y0 = initial.y;
  const std::vector<double>& z0 = initial.z;
  const double dxx = g.dx * g.dx;
  const int N = g.N;
  yp_.assign(N + 1, 0.0);
  auto src = [&](int i) { return hooks_.interior ? hooks_.interior(g_.x(i), 0.0) : 0.0; };
  {
    double lap = 2.0 * (y0[1] - y0[0]) / dxx;
    yp_[0] = y0[0] - dt_ * z0[0] + 0.5 * dt_ * dt_ * (lap + src(0));
  }
  for (int i = 1; i < N; ++i) {
    const double lap = ((y0[i + 1] - y0[i]) - (y0[i] - y0[i - 1])) / dxx;
    yp_[i] = y0[i] - dt_ * z0[i] + 0.5 * dt_ * dt_ * (lap + src(i));
  }
  {
    // Startup boundary velocity: the data value when y0/z0/f satisfy the
    // feedback flux law, otherwise the value the incoming characteristic
    // selects once the law switches on. Using it in the startup flux keeps
    // the conserved linear functional of the discrete flow at its data value
    // instead of displacing it by O(dt) on incompatible data.
    const double g1 = hooks_.boundary ? hooks_.boundary(0.0) : 0.0;
    const double delayed0 = initial.u[g.M];
    const double grad0 = (y0[N] - y0[N - 1]) / g.dx;
    const double s_ab = (p_.alpha + p_.beta) * r_;
    const double theta = (p_.alpha * z0[N] + s_ab * (-grad0 - p_.beta * delayed0 + g1)) /
                         (p_.alpha * (1.0 + s_ab));
    const double flux = -p_.alpha * theta - p_.beta * delayed0 + g1;
    startup_lapN_ = (2.0 * (y0[N - 1] - y0[N]) + 2.0 * g.dx * flux) / dxx + src(N);
    yp_[N] = y0[N] - dt_ * z0[N] + 0.5 * dt_ * dt_ * startup_lapN_;
  }
}

const State& Stepper::advance() {
  const int N = g_.N;
  const int n = level_ + 1;        // level being completed
  const double t_n = n * dt_;      // time of that level
  const double r2 = r_ * r_;
  const double dt2 = dt_ * dt_;

  const double delayed =
      hooks_.delayed_override ? hooks_.delayed_override(t_n) : delayed_value(line_);
  last_delayed_ = delayed;

  // interior + free end (increment form: constants are exact fixed points)
  {
    const double s = hooks_.interior ? hooks_.interior(0.0, t_n) : 0.0;
    yn_[0] = yc_[0] + (yc_[0] - yp_[0]) + 2.0 * r2 * (yc_[1] - yc_[0]) + dt2 * s;
  }
  for (int i = 1; i < N; ++i) {
    const double s = hooks_.interior ? hooks_.interior(g_.x(i), t_n) : 0.0;
    yn_[i] = yc_[i] + (yc_[i] - yp_[i]) +
             r2 * ((yc_[i + 1] - yc_[i]) - (yc_[i] - yc_[i - 1])) + dt2 * s;
  }
  // feedback end: ghost eliminated through the flux law with centered z(L),
  // leaving (1 + alpha*r) * (y_N^{n+1} - y_N^n) = known terms. The first step
  // instead applies the startup flux explicitly, pairing with the virtual
  // level so the centered velocity at level 0 is exactly z0.
  if (n == 0) {
    yn_[N] = yc_[N] + (yc_[N] - yp_[N]) + dt2 * startup_lapN_;
  } else {
    const double s = hooks_.interior ? hooks_.interior(g_.L, t_n) : 0.0;
    const double g1 = hooks_.boundary ? hooks_.boundary(t_n) : 0.0;
    const double ar = p_.alpha * r_;
    const double num = (1.0 - ar) * (yc_[N] - yp_[N]) + 2.0 * r2 * (yc_[N - 1] - yc_[N]) +
                       2.0 * r2 * g_.dx * (g1 - p_.beta * delayed) + dt2 * s;
    yn_[N] = yc_[N] + num / (1.0 + ar);
  }

  // snapshot of level n: centered velocity, line head upgraded to the same
  // centered value the closure used
  w_ = (yn_[N] - yp_[N]) / (2.0 * dt_);
  snap_.t = t_n;
  snap_.y = yc_;
  for (int i = 0; i <= N; ++i) snap_.z[i] = (yn_[i] - yp_[i]) / (2.0 * dt_);
  snap_.u = line_;
  snap_.u[0] = w_;

  // advance the register to level n+1: the corrected head shifts inward and a
  // provisional (one-sided) estimate of z(L, t_{n+1}) takes its place until
  // the next step can center it
  line_[0] = w_;
  const double provisional = (3.0 * yn_[N] - 4.0 * yc_[N] + yp_[N]) / (2.0 * dt_);
  advance_delay(line_, provisional);

  std::swap(yp_, yc_);
  std::swap(yc_, yn_);
  ++level_;
  check_finite(n + 1);
  return snap_;
}

void Stepper::check_finite(int step) const {
  for (double v : yc_) {
    if (!(std::abs(v) <= kBlowUpThreshold)) {
      std::ostringstream os;
      os << "blow-up detected at step " << step << " (t = " << step * dt_ << ")";
      throw std::runtime_error(os.str());
    }
  }
}

RunResult run(const Scenario& s, SourceHooks hooks) {
  const Discretization d = resolve(s);
  const State initial =
      init_state(d.grid, s.initial.y0, s.initial.z0, s.initial.f, s.params.tau);

  RunResult out;
  out.dt = d.dt;
  out.steps = d.steps;

  Stepper stepper(s.params, d.grid, initial, d.dt, s.cfl, std::move(hooks));
  try {
    for (int level = 0; level <= d.steps; ++level) {
      const State& snap = stepper.advance();
      if (level % s.record_every == 0) {
        out.series.rows.push_back(evaluate_record(snap, s.params, d.grid));
      }
      if (level == d.steps) out.final_state = snap;
    }
  } catch (const std::runtime_error& e) {
    std::ostringstream os;
    os << e.what() << " [T_final = " << s.T_final << ", dt = " << d.dt << "]";
    throw std::runtime_error(os.str());
  }
  return out;
}

}  // namespace wavelag
