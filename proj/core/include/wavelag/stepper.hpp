#pragma once

#include <functional>
#include <string>

#include "wavelag/grid.hpp"
#include "wavelag/params.hpp"
#include "wavelag/timeseries.hpp"

namespace wavelag {

struct InitialData {
  SpaceFn y0;
  SpaceFn z0;
  HistoryFn f;
  std::string y0_name = "zero";
  std::string z0_name = "zero";
  std::string f_name = "zero";
};

/// Full run description. The time step is locked to tau/M (exact delay-line
/// transport); M is raised until the CFL bound dt <= cfl*dx holds.
struct Scenario {
  SystemParams params;
  int N = 200;
  int M_min = 4;
  double cfl = 0.9;
  InitialData initial;
  double T_final = 1.0;
  int record_every = 1;
};

struct Discretization {
  Grid1D grid;
  double dt = 0.0;
  int steps = 0;  // levels 0..steps span [0, T_final]
};

Discretization resolve(const Scenario& s);

/// Verification hooks. interior(x,t) adds a forcing term to the wave update,
/// boundary(t) shifts the feedback flux at x = L; both stay unset in physics
/// runs. delayed_override(t) replaces the shift-line tap as the source of the
/// delayed boundary velocity (used for the history-buffer cross-check).
struct SourceHooks {
  std::function<double(double, double)> interior;
  std::function<double(double)> boundary;
  std::function<double(double)> delayed_override;
};

/// Explicit second-order integrator for the closed-loop system. Interior
/// nodes advance by leapfrog; the free end uses a reflecting ghost value and
/// the feedback end eliminates its ghost through the flux law
///   y_x(L) = -alpha*z(L) - beta*u(1),
/// with z(L) taken centered in time, which leaves one scalar implicit
/// equation per step, solved in closed form.
///
/// advance() completes one level and returns the snapshot of the level just
/// left behind: its velocity field is fully centered, so snapshots lag the
/// internal integration by one step.
class Stepper {
 public:
  /// initial must match the grid; dt must equal tau/M and satisfy dt <= cfl*dx
  /// (checked; throws std::invalid_argument otherwise).
  Stepper(const SystemParams& p, const Grid1D& g, const State& initial, double dt,
          double cfl = 1.0, SourceHooks hooks = {});

  const State& advance();
  const State& snapshot() const { return snap_; }

  double dt() const { return dt_; }
  /// Completed snapshot level (-1 before the first advance()).
  int level() const { return level_; }
  /// Centered boundary velocity of the current snapshot level.
  double last_boundary_velocity() const { return w_; }
  /// Delayed value consumed by the latest advance().
  double last_delayed_value() const { return last_delayed_; }

 private:
  SystemParams p_;
  Grid1D g_;
  SourceHooks hooks_;
  double dt_ = 0.0;
  double r_ = 0.0;  // dt/dx
  int level_ = -1;

  std::vector<double> yp_, yc_, yn_;  // previous / current / scratch levels
  std::vector<double> line_;          // delay register, head provisional
  State snap_;
  double w_ = 0.0;
  double last_delayed_ = 0.0;
  double startup_lapN_ = 0.0;  // feedback-node operator of the first step

  void check_finite(int step) const;
};

struct RunResult {
  TimeSeries series;
  State final_state;
  double dt = 0.0;
  int steps = 0;
};

/// Integrates to T_final, recording functionals every record_every levels
/// (level 0 always included). Throws std::runtime_error with the failing time
/// when the solution blows up.
RunResult run(const Scenario& s, SourceHooks hooks = {});

}  // namespace wavelag
