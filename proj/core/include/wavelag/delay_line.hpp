#pragma once

#include <cstddef>
#include <deque>
#include <utility>
#include <vector>

namespace wavelag {

/// One characteristic step of the transport line: u[j] <- u[j-1], u[0] <- inflow.
/// Valid only under the lock dt = tau/M, where the shift is the exact solution
/// of tau*u_t + u_rho = 0 (the stepper enforces the lock).
void advance_delay(std::vector<double>& u, double inflow);

/// Last cell of the line: the fully delayed boundary velocity.
double delayed_value(const std::vector<double>& u);

/// Independent delayed-feedback oracle: a time-stamped record of boundary
/// velocities answering lookups by linear interpolation.
class HistoryBuffer {
 public:
  /// t must strictly exceed the newest stored time.
  void push(double t, double value);

  /// Linear interpolation between the bracketing samples.
  /// Throws std::out_of_range when t_query is outside the recorded span.
  double lookup(double t_query) const;

  /// Drops samples older than t_min, keeping one sample at or before it so
  /// lookups at t_min still bracket.
  void drop_before(double t_min);

  bool covers(double t_query) const;
  std::size_t size() const { return samples_.size(); }
  double oldest_time() const;
  double newest_time() const;

 private:
  std::deque<std::pair<double, double>> samples_;
};

double oracle_lookup(const HistoryBuffer& buffer, double t_query);

}  // namespace wavelag
