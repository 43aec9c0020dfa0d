#pragma once

#include <string>

#include "wavelag/timeseries.hpp"

namespace wavelag {

/// Least-squares fits of basic_energy(t) against two decay families:
///   exponential  e(t) ~ amplitude * exp(-2*omega*t)   (omega = amplitude rate)
///   logarithmic  e(t) ~ (C / log(2+t))^2
/// Residuals are RMS errors in log space, so the two families are comparable.
/// No claim is made about which family the system obeys.
struct DecayFit {
  bool at_equilibrium = false;  // all energies zero; no fit performed
  int samples_used = 0;
  double exp_omega = 0.0;
  double exp_amplitude = 0.0;
  double exp_residual = 0.0;
  double log_C = 0.0;
  double log_residual = 0.0;
};

/// Requires at least 20 rows with positive energy unless every row is zero.
DecayFit fit_decay(const TimeSeries& series);

std::string format_fit_report(const DecayFit& fit);

}  // namespace wavelag
