#pragma once

#include <optional>
#include <string>
#include <vector>

namespace wavelag {

struct ValidationReport {
  bool accepted = false;
  std::vector<std::string> violations;
};

/// Gain/delay admissibility: 0 < beta < alpha and tau*beta < xi < tau*(2*alpha - beta).
/// Every violated condition is named in the report.
ValidationReport validate(double alpha, double beta, double tau, double xi);

/// Midpoint of the admissible xi interval (tau*beta, tau*(2*alpha - beta)); equals alpha*tau.
/// Requires 0 < beta < alpha and tau > 0.
double default_xi(double alpha, double beta, double tau);

/// Smallness ceiling for the coupling weight: the three-term minimum evaluated
/// with mes(Omega) = L and the right boundary carrying unit measure.
double varpi_limit(double alpha, double beta, double xi, double L, double delta);

struct WeightChoice {
  double delta = 0.0;
  double varpi = 0.0;
};

/// delta is fixed at (alpha+beta)/2, varpi at safety * varpi_limit.
/// Requires admissible gains, L > 0 and safety in (0,1).
WeightChoice select_weight(double alpha, double beta, double xi, double L,
                           double safety = 0.9);

/// Physical gains (alpha, beta), delay tau, line weight xi, energy weights
/// (varpi, delta), and the domain length L.
struct SystemParams {
  double alpha = 1.0;
  double beta = 0.5;
  double tau = 1.0;
  double xi = 1.0;
  double varpi = 0.45;
  double delta = 0.75;
  double L = 1.0;

  /// Completes xi (interval midpoint) and (delta, varpi) when not supplied.
  /// Throws std::invalid_argument when the gains are inadmissible.
  static SystemParams make(double alpha, double beta, double tau, double L,
                           std::optional<double> xi = std::nullopt,
                           double safety = 0.9);

  /// Same completion without rejecting inadmissible gains (exploration runs).
  static SystemParams make_unsafe(double alpha, double beta, double tau, double L,
                                  std::optional<double> xi = std::nullopt,
                                  double safety = 0.9);

  bool admissible() const;
};

}  // namespace wavelag
