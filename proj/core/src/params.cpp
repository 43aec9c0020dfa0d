#include "wavelag/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wavelag {

ValidationReport validate(double alpha, double beta, double tau, double xi) {
  ValidationReport rep;
  auto bad = [&](const std::string& msg) { rep.violations.push_back(msg); };

  if (!std::isfinite(alpha) || alpha <= 0.0) bad("alpha must be finite and > 0");
  if (!std::isfinite(tau) || tau <= 0.0) bad("tau must be finite and > 0");
  if (!std::isfinite(beta)) bad("beta must be finite");
  if (!std::isfinite(xi)) bad("xi must be finite");
  if (!rep.violations.empty()) return rep;

  if (!(beta > 0.0)) bad("beta must be > 0");
  if (!(beta < alpha)) bad("beta must be strictly below alpha");
  if (!(tau * beta < xi)) bad("xi must exceed tau*beta");
  if (!(xi < tau * (2.0 * alpha - beta))) bad("xi must be below tau*(2*alpha - beta)");

  rep.accepted = rep.violations.empty();
  return rep;
}

double default_xi(double alpha, double beta, double tau) {
  if (!(std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(tau)) ||
      !(0.0 < beta && beta < alpha) || !(tau > 0.0)) {
    throw std::invalid_argument("default_xi requires 0 < beta < alpha and tau > 0");
  }
  // midpoint of (tau*beta, tau*(2*alpha-beta))
  return tau * (beta + (2.0 * alpha - beta)) / 2.0;
}

double varpi_limit(double alpha, double beta, double xi, double L, double delta) {
  const double s = alpha + beta;
  const double t1 = 1.0 / (s * (s - delta));
  const double t2 = delta / (2.0 * (s - delta) * L);
  const double t3 = delta * xi / (2.0 * (s - delta) * 1.0);
  return std::min({t1, t2, t3});
}

WeightChoice select_weight(double alpha, double beta, double xi, double L,
                           double safety) {
  if (!(std::isfinite(alpha) && std::isfinite(beta)) || !(0.0 < beta && beta < alpha)) {
    throw std::invalid_argument("select_weight requires 0 < beta < alpha");
  }
  if (!(xi > 0.0) || !(L > 0.0)) {
    throw std::invalid_argument("select_weight requires xi > 0 and L > 0");
  }
  if (!(safety > 0.0 && safety < 1.0)) {
    throw std::invalid_argument("select_weight requires safety in (0,1)");
  }
  WeightChoice w;
  w.delta = (alpha + beta) / 2.0;
  w.varpi = safety * varpi_limit(alpha, beta, xi, L, w.delta);
  return w;
}

namespace {

SystemParams complete(double alpha, double beta, double tau, double L,
                      std::optional<double> xi, double safety, bool strict) {
  SystemParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.tau = tau;
  p.L = L;
  p.xi = xi ? *xi : (strict ? default_xi(alpha, beta, tau) : alpha * tau);

  if (strict) {
    const ValidationReport rep = validate(alpha, beta, tau, p.xi);
    if (!rep.accepted) {
      std::ostringstream os;
      os << "inadmissible parameters:";
      for (const auto& v : rep.violations) os << " [" << v << "]";
      throw std::invalid_argument(os.str());
    }
    if (!(L > 0.0) || !std::isfinite(L)) {
      throw std::invalid_argument("L must be finite and > 0");
    }
    const WeightChoice w = select_weight(alpha, beta, p.xi, L, safety);
    p.delta = w.delta;
    p.varpi = w.varpi;
    return p;
  }

  // unsafe completion: keep the same formulas wherever they stay meaningful
  const double s = alpha + beta;
  p.delta = s > 0.0 ? s / 2.0 : 0.5;
  double lim = 0.0;
  if (s > p.delta && p.xi > 0.0 && L > 0.0) lim = varpi_limit(alpha, beta, p.xi, L, p.delta);
  p.varpi = (std::isfinite(lim) && lim > 0.0) ? safety * lim : 0.0;
  return p;
}

}  // namespace

SystemParams SystemParams::make(double alpha, double beta, double tau, double L,
                                std::optional<double> xi, double safety) {
  return complete(alpha, beta, tau, L, xi, safety, /*strict=*/true);
}

SystemParams SystemParams::make_unsafe(double alpha, double beta, double tau, double L,
                                       std::optional<double> xi, double safety) {
  return complete(alpha, beta, tau, L, xi, safety, /*strict=*/false);
}

bool SystemParams::admissible() const {
  if (!validate(alpha, beta, tau, xi).accepted) return false;
  if (!(L > 0.0) || !(varpi > 0.0) || !(delta > 0.0 && delta < alpha + beta)) return false;
  return varpi < varpi_limit(alpha, beta, xi, L, delta);
}

}  // namespace wavelag
