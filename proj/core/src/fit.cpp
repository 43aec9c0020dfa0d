#include "wavelag/fit.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace wavelag {

DecayFit fit_decay(const TimeSeries& series) {
  std::vector<double> t, loge;
  bool any_positive = false;
  for (const auto& r : series.rows) {
    if (r.basic_energy > 0.0) {
      any_positive = true;
      t.push_back(r.t);
      loge.push_back(std::log(r.basic_energy));
    }
  }

  DecayFit fit;
  if (!any_positive) {
    fit.at_equilibrium = true;
    return fit;
  }
  if (t.size() < 20) {
    throw std::invalid_argument("fit_decay: need at least 20 rows with positive energy");
  }
  const int n = static_cast<int>(t.size());
  fit.samples_used = n;

  // linear regression of log e on t
  double st = 0, se = 0, stt = 0, ste = 0;
  for (int i = 0; i < n; ++i) {
    st += t[i];
    se += loge[i];
    stt += t[i] * t[i];
    ste += t[i] * loge[i];
  }
  const double denom = n * stt - st * st;
  const double slope = denom != 0.0 ? (n * ste - st * se) / denom : 0.0;
  const double intercept = (se - slope * st) / n;
  fit.exp_omega = -slope / 2.0;
  fit.exp_amplitude = std::exp(intercept);
  double ss = 0;
  for (int i = 0; i < n; ++i) {
    const double r = loge[i] - (intercept + slope * t[i]);
    ss += r * r;
  }
  fit.exp_residual = std::sqrt(ss / n);

  // one-parameter fit: log e = 2 log C - 2 log log(2+t)
  double mean = 0;
  std::vector<double> lg(n);
  for (int i = 0; i < n; ++i) {
    lg[i] = std::log(std::log(2.0 + t[i]));
    mean += loge[i] + 2.0 * lg[i];
  }
  mean /= n;
  fit.log_C = std::exp(mean / 2.0);
  ss = 0;
  for (int i = 0; i < n; ++i) {
    const double r = loge[i] - (mean - 2.0 * lg[i]);
    ss += r * r;
  }
  fit.log_residual = std::sqrt(ss / n);
  return fit;
}

std::string format_fit_report(const DecayFit& fit) {
  if (fit.at_equilibrium) {
    return "already at equilibrium: basic energy is identically zero, nothing to fit\n";
  }
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "decay fit over %d samples (residuals are RMS in log space)\n"
                "  exponential  e(t) ~ %.6g * exp(-2 * %.6g * t)  residual %.3e\n"
                "  logarithmic  e(t) ~ (%.6g / log(2+t))^2  residual %.3e\n",
                fit.samples_used, fit.exp_amplitude, fit.exp_omega, fit.exp_residual,
                fit.log_C, fit.log_residual);
  return buf;
}

}  // namespace wavelag
