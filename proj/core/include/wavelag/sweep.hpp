#pragma once

#include <string>
#include <vector>

#include "wavelag/config.hpp"

namespace wavelag {

struct SweepRow {
  double alpha = 0.0;
  double beta = 0.0;
  double tau = 0.0;
  bool admissible = false;
  double chi = 0.0;
  double final_y_err = 0.0;      // max_x |y(x,T) - chi|
  double final_energy = 0.0;
  double invariant_drift = 0.0;  // max_t |E(t)-E(0)| / max(|E(0)|, 1)
  double max_re_eig = 0.0;       // only when spectral is enabled
  std::string status;            // "ok" | "inadmissible" | "error: ..."
};

/// Runs one short simulation per (alpha, beta, tau) triple from the config's
/// sweep block, reusing the template's grid/initial-data settings. Rows come
/// back in Cartesian order (alpha outer, tau inner) regardless of the worker
/// count; failures are recorded per row and do not stop the sweep.
std::vector<SweepRow> run_sweep(const Config& cfg, bool unsafe, int workers);

void emit_sweep_csv(const std::vector<SweepRow>& rows, bool spectral_column,
                    const std::string& path);

}  // namespace wavelag
