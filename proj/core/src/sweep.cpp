#include "wavelag/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

#include "wavelag/functionals.hpp"
#include "wavelag/presets.hpp"
#include "wavelag/spectral.hpp"

namespace wavelag {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SweepRow run_one(const Config& cfg, bool unsafe, double alpha, double beta, double tau) {
  SweepRow row;
  row.alpha = alpha;
  row.beta = beta;
  row.tau = tau;
  row.chi = row.final_y_err = row.final_energy = row.invariant_drift = row.max_re_eig = kNaN;

  const double xi_mid = alpha * tau;  // per-triple interval midpoint
  row.admissible = validate(alpha, beta, tau, xi_mid).accepted;
  if (!row.admissible && !unsafe) {
    row.status = "inadmissible";
    return row;
  }

  try {
    Scenario s;
    s.params = unsafe ? SystemParams::make_unsafe(alpha, beta, tau, cfg.L, std::nullopt, cfg.safety)
                      : SystemParams::make(alpha, beta, tau, cfg.L, std::nullopt, cfg.safety);
    s.N = cfg.N;
    s.M_min = cfg.M_min;
    s.cfl = cfg.cfl;
    s.initial.y0 = make_space_preset(cfg.y0, cfg.L);
    s.initial.z0 = make_space_preset(cfg.z0, cfg.L);
    s.initial.f = make_history_preset(cfg.f);
    s.T_final = cfg.sweep.T_final;
    s.record_every = std::max(1, cfg.record_every);

    const Discretization d = resolve(s);
    row.chi = equilibrium_chi(s.initial.y0, s.initial.z0, s.initial.f, s.params, d.grid);

    const RunResult r = run(s);
    double err = 0.0;
    for (double v : r.final_state.y) err = std::max(err, std::abs(v - row.chi));
    row.final_y_err = err;
    row.final_energy = r.series.rows.back().basic_energy;

    const double e0 = r.series.rows.front().invariant_E;
    double drift = 0.0;
    for (const auto& rec : r.series.rows) drift = std::max(drift, std::abs(rec.invariant_E - e0));
    row.invariant_drift = drift / std::max(std::abs(e0), 1.0);

    if (cfg.sweep.spectral) {
      const Grid1D sg = make_grid(cfg.L, cfg.sweep.spectral_N, cfg.sweep.spectral_M);
      const GeneratorMatrix gen = assemble_generator(s.params, sg);
      const DeflatedGenerator defl = deflate(gen, s.params, sg);
      const auto ev = eigenvalues(defl.A);
      row.max_re_eig = ev.back().real();
    }
    row.status = "ok";
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), ',', ';');
    row.status = "error: " + msg;
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const Config& cfg, bool unsafe, int workers) {
  if (cfg.sweep.alphas.empty() || cfg.sweep.betas.empty() || cfg.sweep.taus.empty()) {
    throw ConfigError("sweep requires non-empty alpha, beta and tau lists");
  }
  struct Job {
    double alpha, beta, tau;
  };
  std::vector<Job> jobs;
  for (double a : cfg.sweep.alphas)
    for (double b : cfg.sweep.betas)
      for (double t : cfg.sweep.taus) jobs.push_back({a, b, t});

  std::vector<SweepRow> rows(jobs.size());
  const int n_workers = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));

  if (n_workers == 1) {
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      rows[k] = run_one(cfg, unsafe, jobs[k].alpha, jobs[k].beta, jobs[k].tau);
    }
    return rows;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      rows[k] = run_one(cfg, unsafe, jobs[k].alpha, jobs[k].beta, jobs[k].tau);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return rows;
}

void emit_sweep_csv(const std::vector<SweepRow>& rows, bool spectral_column,
                    const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("emit_sweep_csv: cannot open '" + path + "'");
  std::fprintf(f, "alpha,beta,tau,admissible,chi,final_y_err,final_energy,invariant_drift%s,status\n",
               spectral_column ? ",max_re_eig" : "");
  for (const auto& r : rows) {
    std::fprintf(f, "%.16e,%.16e,%.16e,%d,%.16e,%.16e,%.16e,%.16e", r.alpha, r.beta, r.tau,
                 r.admissible ? 1 : 0, r.chi, r.final_y_err, r.final_energy, r.invariant_drift);
    if (spectral_column) std::fprintf(f, ",%.16e", r.max_re_eig);
    std::fprintf(f, ",%s\n", r.status.c_str());
  }
  if (std::fclose(f) != 0) throw std::runtime_error("emit_sweep_csv: write failure on '" + path + "'");
}

}  // namespace wavelag
