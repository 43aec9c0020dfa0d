// Command-line front end: admissibility checks, simulation runs, generator
// spectra, resolvent sweeps, parameter sweeps and decay fits, all driven by a
// flat key/value config file. Exit codes: 0 success, 1 validation error,
// 2 runtime or numerical failure.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>

#include "wavelag/config.hpp"
#include "wavelag/csv.hpp"
#include "wavelag/fit.hpp"
#include "wavelag/functionals.hpp"
#include "wavelag/spectral.hpp"
#include "wavelag/sweep.hpp"

namespace {

using namespace wavelag;

std::string pick_out(const std::string& flag_out, const Config& cfg, const char* fallback) {
  if (!flag_out.empty()) return flag_out;
  if (!cfg.out.empty()) return cfg.out;
  return fallback;
}

int cmd_check_params(const Config& cfg, bool unsafe, std::uint64_t seed, int samples) {
  const ValidationReport rep =
      validate(cfg.alpha, cfg.beta, cfg.tau, cfg.xi ? *cfg.xi : cfg.alpha * cfg.tau);
  std::printf("alpha = %.17g, beta = %.17g, tau = %.17g\n", cfg.alpha, cfg.beta, cfg.tau);
  if (!cfg.xi) std::printf("xi    = %.17g (interval midpoint)\n", cfg.alpha * cfg.tau);
  else std::printf("xi    = %.17g\n", *cfg.xi);
  if (rep.accepted) {
    std::printf("admissible: yes\n");
  } else {
    std::printf("admissible: NO\n");
    for (const auto& v : rep.violations) std::printf("  violated: %s\n", v.c_str());
    if (!unsafe) return 1;
  }

  const SystemParams p = cfg.make_params(unsafe);
  std::printf("delta = %.17g\nvarpi = %.17g (safety %.17g)\n", p.delta, p.varpi, cfg.safety);

  if (samples > 0) {
    const Grid1D g = make_grid(cfg.L, cfg.N, std::max(cfg.M_min, 4));
    const RatioBounds b = norm_equivalence_check(p, g, samples, seed);
    std::printf("norm equivalence over %d random states (seed %llu): ratio in [%.17g, %.17g]\n",
                samples, static_cast<unsigned long long>(seed), b.min_ratio, b.max_ratio);
  }
  return 0;
}

int cmd_simulate(const Config& cfg, bool unsafe, const std::string& out_flag) {
  const Scenario s = cfg.make_scenario(unsafe);
  const double mismatch = [&] {
    const Discretization d = resolve(s);
    double m = 0.0;
    init_state(d.grid, s.initial.y0, s.initial.z0, s.initial.f, s.params.tau, &m);
    return m;
  }();
  if (mismatch > 1e-12) {
    std::fprintf(stderr,
                 "warning: history/velocity junction gap |f(0) - z0(L)| = %.3e at the feedback end\n",
                 mismatch);
  }

  RunResult r = run(s);
  r.series.metadata = cfg.resolved_metadata(unsafe);
  const std::string path = pick_out(out_flag, cfg, "run.csv");
  emit_timeseries(r.series, path);
  std::printf("wrote %zu records to %s (dt = %.17g, %d steps)\n", r.series.rows.size(),
              path.c_str(), r.dt, r.steps);

  const Discretization d = resolve(s);
  const double chi = equilibrium_chi(s.initial.y0, s.initial.z0, s.initial.f, s.params, d.grid);
  double err = 0.0;
  for (double v : r.final_state.y) err = std::max(err, std::abs(v - chi));
  std::printf("predicted limit chi = %.17g, final max|y - chi| = %.3e\n", chi, err);
  return 0;
}

int cmd_spectrum(const Config& cfg, bool unsafe, const std::string& out_flag) {
  const SystemParams p = cfg.make_params(unsafe);
  const Grid1D g = make_grid(cfg.L, cfg.N, std::max(cfg.M_min, 4));
  const SpectralReport rep = build_spectral_report(p, g);

  const std::string path = pick_out(out_flag, cfg, "spectrum.csv");
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::fprintf(f, "# N = %d\n# M = %d\n# deflated_dim = %d\n# deflation_residual = %.16e\n",
               g.N, g.M, rep.deflated_dim, rep.deflation_residual);
  std::fprintf(f, "re,im\n");
  for (const auto& lam : rep.eigenvalues) {
    std::fprintf(f, "%.16e,%.16e\n", lam.real(), lam.imag());
  }
  std::fclose(f);

  std::printf("deflated generator: dim %d, max Re(lambda) = %.6e, deflation residual %.3e\n",
              rep.deflated_dim, rep.max_real_part, rep.deflation_residual);
  std::printf("wrote %zu eigenvalues to %s\n", rep.eigenvalues.size(), path.c_str());
  return 0;
}

int cmd_resolvent(const Config& cfg, bool unsafe, const std::string& out_flag) {
  const SystemParams p = cfg.make_params(unsafe);
  const Grid1D g = make_grid(cfg.L, cfg.N, std::max(cfg.M_min, 4));
  const GeneratorMatrix gen = assemble_generator(p, g);
  const DeflatedGenerator defl = deflate(gen, p, g);
  const ResolventSpec& rs = cfg.resolvent;
  const ResolventSweep sweep =
      resolvent_sweep(defl.A, rs.gamma_min, rs.gamma_max, rs.count);

  const bool weighted = rs.h_metric_every > 0;
  Eigen::MatrixXd gram_defl;
  if (weighted) {
    const Eigen::MatrixXd gram = gram_matrix_trapezoid(p, g);
    gram_defl = defl.basis.transpose() * gram * defl.basis;
  }

  const std::string path = pick_out(out_flag, cfg, "resolvent.csv");
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::fprintf(f, "# N = %d\n# M = %d\n", g.N, g.M);
  std::fprintf(f, "gamma,resolvent_norm,lower_bound%s\n", weighted ? ",h_metric_norm" : "");
  for (std::size_t k = 0; k < sweep.gamma.size(); ++k) {
    std::fprintf(f, "%.16e,%.16e,%.16e", sweep.gamma[k], sweep.norm[k], sweep.lower_bound[k]);
    if (weighted) {
      if (k % static_cast<std::size_t>(rs.h_metric_every) == 0) {
        std::fprintf(f, ",%.16e", resolvent_norm_weighted(defl.A, sweep.gamma[k], gram_defl));
      } else {
        std::fprintf(f, ",");
      }
    }
    std::fprintf(f, "\n");
  }
  std::fclose(f);
  std::printf("wrote %zu resolvent samples to %s\n", sweep.gamma.size(), path.c_str());
  return 0;
}

int cmd_sweep(const Config& cfg, bool unsafe, const std::string& out_flag, int workers) {
  const auto rows = run_sweep(cfg, unsafe, workers);
  const std::string path = pick_out(out_flag, cfg, "sweep.csv");
  emit_sweep_csv(rows, cfg.sweep.spectral, path);
  std::printf("wrote %zu sweep rows to %s\n", rows.size(), path.c_str());
  return 0;
}

int cmd_fit_decay(const std::string& csv_path) {
  const TimeSeries series = parse_timeseries(csv_path);
  const DecayFit fit = fit_decay(series);
  std::fputs(format_fit_report(fit).c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale laboratory for a wave equation with delayed boundary velocity feedback"};
  app.require_subcommand(1);

  std::string config_path, out_path, fit_csv;
  bool unsafe = false;
  std::uint64_t seed = 0;
  int workers = 1;
  int samples = 1000;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    if (needs_config) sub->add_option("--config", config_path, "config file")->required();
    sub->add_flag("--unsafe", unsafe, "allow inadmissible parameters");
  };

  CLI::App* check = app.add_subcommand("check-params", "validate gains and report the energy weights");
  add_common(check, true);
  check->add_option("--seed", seed, "seed for the random-state equivalence check");
  check->add_option("--samples", samples, "random states for the equivalence check (0 disables)");

  CLI::App* sim = app.add_subcommand("simulate", "integrate the closed-loop system and emit a CSV trace");
  add_common(sim, true);
  sim->add_option("--out", out_path, "output CSV path");
  sim->add_option("--seed", seed, "seed recorded in the output metadata");

  CLI::App* spec = app.add_subcommand("spectrum", "eigenvalues of the deflated generator");
  add_common(spec, true);
  spec->add_option("--out", out_path, "output CSV path");

  CLI::App* res = app.add_subcommand("resolvent-sweep", "resolvent norms along the imaginary axis");
  add_common(res, true);
  res->add_option("--out", out_path, "output CSV path");

  CLI::App* sw = app.add_subcommand("sweep", "batch of runs over an (alpha, beta, tau) grid");
  add_common(sw, true);
  sw->add_option("--out", out_path, "output CSV path");
  sw->add_option("--workers", workers, "concurrent simulations")->check(CLI::PositiveNumber);
  sw->add_option("--seed", seed, "seed recorded in the output metadata");

  CLI::App* fit = app.add_subcommand("fit-decay", "fit decay families to an emitted CSV trace");
  fit->add_option("csv", fit_csv, "simulation CSV to fit")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(check)) {
      Config cfg = load_config(config_path, unsafe);
      if (check->count("--seed")) cfg.seed = seed;
      return cmd_check_params(cfg, unsafe, cfg.seed, samples);
    }
    if (app.got_subcommand(sim)) {
      Config cfg = load_config(config_path, unsafe);
      if (sim->count("--seed")) cfg.seed = seed;
      return cmd_simulate(cfg, unsafe, out_path);
    }
    if (app.got_subcommand(spec)) {
      return cmd_spectrum(load_config(config_path, unsafe), unsafe, out_path);
    }
    if (app.got_subcommand(res)) {
      return cmd_resolvent(load_config(config_path, unsafe), unsafe, out_path);
    }
    if (app.got_subcommand(sw)) {
      Config cfg = load_config(config_path, unsafe);
      if (sw->count("--seed")) cfg.seed = seed;
      return cmd_sweep(cfg, unsafe, out_path, workers);
    }
    if (app.got_subcommand(fit)) {
      return cmd_fit_decay(fit_csv);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
