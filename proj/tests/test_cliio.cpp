#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "wavelag/config.hpp"
#include "wavelag/csv.hpp"
#include "wavelag/fit.hpp"
#include "wavelag/sweep.hpp"

using namespace wavelag;

namespace {

const char* kMinimalConfig = R"(
[params]
alpha = 1.0
beta = 0.5
tau = 1.0
)";

std::string temp_path(const char* name) {
  return std::string("wavelag_test_") + name;
}

TimeSeries synthetic_series(int n, double dt, double (*energy)(double)) {
  TimeSeries s;
  s.metadata.emplace_back("source", "synthetic");
  for (int k = 0; k < n; ++k) {
    FunctionalRecord r;
    r.t = k * dt;
    r.basic_energy = energy(r.t);
    r.lyap_norm_sq = r.basic_energy;
    s.rows.push_back(r);
  }
  return s;
}

}  // namespace

TEST_CASE("minimal config fills every default") {
  const Config c = parse_config(kMinimalConfig);
  CHECK(c.alpha == 1.0);
  CHECK(c.beta == 0.5);
  CHECK(c.tau == 1.0);
  CHECK_FALSE(c.xi.has_value());
  CHECK(c.safety == 0.9);
  CHECK(c.cfl == 0.9);
  CHECK(c.N == 200);
  const SystemParams p = c.make_params();
  CHECK(p.xi == doctest::Approx(1.0));
  CHECK(p.varpi == doctest::Approx(0.45));
}

TEST_CASE("config errors carry line information") {
  SUBCASE("duplicate key") {
    const char* text = "[params]\nalpha = 1\nbeta = 0.5\ntau = 1\nalpha = 2\n";
    try {
      parse_config(text);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line() == 5);
      CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    }
  }
  SUBCASE("unknown key") {
    const char* text = "[params]\nalpha = 1\nbeta = 0.5\ntau = 1\nomega = 2\n";
    CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("unknown key"), ConfigError);
  }
  SUBCASE("unknown section") {
    CHECK_THROWS_WITH_AS(parse_config("[quantum]\nq = 1\n"), doctest::Contains("unknown section"),
                         ConfigError);
  }
  SUBCASE("malformed number") {
    const char* text = "[params]\nalpha = fast\nbeta = 0.5\ntau = 1\n";
    try {
      parse_config(text);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("missing required key") {
    CHECK_THROWS_WITH_AS(parse_config("[params]\nalpha = 1\nbeta = 0.5\n"),
                         doctest::Contains("params.tau"), ConfigError);
  }
}

TEST_CASE("inadmissible xi is a load error unless forced") {
  const char* text = "[params]\nalpha = 1\nbeta = 0.5\ntau = 1\nxi = 0.4\n";
  CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("tau*beta"), ConfigError);
  const Config c = parse_config(text, /*unsafe=*/true);
  CHECK(*c.xi == 0.4);
}

TEST_CASE("mode strings round-trip and bad modes fail") {
  const char* text = "[params]\nalpha = 1\nbeta = 0.5\ntau = 1\n[run]\nmode = resolvent-sweep\n";
  const Config c = parse_config(text);
  REQUIRE(c.mode.has_value());
  CHECK(*c.mode == RunMode::resolvent_sweep);
  CHECK_THROWS_AS(parse_config("[params]\nalpha=1\nbeta=0.5\ntau=1\n[run]\nmode = dance\n"),
                  ConfigError);
}

TEST_CASE("comments, sections and whitespace are tolerated") {
  const char* text =
      "# leading comment\n"
      "; another comment style\n"
      "[params]\n"
      "alpha = 1.0   # inline comment\n"
      "beta = 0.25\n"
      "tau = 0.5\n"
      "\n"
      "[grid]\n"
      "N = 64\n";
  const Config c = parse_config(text);
  CHECK(c.alpha == 1.0);
  CHECK(c.N == 64);
}

TEST_CASE("timeseries round-trips bit-exactly") {
  TimeSeries s;
  s.metadata.emplace_back("alpha", "1");
  s.metadata.emplace_back("note", "round trip");
  for (int k = 0; k < 7; ++k) {
    FunctionalRecord r;
    r.t = k * 0.1;
    r.lyap_norm_sq = std::sqrt(2.0) * k;
    r.basic_energy = std::exp(-0.3 * k);
    r.invariant_E = -1.0 / (k + 1.0);
    r.boundary_velocity = std::sin(3.0 * k);
    r.delayed_velocity = std::cos(5.0 * k) * 1e-14;
    s.rows.push_back(r);
  }
  const std::string path = temp_path("roundtrip.csv");
  emit_timeseries(s, path);
  const TimeSeries back = parse_timeseries(path);
  REQUIRE(back.rows.size() == s.rows.size());
  for (std::size_t k = 0; k < s.rows.size(); ++k) {
    CHECK(back.rows[k].t == s.rows[k].t);
    CHECK(back.rows[k].lyap_norm_sq == s.rows[k].lyap_norm_sq);
    CHECK(back.rows[k].basic_energy == s.rows[k].basic_energy);
    CHECK(back.rows[k].invariant_E == s.rows[k].invariant_E);
    CHECK(back.rows[k].boundary_velocity == s.rows[k].boundary_velocity);
    CHECK(back.rows[k].delayed_velocity == s.rows[k].delayed_velocity);
  }
  REQUIRE(back.metadata.size() == 2);
  CHECK(back.metadata[0].first == "alpha");
  CHECK(back.metadata[1].second == "round trip");
  std::remove(path.c_str());
}

TEST_CASE("identical config and seed produce identical bytes") {
  const char* text =
      "[params]\nalpha = 1\nbeta = 0.25\ntau = 0.5\n"
      "[grid]\nN = 32\n"
      "[initial]\nz0 = constant(1)\n"
      "[run]\nT_final = 0.5\nrecord_every = 2\nseed = 9\n";
  const Config c = parse_config(text);
  const Scenario s = c.make_scenario();
  auto emit_once = [&](const char* name) {
    RunResult r = run(s);
    r.series.metadata = c.resolved_metadata();
    const std::string path = temp_path(name);
    emit_timeseries(r.series, path);
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::remove(path.c_str());
    return bytes;
  };
  CHECK(emit_once("det_a.csv") == emit_once("det_b.csv"));
}

TEST_CASE("metadata is rich enough to re-run the scenario") {
  const Config c = parse_config(kMinimalConfig);
  const auto meta = c.resolved_metadata();
  auto has = [&](const char* key) {
    for (const auto& [k, v] : meta)
      if (k == key) return true;
    return false;
  };
  for (const char* key : {"alpha", "beta", "tau", "xi", "varpi", "delta", "L", "N", "M",
                          "cfl", "dt", "T_final", "record_every", "seed", "y0", "z0", "f"}) {
    CHECK_MESSAGE(has(key), key);
  }
}

TEST_CASE("sweep covers the grid in order and flags inadmissible rows") {
  const char* text =
      "[params]\nalpha = 1\nbeta = 0.25\ntau = 0.5\n"
      "[grid]\nN = 48\n"
      "[initial]\nz0 = constant(1)\n"
      "[sweep]\nalpha = 1.0, 0.1\nbeta = 0.25\ntau = 0.5, 1.0\nT_final = 30\n";
  const Config c = parse_config(text);
  const auto rows = run_sweep(c, /*unsafe=*/false, /*workers=*/2);
  REQUIRE(rows.size() == 4);
  // cartesian order: alpha outer, tau inner
  CHECK(rows[0].alpha == 1.0);
  CHECK(rows[0].tau == 0.5);
  CHECK(rows[1].alpha == 1.0);
  CHECK(rows[1].tau == 1.0);
  CHECK(rows[2].alpha == 0.1);

  for (const auto& r : rows) {
    if (r.alpha == 1.0) {
      CHECK(r.admissible);
      CHECK(r.status == "ok");
      CHECK(r.final_y_err < 5e-2);
      // dense records cross the corner-formation transient of the step data,
      // so only a coarse conservation statement is meaningful here
      CHECK(r.invariant_drift < 5e-2);
    } else {
      // beta 0.25 >= alpha 0.1: rejected and skipped
      CHECK_FALSE(r.admissible);
      CHECK(r.status == "inadmissible");
      CHECK(std::isnan(r.chi));
    }
  }

  const std::string path = temp_path("sweep.csv");
  emit_sweep_csv(rows, false, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "alpha,beta,tau,admissible,chi,final_y_err,final_energy,invariant_drift,status");
  int data_lines = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++data_lines;
  CHECK(data_lines == 4);
  in.close();
  std::remove(path.c_str());
}

TEST_CASE("a 3x3 admissible grid yields nine converged rows") {
  const char* text =
      "[params]\nalpha = 1\nbeta = 0.25\ntau = 0.5\n"
      "[grid]\nN = 48\n"
      "[initial]\nz0 = constant(1.0)\n"
      "[run]\nrecord_every = 25\n"
      "[sweep]\nalpha = 0.8, 1.0, 1.5\nbeta = 0.3\ntau = 0.4, 0.6, 0.8\nT_final = 40\n";
  const auto rows = run_sweep(parse_config(text), false, 3);
  REQUIRE(rows.size() == 9);
  for (const auto& r : rows) {
    CHECK(r.admissible);
    CHECK(r.status == "ok");
    CHECK(r.final_y_err < 5e-2);  // configured tolerance for these short runs
  }
}

TEST_CASE("load_config reads files and reports missing ones") {
  const std::string path = temp_path("cfg.ini");
  {
    std::ofstream out(path);
    out << "[params]\nalpha = 2\nbeta = 0.5\ntau = 0.25\n";
  }
  const Config c = load_config(path);
  CHECK(c.alpha == 2.0);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config(path), ConfigError);
}

TEST_CASE("emit_timeseries surfaces I/O failures") {
  TimeSeries s;
  s.rows.push_back({});
  CHECK_THROWS_AS(emit_timeseries(s, "/nonexistent_dir/out.csv"), std::runtime_error);
}

TEST_CASE("duplicate sweep triples stay duplicated") {
  const char* text =
      "[params]\nalpha = 1\nbeta = 0.25\ntau = 0.5\n"
      "[grid]\nN = 48\n"
      "[sweep]\nalpha = 1.0, 1.0\nbeta = 0.25\ntau = 0.5\nT_final = 1\n";
  const auto rows = run_sweep(parse_config(text), false, 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].alpha == rows[1].alpha);
  CHECK(rows[0].status == rows[1].status);
}

TEST_CASE("all-inadmissible sweep runs nothing") {
  const char* text =
      "[params]\nalpha = 1\nbeta = 0.25\ntau = 0.5\n"
      "[sweep]\nalpha = 0.1, 0.2\nbeta = 0.5\ntau = 1.0\nT_final = 1\n";
  const auto rows = run_sweep(parse_config(text), false, 4);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK_FALSE(r.admissible);
    CHECK(r.status == "inadmissible");
  }
}

TEST_CASE("decay fit recovers its own families") {
  SUBCASE("pure exponential") {
    const TimeSeries s = synthetic_series(200, 0.25, [](double t) { return std::exp(-t); });
    const DecayFit fit = fit_decay(s);
    CHECK_FALSE(fit.at_equilibrium);
    CHECK(fit.exp_omega == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(fit.exp_residual <= 1e-10);
    CHECK(fit.log_residual > 0.05);
  }
  SUBCASE("pure logarithmic family") {
    const TimeSeries s = synthetic_series(200, 0.25, [](double t) {
      const double lg = std::log(2.0 + t);
      return 1.0 / (lg * lg);
    });
    const DecayFit fit = fit_decay(s);
    CHECK(fit.log_C == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fit.log_residual <= 1e-10);
    CHECK(fit.exp_residual > 0.05);
  }
  SUBCASE("all-zero energy reports equilibrium") {
    const TimeSeries s = synthetic_series(50, 0.1, [](double) { return 0.0; });
    const DecayFit fit = fit_decay(s);
    CHECK(fit.at_equilibrium);
    CHECK(format_fit_report(fit).find("equilibrium") != std::string::npos);
  }
  SUBCASE("too few positive rows is a precondition error") {
    const TimeSeries s = synthetic_series(10, 0.1, [](double) { return 1.0; });
    CHECK_THROWS_AS(fit_decay(s), std::invalid_argument);
  }
}
