#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "wavelag/delay_line.hpp"
#include "wavelag/grid.hpp"
#include "wavelag/numerics.hpp"
#include "wavelag/presets.hpp"

using namespace wavelag;

TEST_CASE("make_grid arithmetic") {
  const Grid1D g = make_grid(1.0, 10, 4);
  CHECK(g.dx == doctest::Approx(0.1));
  CHECK(g.drho == doctest::Approx(0.25));
  CHECK(g.x(g.N) == doctest::Approx(1.0));
  const Grid1D g2 = make_grid(2.0, 8, 8);
  CHECK(g2.dx == doctest::Approx(0.25));
  CHECK(g2.drho == doctest::Approx(0.125));
}

TEST_CASE("make_grid rejects degenerate sizes") {
  CHECK_THROWS_AS(make_grid(1.0, 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1.0, 10, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0.0, 10, 4), std::invalid_argument);
}

TEST_CASE("init_state samples data and history") {
  const Grid1D g = make_grid(1.0, 10, 4);
  auto zero = [](double) { return 0.0; };

  SUBCASE("zero data gives the zero state") {
    const State s = init_state(g, zero, zero, zero, 1.0);
    for (double v : s.y) CHECK(v == 0.0);
    for (double v : s.z) CHECK(v == 0.0);
    for (double v : s.u) CHECK(v == 0.0);
    CHECK(s.t == 0.0);
  }

  SUBCASE("constant displacement is sampled everywhere") {
    auto c = [](double) { return 3.25; };
    const State s = init_state(g, c, zero, zero, 1.0);
    for (double v : s.y) CHECK(v == 3.25);
    for (double v : s.u) CHECK(v == 0.0);
  }

  SUBCASE("ramp history lands on the characteristic samples") {
    auto f = [](double sv) { return sv; };  // f(s) = s
    double mismatch = 0.0;
    const State s = init_state(g, zero, zero, f, 1.0, &mismatch);
    CHECK(s.u[0] == 0.0);  // z0(L)
    CHECK(s.u[1] == doctest::Approx(-0.25));
    CHECK(s.u[2] == doctest::Approx(-0.5));
    CHECK(s.u[3] == doctest::Approx(-0.75));
    CHECK(s.u[4] == doctest::Approx(-1.0));
    CHECK(mismatch == doctest::Approx(0.0));
  }

  SUBCASE("junction gap is reported, not rejected") {
    auto one = [](double) { return 1.0; };
    double mismatch = 0.0;
    const State s = init_state(g, zero, one, zero, 1.0, &mismatch);
    CHECK(s.u[0] == 1.0);
    CHECK(mismatch == doctest::Approx(1.0));
  }

  SUBCASE("non-finite samples are rejected") {
    auto bad = [](double) { return std::nan(""); };
    CHECK_THROWS_AS(init_state(g, bad, zero, zero, 1.0), std::invalid_argument);
  }
}

TEST_CASE("trapezoid and gradient are exact where they should be") {
  const Grid1D g = make_grid(1.0, 50, 4);
  std::vector<double> quad(g.N + 1), lin(g.N + 1);
  for (int i = 0; i <= g.N; ++i) {
    quad[i] = g.x(i) * g.x(i);
    lin[i] = 2.0 * g.x(i) - 0.5;
  }
  // trapezoid is exact on affine data, O(dx^2) on x^2
  CHECK(trapezoid(lin, g.dx) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(trapezoid(quad, g.dx) == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
  // the three-point gradient is exact on quadratics, ends included
  const auto grad = gradient(quad, g.dx);
  for (int i = 0; i <= g.N; ++i) CHECK(grad[i] == doctest::Approx(2.0 * g.x(i)).epsilon(1e-10));
}

TEST_CASE("advance_delay is a pure shift") {
  std::vector<double> u = {1.0, 2.0, 3.0, 4.0, 5.0};
  const std::vector<double> before = u;
  advance_delay(u, 9.0);
  CHECK(u == std::vector<double>{9.0, 1.0, 2.0, 3.0, 4.0});
  // line content is permuted-and-replaced, never mixed
  for (int j = 1; j < 5; ++j) CHECK(u[j] == before[j - 1]);
  CHECK(delayed_value(u) == 4.0);
}

TEST_CASE("constant inflow flushes the line in M steps") {
  std::vector<double> u = {0.3, -1.0, 2.0, 0.0, 7.0};
  for (int k = 0; k < 4; ++k) advance_delay(u, 0.5);
  CHECK(delayed_value(u) == 0.3);
  advance_delay(u, 0.5);
  for (double v : u) CHECK(v == 0.5);
}

TEST_CASE("sinusoidal inflow reproduces the shifted trace exactly") {
  const int M = 16;
  const double tau = 0.8;
  const double dt = tau / M;
  std::vector<double> u(M + 1, 0.0);
  const int total = 3 * M;
  for (int n = 1; n <= total; ++n) advance_delay(u, std::sin(n * dt));
  const double t = total * dt;
  for (int j = 0; j < M; ++j) {
    // u_j = sin(t - tau*rho_j) at grid times, to rounding
    CHECK(u[j] == doctest::Approx(std::sin(t - tau * j / M)).epsilon(1e-14));
  }
}

TEST_CASE("delay exactness for arbitrary inflow sequences") {
  const int M = 8;
  std::vector<double> u(M + 1, 0.0);
  std::vector<double> inflow;
  for (int n = 0; n < M; ++n) {
    const double w = std::cos(1.7 * n) + 0.1 * n;
    inflow.push_back(w);
    advance_delay(u, w);
    for (int j = 0; j <= n; ++j) CHECK(u[j] == inflow[inflow.size() - 1 - j]);
  }
}

TEST_CASE("history buffer interpolates and guards its span") {
  HistoryBuffer b;
  b.push(0.0, 0.0);
  b.push(1.0, 2.0);
  CHECK(oracle_lookup(b, 0.5) == doctest::Approx(1.0));
  CHECK(oracle_lookup(b, 0.0) == 0.0);
  CHECK(oracle_lookup(b, 1.0) == 2.0);
  CHECK_THROWS_AS(oracle_lookup(b, -0.1), std::out_of_range);
  CHECK_THROWS_AS(oracle_lookup(b, 1.1), std::out_of_range);
  CHECK_THROWS_AS(b.push(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("linear interpolation error on a quadratic obeys the h^2 bound") {
  // q(t) = t^2, samples spacing h: error at midpoints is h^2/4, bound h^2/2
  for (const double h : {0.2, 0.1}) {
    HistoryBuffer b;
    for (int k = 0; k <= 20; ++k) b.push(k * h - 2.0, (k * h - 2.0) * (k * h - 2.0));
    double worst = 0.0;
    for (int q = 0; q < 400; ++q) {
      const double t = -2.0 + (q / 399.0) * 20.0 * h * 0.999;
      worst = std::max(worst, std::abs(b.lookup(t) - t * t));
    }
    CHECK(worst <= h * h / 2.0);
    CHECK(worst == doctest::Approx(h * h / 4.0).epsilon(0.05));
  }
}

TEST_CASE("drop_before keeps the span queryable") {
  HistoryBuffer b;
  for (int k = 0; k <= 100; ++k) b.push(0.1 * k, k);
  b.drop_before(5.0);
  CHECK(b.covers(5.0));
  CHECK(b.oldest_time() <= 5.0);
  CHECK(b.size() < 101);
  CHECK(b.lookup(5.0) == doctest::Approx(50.0));
}

TEST_CASE("presets parse and evaluate") {
  const double L = 2.0;
  auto y0 = make_space_preset("gaussian(1.0, 0.25, 2.0)", L);
  CHECK(y0(1.0) == doctest::Approx(2.0));
  CHECK(y0(1.25) == doctest::Approx(2.0 * std::exp(-0.5)));
  auto s = make_space_preset("sine(2)", L);
  CHECK(s(0.5) == doctest::Approx(1.0));
  auto c = make_space_preset("constant(-3)", L);
  CHECK(c(0.123) == -3.0);
  auto r = make_history_preset("ramp(2.0)");
  CHECK(r(-0.5) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(make_space_preset("vortex(1)", L), std::invalid_argument);
  CHECK_THROWS_AS(make_space_preset("gaussian(1.0)", L), std::invalid_argument);
  CHECK_THROWS_AS(make_space_preset("constant(abc)", L), std::invalid_argument);
}
