#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "nilcalc/spectral.hpp"

using namespace nilcalc;

namespace {
constexpr double kPi = std::numbers::pi;

// brute-force oracle: full symmetric-tridiagonal diagonalization
int count_by_diagonalization(const SchrodingerDisc& d, double s) {
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(d.N, d.N);
  for (int j = 0; j < d.N; ++j) {
    T(j, j) = d.diag[size_t(j)];
    if (j + 1 < d.N) {
      T(j, j + 1) = d.offdiag;
      T(j + 1, j) = d.offdiag;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
  int c = 0;
  for (int j = 0; j < d.N; ++j)
    if (es.eigenvalues()[j] < s) ++c;
  return c;
}
}  // namespace

TEST_CASE("potential values") {
  RepParams p = RepParams::engel(1.0, 0.0);
  auto V = potential(p);
  CHECK(V(1.0) == doctest::Approx(3.25));
  CHECK(V(0.7) == V(-0.7));
  CHECK(V(50.0) > 1e5);  // quartic dominance
  CHECK_THROWS_AS(potential(RepParams::cartan(1.0, 0.0, 0.0)), std::invalid_argument);
}

TEST_CASE("Sturm count equals full diagonalization on small matrices") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> su(0.5, 3.0);
  for (int trial = 0; trial < 6; ++trial) {
    double l = su(rng), m = su(rng) - 1.5;
    RepParams p = RepParams::engel(l, m);
    auto V = potential(p);
    SchrodingerDisc d(10.0, 220 + 30 * trial, V);
    for (double s : {5.0, 20.0, 100.0, 400.0}) {
      CHECK(count_below(d, s) == count_by_diagonalization(d, s));
    }
  }
}

TEST_CASE("harmonic oscillator spectrum {2k+1}") {
  auto V = [](double u) { return u * u; };
  SchrodingerDisc d(12.0, 2000, V);
  CHECK(count_below(d, 2.0) == 1);
  CHECK(count_below(d, 10.0) == 5);
  CHECK(count_below(d, 0.5) == 0);  // below the ground state
  // monotone in s
  int prev = 0;
  for (double s : {1.5, 3.5, 5.5, 7.5, 9.5, 11.5}) {
    int c = count_below(d, s);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("count below the potential minimum is zero") {
  RepParams p = RepParams::engel(1.0, 0.0);
  auto V = potential(p);
  SchrodingerDisc d(8.0, 800, V);
  CHECK(count_below(d, 1.0) == 0);  // V >= 3 everywhere
}

TEST_CASE("weyl_volume of the harmonic symbol is pi s") {
  auto V = [](double u) { return u * u; };
  for (double s : {1.0, 4.0, 25.0}) {
    CHECK(weyl_volume(V, s) == doctest::Approx(kPi * s).epsilon(1e-8));
  }
  CHECK(weyl_volume(V, -1.0) == 0.0);
}

TEST_CASE("weyl volume handles double wells") {
  // V with two wells: (u^2 - 4)^2: allowed set splits below s = 16
  auto V = [](double u) { return (u * u - 4.0) * (u * u - 4.0); };
  double area = weyl_volume(V, 9.0);
  // direct fine Riemann sum as oracle
  double acc = 0;
  const int n = 2000000;
  for (int j = 0; j < n; ++j) {
    double u = -4.0 + 8.0 * (j + 0.5) / n;
    double v = 9.0 - V(u);
    if (v > 0) acc += std::sqrt(v) * 8.0 / n;
  }
  CHECK(area == doctest::Approx(2.0 * acc).epsilon(1e-5));
}

TEST_CASE("Dirichlet box monotonicity and convergence") {
  RepParams p = RepParams::engel(1.0, 1.0);
  auto V = potential(p);
  const double s = 200.0;
  int prev = -1;
  for (double L : {8.0, 12.0, 16.0}) {
    SchrodingerDisc d(L, 3000, V);
    int c = count_below(d, s);
    if (prev >= 0) CHECK(c >= prev);
    prev = c;
  }
  // resolution convergence: N=2000 vs N=4000 changes the count by <= 1
  const double L = auto_box(V, s);
  SchrodingerDisc d1(L, 2000, V), d2(L, 4000, V);
  CHECK(std::abs(count_below(d1, s) - count_below(d2, s)) <= 1);
}

TEST_CASE("Weyl ratio stays near one at large s") {
  RepParams p = RepParams::engel(1.0, 0.0);
  auto V = potential(p);
  for (double s : {50.0, 200.0, 1000.0, 2000.0}) {
    int c = model_count(p, s, 3000);
    double ratio = double(c) / (weyl_volume(V, s) / (2.0 * kPi));
    CHECK(ratio > 0.8);
    CHECK(ratio < 1.2);
  }
}

TEST_CASE("slope_fit") {
  CountCurve exact;
  for (double s : {10.0, 20.0, 40.0, 80.0, 160.0, 320.0}) {
    exact.s.push_back(s);
    exact.value.push_back(s * s);
  }
  SlopeFit f = slope_fit(exact);
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.r_squared == doctest::Approx(1.0));

  CountCurve constant;
  for (double s : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    constant.s.push_back(s);
    constant.value.push_back(3.0);
  }
  CHECK(slope_fit(constant).slope == doctest::Approx(0.0));

  CountCurve bad;
  bad.s = {1, 2, 3, 4, 5};
  bad.value = {1, -1, 1, 1, 1};
  CHECK_THROWS_AS(slope_fit(bad), std::invalid_argument);
  CountCurve few;
  few.s = {1, 2};
  few.value = {1, 2};
  CHECK_THROWS_AS(slope_fit(few), std::invalid_argument);
}

TEST_CASE("multiplier and heat closed forms") {
  // p = q = 2: r = infinity, sup = 1
  MultiplierResult r0 = multiplier_and_heat(GroupId::Engel, 2.0, 2.0, 1.0);
  CHECK(r0.exponent == 0.0);
  CHECK(r0.numeric_sup == doctest::Approx(1.0));
  CHECK(r0.heat_constant == doctest::Approx(1.0));

  // Engel p=1.5, q=3, t=1: r=3, sup = (1/t) e^{-1}
  MultiplierResult r1 = multiplier_and_heat(GroupId::Engel, 1.5, 3.0, 1.0);
  CHECK(r1.r == doctest::Approx(3.0));
  CHECK(std::abs(r1.numeric_sup - r1.heat_constant) < 1e-10);
  CHECK(r1.heat_constant == doctest::Approx(std::exp(-1.0)));

  // slope in t is exactly -sigma
  for (GroupId g : {GroupId::Engel, GroupId::Cartan}) {
    CountCurve tc;
    for (int k = 0; k < 9; ++k) {
      double t = 0.1 * std::pow(100.0, k / 8.0);
      tc.s.push_back(t);
      tc.value.push_back(multiplier_and_heat(g, 1.5, 3.0, t).numeric_sup);
    }
    double sigma = g == GroupId::Engel ? 1.0 : 1.5;  // 3/r and 9/(2r) at r=3
    CHECK(std::abs(slope_fit(tc).slope + sigma) < 1e-3);
  }

  CHECK_THROWS_AS(multiplier_and_heat(GroupId::Engel, 1.0, 3.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(multiplier_and_heat(GroupId::Engel, 1.5, 3.0, -1.0), std::invalid_argument);
}

TEST_CASE("trace estimate basics") {
  TraceSpec spec;
  spec.n_lambda = 24;
  spec.n_mu = 24;
  spec.n_disc = 1200;
  spec.workers = 4;
  double t10 = trace_estimate(GroupId::Engel, 10.0, spec).value;
  double t40 = trace_estimate(GroupId::Engel, 40.0, spec).value;
  CHECK(t10 > 0);
  CHECK(t40 > t10);  // monotone in s
  CHECK_THROWS_AS(trace_estimate(GroupId::Engel, 1.0, spec), std::invalid_argument);

  // budget path produces a partial result
  TraceSpec tiny = spec;
  tiny.budget_seconds = 1e-9;
  TraceResult r = trace_estimate(GroupId::Engel, 100.0, tiny);
  CHECK(r.partial);
}

TEST_CASE("deterministic parallel reduction: worker-count independence") {
  TraceSpec s1, s8;
  s1.n_lambda = s8.n_lambda = 16;
  s1.n_mu = s8.n_mu = 16;
  s1.n_disc = s8.n_disc = 800;
  s1.workers = 1;
  s8.workers = 8;
  double a = trace_estimate(GroupId::Engel, 30.0, s1).value;
  double b = trace_estimate(GroupId::Engel, 30.0, s8).value;
  CHECK(a == b);  // bitwise identical by construction
}

TEST_CASE("Cartan Monte Carlo fallback is seeded and reproducible") {
  TraceSpec spec;
  spec.monte_carlo_samples = 200;
  spec.seed = 42;
  spec.n_disc = 800;
  spec.workers = 4;
  double a = trace_estimate(GroupId::Cartan, 20.0, spec).value;
  double b = trace_estimate(GroupId::Cartan, 20.0, spec).value;
  CHECK(a == b);
  CHECK(a > 0);
}
