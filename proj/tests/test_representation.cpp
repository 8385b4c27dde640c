#include <doctest.h>

#include <cmath>

#include "nilcalc/representation.hpp"
#include "nilcalc/verify.hpp"

using namespace nilcalc;

TEST_CASE("parameter admissibility") {
  CHECK_THROWS_AS(RepParams::engel(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(RepParams::cartan(0.0, 0.0, 1.0), std::invalid_argument);
  CHECK_NOTHROW(RepParams::cartan(0.0, 1.0, 0.0));
}

TEST_CASE("phase cocycle is an exact polynomial identity") {
  CHECK(verify_phase_cocycle(GroupId::Engel, 1.0, 0.7, 0.0));
  CHECK(verify_phase_cocycle(GroupId::Engel, 2.0, -1.0, 0.0));
  CHECK(verify_phase_cocycle(GroupId::Cartan, 1.0, 0.7, 0.3));
  CHECK(verify_phase_cocycle(GroupId::Cartan, 0.8, -1.2, 1.0));
  CHECK(verify_phase_cocycle(GroupId::Cartan, 1.0, 0.0, 0.5));
}

TEST_CASE("pi(e) is the identity") {
  Grid1D grid(12.0, 256);
  GaussSum h(hermite_factor(0.3, 1.1, 1));
  for (GroupId g : {GroupId::Engel, GroupId::Cartan}) {
    RepParams p = g == GroupId::Engel ? RepParams::engel(1.2, 0.4) : RepParams::cartan(1.2, 0.4, -0.3);
    GaussSum out = rep_apply(p, GroupElement::identity(g), h);
    CHECK(rel_l2_error(sample(out, grid), sample(h, grid)) < 1e-14);
  }
}

TEST_CASE("Engel phase matches the printed display") {
  RepParams p = RepParams::engel(1.5, -0.8);
  GroupElement x{GroupId::Engel, {0.3, -0.7, 0.2, 0.9}};
  PhaseCoeffs ph = rep_phase(p, x);
  const double l = 1.5, m = -0.8;
  for (double u : {-1.0, 0.0, 0.8}) {
    double expect = -m / (2 * l) * x.x[1] + l * x.x[3] - l * x.x[2] * u + 0.5 * l * x.x[1] * u * u;
    CHECK(ph.eval(u) == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("representation suite: homomorphism, unitarity, adjoint pairing") {
  Grid1D grid(12.0, 1024);
  for (GroupId g : {GroupId::Engel, GroupId::Cartan}) {
    RepSuiteResult r = run_rep_suite(g, 30, grid, 99);
    CHECK(r.homomorphism_err <= 1e-6);
    CHECK(r.unitarity_err <= 1e-6);
    CHECK(r.adjoint_pairing_err <= 1e-6);
    CHECK(r.infinitesimal_err <= 1e-5);
    CHECK(r.bracket_err <= 1e-12);
  }
}

TEST_CASE("printed infinitesimal values") {
  // Engel pi(X4) = i lambda
  RepParams p = RepParams::engel(1.7, 0.3);
  DiffOp1C op = infinitesimal(p, 4);
  GaussSum h(hermite_factor(0.0, 1.0, 0));
  GaussSum out = apply_op(op, h);
  Grid1D grid(10.0, 128);
  auto a = sample(out, grid);
  auto b = sample(h, grid);
  for (int k = 0; k < grid.N; ++k)
    CHECK(std::abs(a.samples[size_t(k)] - Complex(0, 1.7) * b.samples[size_t(k)]) < 1e-12);

  // Engel pi(X2) at (1, 0) is (i/2) u^2
  RepParams p2 = RepParams::engel(1.0, 0.0);
  GaussSum out2 = apply_op(infinitesimal(p2, 2), h);
  for (double u : {-1.0, 0.5, 2.0})
    CHECK(std::abs(out2.eval(u) - Complex(0, 0.5) * u * u * h.eval(u)) < 1e-13);

  // Cartan pi(X3) at lambda=mu=1 is -2i u (Engel-sign convention; the printed
  // +i(lambda^2+mu^2)u does not integrate against the group law)
  RepParams p3 = RepParams::cartan(1.0, 1.0, 0.0);
  GaussSum out3 = apply_op(infinitesimal(p3, 3), h);
  for (double u : {-1.0, 0.5, 2.0})
    CHECK(std::abs(out3.eval(u) - Complex(0, -2.0) * u * h.eval(u)) < 1e-13);

  CHECK_THROWS_AS(infinitesimal(p, 5), std::invalid_argument);
}

TEST_CASE("infinitesimal oracle: definitional derivative") {
  Grid1D grid(12.0, 512);
  GaussSum h(hermite_factor(0.1, 1.0, 1));
  for (GroupId g : {GroupId::Engel, GroupId::Cartan}) {
    RepParams p = g == GroupId::Engel ? RepParams::engel(1.1, -0.6) : RepParams::cartan(1.1, -0.6, 0.4);
    for (int i = 1; i <= dimension(g); ++i) {
      GridFunction1D oracle = infinitesimal_oracle(p, i, h, 1e-3, grid);
      GridFunction1D closed = sample(apply_op(infinitesimal(p, i), h), grid);
      CHECK(rel_l2_error(oracle, closed) < 1e-5);
    }
  }
  // h = 0 maps to 0
  GaussSum zero;
  GridFunction1D out = infinitesimal_oracle(RepParams::engel(1, 0), 4, zero, 1e-3, grid);
  for (auto v : out.samples) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("build_symbol reproduces the printed sub-Laplacian symbols") {
  // Engel: X1^2 + X2^2 -> d^2/du^2 - (lambda u^2 - mu/lambda)^2 / 4
  RepParams p = RepParams::engel(1.3, 0.5);
  DiffOp1C sym = build_symbol(p, {{1, 2}});
  sym = sym + build_symbol(p, {{2, 2}});
  const double l = 1.3, m = 0.5;
  // compare coefficients against the closed form
  Polynomial<Complex> expect_mult(1);
  {
    // -(1/4)(l u^2 - m/l)^2 = -(l^2/4) u^4 + (m/2) u^2 - m^2/(4 l^2)
    expect_mult.add_term({4}, Complex(-l * l / 4.0));
    expect_mult.add_term({2}, Complex(m / 2.0));
    expect_mult.add_term({0}, Complex(-m * m / (4.0 * l * l)));
  }
  for (const auto& [alpha, coeff] : sym.terms()) {
    if (alpha[0] == 2) {
      CHECK(std::abs(coeff.coefficient({0}) - Complex(1)) < 1e-12);
    } else if (alpha[0] == 0) {
      for (const auto& [mon, c] : coeff.terms())
        CHECK(std::abs(c - expect_mult.coefficient(mon)) < 1e-12);
    } else {
      for (const auto& [mon, c] : coeff.terms()) CHECK(std::abs(c) < 1e-12);
    }
  }

  // Cartan: X1^2 + X2^2 -> (1/rho) d^2/du^2 - ((rho^2 u^2 + nu)^2)/(4 rho)
  RepParams pc = RepParams::cartan(1.1, -0.7, 0.4);
  DiffOp1C symc = build_symbol(pc, {{1, 2}}) + build_symbol(pc, {{2, 2}});
  const double r = pc.rho(), nu = 0.4;
  for (const auto& [alpha, coeff] : symc.terms()) {
    if (alpha[0] == 2) {
      CHECK(std::abs(coeff.coefficient({0}) - Complex(1.0 / r)) < 1e-12);
    } else if (alpha[0] == 0) {
      CHECK(std::abs(coeff.coefficient({4}) - Complex(-r * r * r / 4.0)) < 1e-12);
      CHECK(std::abs(coeff.coefficient({2}) - Complex(-nu * r / 2.0 / 1.0)) < 1e-9);
      CHECK(std::abs(coeff.coefficient({0}) - Complex(-nu * nu / (4.0 * r))) < 1e-12);
    } else {
      for (const auto& [mon, c] : coeff.terms()) CHECK(std::abs(c) < 1e-12);
    }
  }
}

TEST_CASE("negative powers only for nonzero scalar symbols") {
  RepParams p = RepParams::engel(2.0, 0.0);
  DiffOp1C inv2 = build_symbol(p, {{4, -2}});
  // (i 2)^{-2} = -1/4
  auto coeff = inv2.terms().begin()->second;
  CHECK(std::abs(coeff.coefficient({0}) - Complex(-0.25)) < 1e-15);
  CHECK_THROWS_AS(build_symbol(p, {{3, -1}}), std::invalid_argument);
  RepParams pc = RepParams::cartan(1.0, 0.0, 0.0);
  CHECK_THROWS_AS(build_symbol(pc, {{5, -2}}), std::invalid_argument);
}

TEST_CASE("grid path with cubic interpolation stays close to the exact path") {
  Grid1D grid(12.0, 1024);
  RepParams p = RepParams::engel(1.0, 0.5);
  GroupElement g{GroupId::Engel, {0.37, -0.52, 0.21, 0.11}};
  GaussSum h(hermite_factor(0.0, 1.0, 0));
  GridFunction1D exact = sample(rep_apply(p, g, h), grid);
  GridFunction1D interp = rep_apply(p, g, sample(h, grid));
  CHECK(rel_l2_error(interp, exact) < 1e-4);
}
