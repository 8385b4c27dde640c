#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nilcalc/gft.hpp"
#include "nilcalc/verify.hpp"

using namespace nilcalc;

namespace {
constexpr double kPi = std::numbers::pi;
const Grid1D kGrid(12.0, 193);
}  // namespace

TEST_CASE("zero function maps to the zero kernel") {
  TestFunction f(4);
  RepParams p = RepParams::engel(1.0, 0.3);
  auto K = gft_kernel_engel(f, p, kGrid);
  CHECK(hs_norm(K.kernel) == 0.0);
}

TEST_CASE("closed-form Engel kernel matches the direct definition integral") {
  DirectQuad dq;
  dq.workers = 4;
  for (auto [l, m] : std::vector<std::pair<double, double>>{{1.0, 0.0}, {1.0, 0.7}, {2.0, -1.0}}) {
    RepParams p = RepParams::engel(l, m);
    for (int which = 0; which < 3; ++which) {
      TestFunction f = gft_suite_f(GroupId::Engel, which);
      auto closed = gft_kernel_engel(f, p, kGrid);
      auto direct = gft_direct(f, p, kGrid, dq);
      INFO("lambda=" << l << " mu=" << m << " f=" << which);
      CHECK(rel_hs_error(closed.kernel, direct.kernel) < 1e-3);
    }
  }
}

TEST_CASE("the definition integral fixes the kernel constant at (2 pi)^{3/2}") {
  // the statement's 2 pi and the proof's 2 pi^{3/2} both fail the oracle
  RepParams p = RepParams::engel(1.0, 0.7);
  TestFunction f = gft_suite_f(GroupId::Engel, 0);
  auto direct = gft_direct(f, p, kGrid);
  auto consistent = gft_kernel_engel(f, p, kGrid, KernelScale::Consistent);
  auto stmt = gft_kernel_engel(f, p, kGrid, KernelScale::TwoPi);
  auto proof = gft_kernel_engel(f, p, kGrid, KernelScale::TwoPiPow32);
  CHECK(rel_hs_error(consistent.kernel, direct.kernel) < 1e-3);
  CHECK(rel_hs_error(stmt.kernel, direct.kernel) > 0.5);
  CHECK(rel_hs_error(proof.kernel, direct.kernel) > 0.2);
}

TEST_CASE("coordinate duality: kernel(x1 f) = (u - v) kernel(f)") {
  RepParams p = RepParams::engel(1.0, 0.7);
  TestFunction f = gft_suite_f(GroupId::Engel, 1);
  auto K = gft_kernel_engel(f, p, kGrid).kernel;
  auto Kx1 = gft_kernel_engel(f.mul_coordinate(0), p, kGrid).kernel;
  double max_err = 0, scale = 0;
  for (int j = 0; j < kGrid.N; ++j)
    for (int k = 0; k < kGrid.N; ++k) {
      Complex expect = (kGrid.node(j) - kGrid.node(k)) * K.at(j, k);
      max_err = std::max(max_err, std::abs(Kx1.at(j, k) - expect));
      scale = std::max(scale, std::abs(expect));
    }
  CHECK(max_err < 1e-12 * std::max(scale, 1.0));
}

TEST_CASE("left-field covariance: kernel(X_i f) = pi(X_i) o kernel(f)") {
  RepParams p = RepParams::engel(1.0, 0.5);
  TestFunction f = gft_suite_f(GroupId::Engel, 0);
  // X4 = d4: kernel of d4 f must equal i lambda times kernel of f
  TestFunction d4f = f.derivative(3);
  auto K = gft_kernel_engel(f, p, kGrid).kernel;
  auto K4 = gft_kernel_engel(d4f, p, kGrid).kernel;
  KernelMatrix expect = K;
  expect.scale(Complex(0, p.lambda));
  CHECK(rel_hs_error(K4, expect) < 1e-10);

  // X3 = d3 - x1 d4: pi(X3) = -i lambda u
  TestFunction x3f = f.derivative(2);
  {
    TestFunction t = f.mul_coordinate(0).derivative(3);
    for (auto& term : t.terms) term.amp = -term.amp;
    x3f.terms.insert(x3f.terms.end(), t.terms.begin(), t.terms.end());
  }
  auto K3 = gft_kernel_engel(x3f, p, kGrid).kernel;
  KernelMatrix expect3 = K;
  expect3.diag_left([&](double u) { return Complex(0, -p.lambda * u); });
  CHECK(rel_hs_error(K3, expect3) < 1e-8);
}

TEST_CASE("Cartan direct kernel: X4 and X5 moment consistency") {
  RepParams p = RepParams::cartan(1.0, 0.7, 0.3);
  Grid1D grid(12.0, 129);
  TestFunction f = gft_suite_f(GroupId::Cartan, 0);
  DirectQuad dq;
  dq.workers = 4;
  auto K = gft_direct(f, p, grid, dq).kernel;
  auto K4 = gft_direct(f.derivative(3), p, grid, dq).kernel;
  KernelMatrix e4 = K;
  e4.scale(Complex(0, p.lambda));
  CHECK(rel_hs_error(K4, e4) < 1e-6);
  auto K5 = gft_direct(f.derivative(4), p, grid, dq).kernel;
  KernelMatrix e5 = K;
  e5.scale(Complex(0, p.mu));
  CHECK(rel_hs_error(K5, e5) < 1e-6);
}

TEST_CASE("Cartan direct kernel: X3 covariance fixes the corrected sign") {
  RepParams p = RepParams::cartan(1.0, 0.7, 0.3);
  Grid1D grid(12.0, 129);
  TestFunction f = gft_suite_f(GroupId::Cartan, 0);
  DirectQuad dq;
  dq.workers = 4;
  auto K = gft_direct(f, p, grid, dq).kernel;
  // X3 f = d3 f - x1 d4 f - x2 d5 f; kernel must equal pi(X3) K = -i rho u K
  TestFunction x3f = f.derivative(2);
  auto append_neg = [&](TestFunction t) {
    for (auto& term : t.terms) term.amp = -term.amp;
    x3f.terms.insert(x3f.terms.end(), t.terms.begin(), t.terms.end());
  };
  append_neg(f.mul_coordinate(0).derivative(3));
  append_neg(f.mul_coordinate(1).derivative(4));
  auto K3 = gft_direct(x3f, p, grid, dq).kernel;
  KernelMatrix expect = K;
  expect.diag_left([&](double u) { return Complex(0, -p.rho() * u); });
  CHECK(rel_hs_error(K3, expect) < 1e-5);
}

TEST_CASE("narrow Gaussian of unit mass approximates the identity operator") {
  // pi(f) h -> h for f -> delta at e
  RepParams p = RepParams::engel(1.0, 0.4);
  const double w = 0.05;
  const double mass = std::pow(2.0 * kPi, 2.0) * std::pow(w, 4.0);  // int of the 4D Gaussian
  TestFunction f = TestFunction::gaussian(4, {0, 0, 0, 0}, {w, w, w, w}, Complex(1.0 / mass));
  Grid1D grid(12.0, 257);
  auto K = gft_kernel_engel(f, p, grid).kernel;
  GaussSum h(hermite_factor(0.0, 1.0, 0));
  GridFunction1D hg = sample(h, grid);
  GridFunction1D out = K.apply(hg);
  CHECK(rel_l2_error(out, hg) < 5e-2);
}

TEST_CASE("Kohn-Nirenberg route agrees with the kernel route") {
  RepParams p = RepParams::engel(1.0, 0.5);
  TestFunction f = gft_suite_f(GroupId::Engel, 0);
  GaussSum h(hermite_factor(0.1, 1.0, 0));
  GridFunction1D hg = sample(h, kGrid);
  auto K = gft_kernel_engel(f, p, kGrid).kernel;
  GridFunction1D via_kernel = K.apply(hg);
  GridFunction1D via_kn = kn_quantize(kn_symbol(f, p), hg);
  CHECK(rel_l2_error(via_kn, via_kernel) < 1e-3);

  TestFunction zero(4);
  GridFunction1D z = kn_quantize(kn_symbol(TestFunction::gaussian(4, {0, 0, 0, 0}, {1, 1, 1, 1},
                                                                  Complex(0)),
                                           p),
                                 hg);
  for (auto v : z.samples) CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("semianalytic HS norm matches the kernel-matrix norm") {
  RepParams p = RepParams::engel(0.8, -0.4);
  TestFunction f = gft_suite_f(GroupId::Engel, 2);
  Grid1D grid(14.0, 385);
  auto K = gft_kernel_engel(f, p, grid).kernel;
  double a = hs_norm(K);
  double b = std::sqrt(engel_hs_norm_sq(f, p));
  CHECK(a == doctest::Approx(b).epsilon(1e-5));
}

TEST_CASE("HS norm is stable under grid refinement") {
  RepParams p = RepParams::engel(1.0, 0.7);
  TestFunction f = gft_suite_f(GroupId::Engel, 0);
  Grid1D g1(12.0, 385), g2(12.0, 769);
  double n1 = hs_norm(gft_kernel_engel(f, p, g1).kernel);
  double n2 = hs_norm(gft_kernel_engel(f, p, g2).kernel);
  CHECK(std::abs(n1 - n2) / n2 < 1e-5);
}

TEST_CASE("Plancherel ratio is the same constant for distinct Gaussians") {
  std::vector<double> ratios;
  for (int which = 0; which < 3; ++which) {
    PlancherelResult r = plancherel_check(gft_suite_f(GroupId::Engel, which));
    CHECK(r.lhs > 0);
    CHECK(r.rhs_unnormalized > 0);
    ratios.push_back(r.ratio);
  }
  double rmin = *std::min_element(ratios.begin(), ratios.end());
  double rmax = *std::max_element(ratios.begin(), ratios.end());
  CHECK((rmax - rmin) / rmax < 0.01);
  // the arbitrated constant: 1/(16 pi^3) for the (2 pi)^{3/2} kernel
  CHECK(ratios[0] == doctest::Approx(1.0 / (16.0 * kPi * kPi * kPi)).epsilon(5e-3));
}

TEST_CASE("Plancherel scaling invariance and zero input") {
  TestFunction f = gft_suite_f(GroupId::Engel, 0);
  PlancherelResult r1 = plancherel_check(f);
  PlancherelResult r2 = plancherel_check(f.scaled(Complex(0, 2.0)));
  CHECK(r2.lhs == doctest::Approx(4.0 * r1.lhs).epsilon(1e-12));
  CHECK(r2.ratio == doctest::Approx(r1.ratio).epsilon(1e-10));
  TestFunction zero(4);
  PlancherelResult rz = plancherel_check(zero);
  CHECK(rz.lhs == 0.0);
  CHECK(rz.rhs_unnormalized == 0.0);
}

TEST_CASE("Fourier inversion reconstructs point values") {
  TestFunction f = gft_suite_f(GroupId::Engel, 1);
  PlancherelResult pr = plancherel_check(f);
  for (auto pt : std::vector<std::vector<double>>{
           {0, 0, 0, 0}, {0.3, -0.2, 0.1, 0.4}, {-0.5, 0.2, -0.3, 0.1}}) {
    GroupElement x{GroupId::Engel, pt};
    Complex rec = inverse_gft_engel(f, x, {}, pr.ratio);
    Complex exact = f.eval(pt);
    INFO("point (" << pt[0] << "," << pt[1] << "," << pt[2] << "," << pt[3] << ")");
    CHECK(std::abs(rec - exact) / std::abs(exact) < 2e-2);
  }
  TestFunction zero(4);
  CHECK(std::abs(inverse_gft_engel(zero, GroupElement::identity(GroupId::Engel))) == 0.0);
}
