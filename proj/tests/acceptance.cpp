// Acceptance suite: one criterion per invocation (argv[1] in 1..9), or all
// when no argument is given. Prints one pass/fail line per criterion and
// returns nonzero if any requested criterion fails.

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "nilcalc/report.hpp"
#include "nilcalc/spectral.hpp"
#include "nilcalc/verify.hpp"

using namespace nilcalc;

namespace {

constexpr double kPi = std::numbers::pi;
int failures = 0;

void line(int crit, bool pass, const std::string& what, const std::string& detail = "") {
  std::printf("criterion %d: %s - %s%s%s\n", crit, pass ? "PASS" : "FAIL", what.c_str(),
              detail.empty() ? "" : " ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

// 1. exact algebra identities
void criterion1() {
  bool ok = true;
  std::string bad;
  for (GroupId g : {GroupId::Engel, GroupId::Cartan}) {
    for (const auto& [name, pass] : run_algebra_checks(g)) {
      if (!pass) {
        ok = false;
        bad += name + " ";
      }
    }
  }
  ok = ok && verify_phase_cocycle(GroupId::Engel, 1.0, 0.7, 0.0);
  ok = ok && verify_phase_cocycle(GroupId::Cartan, 1.0, 0.7, 0.3);
  line(1, ok, "algebra suite exact in rational arithmetic", bad);
}

// 2. representation suite at N=1024, L=12
void criterion2() {
  Grid1D grid(12.0, 1024);
  bool ok = true;
  char buf[256];
  std::string detail;
  for (GroupId g : {GroupId::Engel, GroupId::Cartan}) {
    RepSuiteResult r = run_rep_suite(g, 100, grid, 20240607);
    ok = ok && r.pass();
    std::snprintf(buf, sizeof(buf), "[%s hom=%.2e unit=%.2e pair=%.2e inf=%.2e brk=%.2e] ",
                  g == GroupId::Engel ? "engel" : "cartan", r.homomorphism_err, r.unitarity_err,
                  r.adjoint_pairing_err, r.infinitesimal_err, r.bracket_err);
    detail += buf;
  }
  line(2, ok, "representation suite (homomorphism/unitarity/adjoint/oracle/brackets)", detail);
}

// 3. Engel GFT: closed form vs direct quadrature, Kohn-Nirenberg route
void criterion3() {
  Grid1D grid(12.0, 257);
  DirectQuad dq;
  dq.workers = default_workers();
  bool ok = true;
  double worst_hs = 0, worst_kn = 0;
  for (auto [l, m] : std::vector<std::pair<double, double>>{{1.0, 0.0}, {1.0, 0.7}, {2.0, -1.0}}) {
    RepParams p = RepParams::engel(l, m);
    for (int which = 0; which < 3; ++which) {
      TestFunction f = gft_suite_f(GroupId::Engel, which);
      auto closed = gft_kernel_engel(f, p, grid);
      auto direct = gft_direct(f, p, grid, dq);
      double e = rel_hs_error(closed.kernel, direct.kernel);
      worst_hs = std::max(worst_hs, e);
      GaussSum h(hermite_factor(0.1, 1.0, 0));
      GridFunction1D hg = sample(h, grid);
      double ekn = rel_l2_error(kn_quantize(kn_symbol(f, p), hg), direct.kernel.apply(hg));
      worst_kn = std::max(worst_kn, ekn);
      ok = ok && e <= 1e-3 && ekn <= 1e-3;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "worst hs=%.2e kn=%.2e (tol 1e-3)", worst_hs, worst_kn);
  line(3, ok, "Engel GFT closed form vs direct and Kohn-Nirenberg", buf);
}

// 4. Plancherel constancy and Fourier inversion
void criterion4() {
  std::vector<double> ratios;
  for (int which = 0; which < 3; ++which)
    ratios.push_back(plancherel_check(gft_suite_f(GroupId::Engel, which)).ratio);
  double rmin = *std::min_element(ratios.begin(), ratios.end());
  double rmax = *std::max_element(ratios.begin(), ratios.end());
  bool ok = (rmax - rmin) / rmax <= 0.01;
  TestFunction f = gft_suite_f(GroupId::Engel, 1);
  double cinv = plancherel_check(f).ratio;
  double worst = 0;
  for (auto pt : std::vector<std::vector<double>>{
           {0, 0, 0, 0}, {0.3, -0.2, 0.1, 0.4}, {-0.5, 0.2, -0.3, 0.1}}) {
    GroupElement x{GroupId::Engel, pt};
    Complex rec = inverse_gft_engel(f, x, {}, cinv);
    Complex exact = f.eval(pt);
    worst = std::max(worst, std::abs(rec - exact) / std::abs(exact));
  }
  ok = ok && worst <= 2e-2;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "empirical constant=%.6e (1/(16 pi^3)=%.6e), spread=%.2e, inversion worst=%.2e",
                0.5 * (rmin + rmax), 1.0 / (16.0 * kPi * kPi * kPi), (rmax - rmin) / rmax, worst);
  line(4, ok, "Plancherel ratio constant within 1% and inversion within 2e-2", buf);
}

// 5. all nine difference-operator formulas against pi(x_i kappa)
void criterion5() {
  bool ok = true;
  double worst_engel = 0, worst_cartan_low = 0, worst_cartan_high = 0;
  {
    Grid1D grid(12.0, 1024);
    for (const auto& r : run_delta_suite(GroupId::Engel, grid, default_workers())) {
      worst_engel = std::max(worst_engel, r.rel_hs_error);
      ok = ok && r.rel_hs_error <= 1e-3;
    }
  }
  {
    Grid1D grid(12.0, 513);
    for (const auto& r : run_delta_suite(GroupId::Cartan, grid, default_workers())) {
      double tol = r.index >= 4 ? 5e-3 : 1e-3;
      if (r.index >= 4)
        worst_cartan_high = std::max(worst_cartan_high, r.rel_hs_error);
      else
        worst_cartan_low = std::max(worst_cartan_low, r.rel_hs_error);
      ok = ok && r.rel_hs_error <= tol;
    }
  }
  // nesting consistency: Delta_{x2} Delta_{x1} by recursion vs pi(x1 x2 kappa)
  double nest = 0;
  {
    Grid1D grid(12.0, 513);
    TestFunction kappa = gft_suite_f(GroupId::Engel, 0);
    RepParams p = RepParams::engel(1.0, 0.7);
    DeltaWorkspace ws(kappa, p, grid);
    DeltaWorkspace ws1(kappa.mul_coordinate(0), p, grid);
    nest = rel_hs_error(ws1.delta_formula(2), ws.monomial_kernel({1, 1, 0, 0}));
    ok = ok && nest <= 2e-3;
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "worst engel=%.2e (tol 1e-3) cartan x1..x3=%.2e (1e-3) x4/x5=%.2e (5e-3) nesting=%.2e (2e-3)",
                worst_engel, worst_cartan_low, worst_cartan_high, nest);
  line(5, ok, "difference operators vs definitional oracle", buf);
}

// 6. spectral growth rates (slope windows from the claimed exponents)
void criterion6() {
  const int workers = default_workers();
  char buf[320];
  bool ok = true;

  // Engel N_A(s) at (1,1) over s in [1e2, 1e4]; claimed exponent 3/2
  CountCurve na;
  RepParams pe = RepParams::engel(1.0, 1.0);
  for (int k = 0; k < 9; ++k) {
    double s = 100.0 * std::pow(100.0, k / 8.0);
    na.s.push_back(s);
    na.value.push_back(double(model_count(pe, s, 3000)));
  }
  double slope_na = slope_fit(na).slope;
  bool ok_na = slope_na >= 1.4 && slope_na <= 1.6;

  // Engel trace over s in [10, 1e3]; claimed exponent 3
  TraceSpec te;
  te.workers = workers;
  CountCurve tr;
  for (int k = 0; k < 10; ++k) {
    double s = 10.0 * std::pow(100.0, k / 9.0);
    tr.s.push_back(s);
    tr.value.push_back(trace_estimate(GroupId::Engel, s, te).value);
  }
  double slope_tr = slope_fit(tr).slope;
  bool ok_tr = slope_tr >= 2.7 && slope_tr <= 3.3;

  // Cartan N_{B'} at (1, 0.7, 0.3) over s in [1e2, 1e4]; claimed exponent 5/2
  CountCurve nb;
  RepParams pc = RepParams::cartan(1.0, 0.7, 0.3);
  for (int k = 0; k < 9; ++k) {
    double s = 100.0 * std::pow(100.0, k / 8.0);
    nb.s.push_back(s);
    nb.value.push_back(double(model_count(pc, s, 3000)));
  }
  double slope_nb = slope_fit(nb).slope;
  bool ok_nb = slope_nb >= 2.3 && slope_nb <= 2.7;

  // Cartan trace over s in [10, 200]; claimed exponent 9/2
  TraceSpec tc;
  tc.workers = workers;
  tc.n_lambda = tc.n_mu = 32;
  tc.n_nu = 48;
  CountCurve trc;
  for (int k = 0; k < 8; ++k) {
    double s = 10.0 * std::pow(20.0, k / 7.0);
    trc.s.push_back(s);
    trc.value.push_back(trace_estimate(GroupId::Cartan, s, tc).value);
  }
  double slope_trc = slope_fit(trc).slope;
  bool ok_trc = slope_trc >= 4.1 && slope_trc <= 4.9;

  ok = ok_na && ok_tr && ok_nb && ok_trc;
  // the printed rates are one-sided bounds; report whether the measured growth
  // stays below them, alongside the two-sided window verdicts
  bool bounds_hold = slope_na <= 1.6 && slope_tr <= 3.3 && slope_nb <= 2.7 && slope_trc <= 4.9;
  std::snprintf(buf, sizeof(buf),
                "slopes: N_A=%.2f (window [1.4,1.6]) trace_E=%.2f ([2.7,3.3]) N_B'=%.2f "
                "([2.3,2.7]) trace_C=%.2f ([4.1,4.9]); upper bounds hold: %s",
                slope_na, slope_tr, slope_nb, slope_trc, bounds_hold ? "yes" : "no");
  line(6, ok, "spectral growth slope windows", buf);
}

// 7. heat decay closed forms
void criterion7() {
  bool ok = true;
  double worst_sup = 0, worst_slope = 0;
  for (GroupId g : {GroupId::Engel, GroupId::Cartan}) {
    for (auto [p, q] : std::vector<std::pair<double, double>>{{1.5, 3.0}, {2.0, 2.0}, {1.25, 5.0}}) {
      for (double t : {0.3, 1.0, 4.0}) {
        MultiplierResult r = multiplier_and_heat(g, p, q, t);
        worst_sup = std::max(worst_sup, std::abs(r.numeric_sup - r.heat_constant) /
                                            std::max(1.0, std::abs(r.heat_constant)));
      }
      CountCurve tc;
      for (int k = 0; k < 9; ++k) {
        double t = 0.1 * std::pow(100.0, k / 8.0);
        tc.s.push_back(t);
        tc.value.push_back(multiplier_and_heat(g, p, q, t).numeric_sup);
      }
      MultiplierResult r = multiplier_and_heat(g, p, q, 1.0);
      if (r.exponent > 0) worst_slope = std::max(worst_slope, std::abs(slope_fit(tc).slope + r.exponent));
    }
  }
  ok = worst_sup <= 1e-10 && worst_slope <= 1e-3;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "sup err=%.2e (tol 1e-10), slope err=%.2e (tol 1e-3)", worst_sup,
                worst_slope);
  line(7, ok, "heat-decay closed form (3/(tr))^{3/r} e^{-3/r} and t-slopes", buf);
}

// 8. counting oracles
void criterion8() {
  bool ok = true;
  // Sturm vs full diagonalization, N <= 400, exact integer agreement
  for (int n : {120, 250, 400}) {
    RepParams p = RepParams::engel(1.0, 0.5);
    auto V = potential(p);
    SchrodingerDisc d(10.0, n, V);
    for (double s : {5.0, 50.0, 300.0}) {
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(d.N, d.N);
      for (int j = 0; j < d.N; ++j) {
        T(j, j) = d.diag[size_t(j)];
        if (j + 1 < d.N) T(j, j + 1) = T(j + 1, j) = d.offdiag;
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
      int brute = 0;
      for (int j = 0; j < d.N; ++j)
        if (es.eigenvalues()[j] < s) ++brute;
      ok = ok && (count_below(d, s) == brute);
    }
  }
  // harmonic oscillator counts
  auto V = [](double u) { return u * u; };
  SchrodingerDisc d(12.0, 2000, V);
  ok = ok && count_below(d, 2.0) == 1 && count_below(d, 10.0) == 5 && count_below(d, 20.0) == 10;
  // Weyl volume of xi^2 + u^2
  double werr = 0;
  for (double s : {1.0, 9.0, 100.0})
    werr = std::max(werr, std::abs(weyl_volume(V, s) - kPi * s) / (kPi * s));
  ok = ok && werr <= 1e-8;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "weyl harmonic rel err=%.2e (tol 1e-8)", werr);
  line(8, ok, "Sturm/diagonalization/harmonic/Weyl oracles", buf);
}

// 9. determinism and worker-count independence of reports
void criterion9() {
  auto build_report = [&](int workers) {
    Grid1D grid(12.0, 129);
    CsvTable csv;
    csv.header = {"group", "i", "lambda", "mu", "nu", "fd_step", "rel_hs_error"};
    for (const auto& r : run_delta_suite(GroupId::Engel, grid, workers))
      csv.rows.push_back({"engel", std::to_string(r.index), format_double(r.lambda),
                          format_double(r.mu), format_double(r.nu), format_double(r.fd_step),
                          format_double(r.rel_hs_error)});
    TraceSpec spec;
    spec.workers = workers;
    spec.n_lambda = spec.n_mu = 16;
    spec.n_disc = 800;
    csv.rows.push_back({"trace", format_double(trace_estimate(GroupId::Engel, 25.0, spec).value)});
    return csv.to_string();
  };
  std::string a = build_report(1);
  std::string b = build_report(8);
  std::string c = build_report(8);
  bool ok = (a == b) && (b == c);
  line(9, ok, "byte-identical reports across repeated runs and worker counts",
       ok ? "" : "mismatch");
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::function<void()>> crits = {criterion1, criterion2, criterion3,
                                              criterion4, criterion5, criterion6,
                                              criterion7, criterion8, criterion9};
  if (argc > 1) {
    int k = std::atoi(argv[1]);
    if (k < 1 || k > 9) {
      std::fprintf(stderr, "usage: acceptance [1..9]\n");
      return 2;
    }
    crits[size_t(k - 1)]();
  } else {
    for (auto& f : crits) f();
  }
  return failures == 0 ? 0 : 1;
}
