#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilcalc/gft.hpp"

namespace nilcalc {

/// Printed coefficient tables of the Cartan difference-operator formulas for
/// x4 and x5 (rational functions of lambda, mu, nu evaluated numerically).
struct BCoefficients {
  double b1_1, b1_2;    // b_1^1 + b_1^2 u^2 on Delta_{x1}
  double b2_1, b2_2;    // b_2^1 + b_2^2 u^2 on Delta_{x2}
  double b12;           // u b_{1,2} on Delta_{x1}Delta_{x2} (x4 case only; 0 for x5)
  double b112, b122, b111, b222;
};
BCoefficients coeff_tables(int which /* 4 or 5 */, double lambda, double mu, double nu);

/// One monomial term of a phase-derivative expansion: coefficient of
/// x^xpow * u^upow in d(i A*)/dparam / i.
struct DerivEntry {
  std::vector<int> xpow;  // exponents of x1..xn
  int upow;
  double coeff;
};

struct DerivTable {
  std::vector<DerivEntry> entries;
  double shift_dx1 = 0;  // d(-shift)/dparam = shift_dx1 * x1 + shift_dx2 * x2
  double shift_dx2 = 0;
};

/// Exact expansion of the adjoint-phase parameter derivative, computed with
/// dual-number rational arithmetic from the group's phase polynomial.
/// param: 'l' (lambda), 'm' (mu), 'n' (nu).
DerivTable phase_derivative_table(GroupId group, char param, double lambda, double mu, double nu);

/// Side-by-side comparison of the printed Cartan b-tables with the derived
/// expansion (the printed x4/x5 propositions were found inconsistent with the
/// group law; the oracle arbitrates).
struct CoeffComparison {
  std::string monomial;
  double printed;
  double derived;
};
std::vector<CoeffComparison> compare_coeff_tables(int which, double lambda, double mu, double nu);

/// Difference-operator evaluation context: caches the group Fourier
/// transforms of monomial multiples of kappa and the parameter-shifted
/// kernel families.
class DeltaWorkspace {
public:
  DeltaWorkspace(TestFunction kappa, RepParams params, Grid1D grid, DirectQuad quad = {},
                 KernelScale scale = KernelScale::Consistent, double fd_step = 1e-3);

  const RepParams& params() const { return params_; }
  const Grid1D& grid() const { return grid_; }
  double fd_step() const { return fd_step_; }

  /// pi(x^alpha kappa): closed form for Engel, direct quadrature for Cartan.
  const KernelMatrix& monomial_kernel(const std::vector<int>& xpow);

  /// Definitional oracle Delta_{x_i}: pi(x_i kappa).
  const KernelMatrix& delta_direct(int i);

  /// Central difference with one Richardson step of the kernel family in a
  /// representation parameter ('l','m','n').
  KernelMatrix param_derivative(char param);

  /// The difference-operator formulas (right-hand sides of the propositions).
  KernelMatrix delta_formula(int i);

private:
  TestFunction kappa_;
  RepParams params_;
  Grid1D grid_;
  DirectQuad quad_;
  KernelScale scale_;
  double fd_step_;
  std::map<std::vector<int>, KernelMatrix> cache_;
  std::map<std::string, KernelMatrix> deriv_cache_;

  KernelMatrix kernel_at(const TestFunction& f, const RepParams& p) const;
  KernelMatrix delta_engel(int i);
  KernelMatrix delta_cartan(int i);
  KernelMatrix assemble_from_table(char param, const std::vector<int>& target);
};

/// Central difference (K(p+step) - K(p-step)) / (2 step) with one Richardson
/// refinement for an arbitrary kernel family (oracle hook for the
/// convergence-order tests).
KernelMatrix central_difference_family(const std::function<KernelMatrix(double)>& family, double at,
                                       double step, double* richardson_error = nullptr);

struct DeltaReport {
  GroupId group;
  int index;
  double lambda, mu, nu;
  double fd_step;
  double rel_hs_error;
};

/// Oracle-equivalence report for one case.
DeltaReport run_delta_case(DeltaWorkspace& ws, int i);

}  // namespace nilcalc
