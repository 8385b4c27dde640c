#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "nilcalc/group.hpp"
#include "nilcalc/parallel.hpp"
#include "nilcalc/representation.hpp"

namespace nilcalc {

/// Confining potential of the model operator's symbol, sigma minus the
/// kinetic term. Engel: A = -(X1^2+X2^2+X3^2+X4^2+X4^{-2}),
///   V(u) = (lambda u^2 - mu/lambda)^2/4 + lambda^2 u^2 + lambda^2 + lambda^{-2}.
/// Cartan: the rescaled operator B' = (lambda^2+mu^2) B with kinetic
/// coefficient 1,
///   V(u) = (nu + rho^2 u^2)^2/4 + rho^3 u^2 + rho (lambda^2+mu^2+lambda^{-2}+mu^{-2});
/// eigenvalues of pi(B) below s are eigenvalues of B' below rho s.
std::function<double(double)> potential(const RepParams& p);

/// Threshold conversion for count queries: s for Engel, rho*s for Cartan (B').
double count_threshold(const RepParams& p, double s);

/// Symmetric tridiagonal Dirichlet discretization of -k d^2/du^2 + V on
/// [-L, L] with N interior nodes.
struct SchrodingerDisc {
  double L;
  int N;
  double kinetic;
  std::vector<double> diag;
  double offdiag;  // constant -k/h^2

  SchrodingerDisc(double half_width, int n, const std::function<double(double)>& V, double k = 1.0);
  double h() const { return 2.0 * L / (N + 1); }
  double node(int j) const { return -L + (j + 1) * h(); }
};

/// Number of eigenvalues strictly below s, by Sturm sign-change counting of
/// the LDL^T pivots of T - sI. O(N) per query, no diagonalization.
int count_below(const SchrodingerDisc& disc, double s);

/// Dirichlet half-width chosen so that V(+-L) > 4 s_max.
double auto_box(const std::function<double(double)>& V, double s_max, double L0 = 2.0);

/// Eigenvalue count for the model operator at parameters p below s, with
/// automatic box and resolution.
int model_count(const RepParams& p, double s, int n_disc = 2000);

/// Phase-space area of { xi^2 + V(u) < s }: 2 int sqrt(max(s - V, 0)) du,
/// adaptive over the classically allowed intervals.
double weyl_volume(const std::function<double(double)>& V, double s);

struct TraceSpec {
  int n_lambda = 48;
  int n_mu = 48;
  int n_nu = 48;
  int n_disc = 2000;
  int workers = 1;
  double budget_seconds = 0;  // 0 = unlimited
  unsigned long long seed = 0;
  int monte_carlo_samples = 0;  // Cartan fallback; 0 = deterministic grid
};

struct TraceResult {
  double value;
  bool partial;  // budget ran out
};

/// Quadrature of the eigenvalue count over the printed parameter boxes:
/// Engel: lambda in (s^{-1/2}, s^{1/2}) (log midpoints), mu in (-2s, 4s);
/// Cartan: lambda, mu in (s^{-1/2}, s^{1/2}), nu in (-2s, 2s), counting B'
/// below (lambda^2+mu^2) s.
TraceResult trace_estimate(GroupId group, double s, const TraceSpec& spec);

struct CountCurve {
  std::vector<double> s;
  std::vector<double> value;
};

struct SlopeFit {
  double slope;
  double intercept;
  double r_squared;
};

/// OLS fit of log(value) against log(s); requires >= 5 strictly positive points.
SlopeFit slope_fit(const CountCurve& curve);

struct MultiplierResult {
  double r;              // 1/r = 1/p - 1/q (infinity when p = q)
  double exponent;       // 3/r (Engel) or 9/(2r) (Cartan)
  double heat_constant;  // closed form (sigma/t)^sigma e^{-sigma}, 1 when sigma = 0
  double numeric_sup;    // sup_s e^{-ts} s^sigma by log-grid + golden refinement
};

/// Spectral-multiplier bound data for phi(s) = e^{-ts}.
MultiplierResult multiplier_and_heat(GroupId group, double p, double q, double t);

}  // namespace nilcalc
