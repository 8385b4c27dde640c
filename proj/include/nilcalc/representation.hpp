#pragma once

#include <complex>
#include <vector>

#include "nilcalc/diffop.hpp"
#include "nilcalc/gauss.hpp"
#include "nilcalc/grid.hpp"
#include "nilcalc/group.hpp"

namespace nilcalc {

/// Parameters of the Schrodinger-type representations. The Engel family is
/// indexed by (lambda, mu) with lambda != 0; the Cartan family by
/// (lambda, mu, nu) with lambda^2 + mu^2 != 0.
struct RepParams {
  GroupId group;
  double lambda = 1.0;
  double mu = 0.0;
  double nu = 0.0;

  static RepParams engel(double lambda, double mu);
  static RepParams cartan(double lambda, double mu, double nu);
  void validate() const;
  double rho() const { return lambda * lambda + mu * mu; }
};

/// u-shift of pi(g): x1 for Engel, (lambda x1 + mu x2)/(lambda^2+mu^2) for Cartan.
double rep_shift(const RepParams& p, const GroupElement& g);

/// Coefficients of the real phase A_g(u) = a2 u^2 + a1 u + a0 with
/// pi(g)h(u) = exp(i A_g(u)) h(u + shift).
///
/// Engel is the printed phase. The Cartan phase is rebuilt from the group's
/// one-parameter subgroups (the printed display drops the x3 term and is not
/// a group homomorphism); it reproduces the printed pi(X_i) generators with
/// pi(X3) = -i(lambda^2+mu^2)u, the sign that matches the Engel convention
/// and the only one that integrates against this group law.
struct PhaseCoeffs {
  double a2, a1, a0;
  double eval(double u) const { return (a2 * u + a1) * u + a0; }
};
PhaseCoeffs rep_phase(const RepParams& p, const GroupElement& g);

/// pi(g) h, exact within the Gaussian class.
GaussSum rep_apply(const RepParams& p, const GroupElement& g, const GaussSum& h);
/// pi(g)* h = pi(g^{-1}) h.
GaussSum rep_adjoint_apply(const RepParams& p, const GroupElement& g, const GaussSum& h);

/// Grid path (cubic interpolation for the shift); demo quality.
GridFunction1D rep_apply(const RepParams& p, const GroupElement& g, const GridFunction1D& h);

/// One-variable operator with complex coefficients; the home of pi(X_i).
using DiffOp1C = DiffOp<Complex>;

/// The infinitesimal operator pi(X_i), i in 1..dim.
DiffOp1C infinitesimal(const RepParams& p, int i);

/// exp(t X_i) as a group element (the coordinate axis t e_i; each axis is a
/// one-parameter subgroup of the printed law).
GroupElement exp_basis(GroupId group, int i, double t);

/// Definitional oracle: Richardson-extrapolated central difference of
/// t -> pi(exp(t X_i)) h at t = 0, sampled on a grid.
GridFunction1D infinitesimal_oracle(const RepParams& p, int i, const GaussSum& h, double t_step,
                                    const Grid1D& grid);

/// Apply a one-variable operator to a Gaussian-class vector (exact).
GaussSum apply_op(const DiffOp1C& op, const GaussSum& h);

/// Composed symbol for a list of (basis index, integer power); negative
/// powers are admitted only where pi(X_i) is a nonzero scalar.
DiffOp1C build_symbol(const RepParams& p, const std::vector<std::pair<int, int>>& spec);

}  // namespace nilcalc
