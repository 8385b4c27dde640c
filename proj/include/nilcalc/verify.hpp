#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nilcalc/diffops.hpp"
#include "nilcalc/gft.hpp"

namespace nilcalc {

/// Exact algebra checks (rational arithmetic throughout): bracket tables,
/// field formulas against the law, left/right commutation, Jacobi, the proof
/// identities of the difference-operator propositions, group axioms,
/// dilations, sub-Laplacian expansion.
std::vector<std::pair<std::string, bool>> run_algebra_checks(GroupId group);

/// Symbolic homomorphism check of the representation phase:
/// A_{xy}(u) - A_x(u) - A_y(u + s(x)) == 0 as a polynomial identity over
/// exact rationals at the given (rationalized) parameters.
bool verify_phase_cocycle(GroupId group, double lambda, double mu, double nu);

struct RepSuiteResult {
  double homomorphism_err;
  double unitarity_err;
  double adjoint_pairing_err;
  double infinitesimal_err;
  double bracket_err;
  bool pass() const {
    return homomorphism_err <= 1e-6 && unitarity_err <= 1e-6 && adjoint_pairing_err <= 1e-6 &&
           infinitesimal_err <= 1e-5 && bracket_err <= 1e-12;
  }
};
RepSuiteResult run_rep_suite(GroupId group, int draws, const Grid1D& grid, unsigned long long seed);

/// The fixed Gaussian-Hermite test-function suite used by the GFT and
/// difference-operator checks (index 0..2).
TestFunction gft_suite_f(GroupId group, int which);

/// Oracle-equivalence reports for every difference-operator formula of the
/// group on the fixed kappa/parameter suite.
std::vector<DeltaReport> run_delta_suite(GroupId group, const Grid1D& grid, int workers,
                                         double fd_step = 1e-3);

}  // namespace nilcalc
