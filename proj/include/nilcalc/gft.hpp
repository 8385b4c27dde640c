#pragma once

#include <functional>
#include <optional>

#include "nilcalc/gauss.hpp"
#include "nilcalc/kernels.hpp"
#include "nilcalc/representation.hpp"

namespace nilcalc {

/// Overall constant in the closed-form Engel kernel
///   K(u,v) = c * F_{R^3}(f)(u-v, lambda v^2/2 - mu/(2 lambda), -lambda v, lambda).
/// The source prints 2*pi in the statement and 2*pi^{3/2} in the proof; the
/// value that matches the definition integral (and the one the direct-
/// quadrature oracle confirms) is (2*pi)^{3/2}, the default here.
enum class KernelScale { TwoPi, TwoPiPow32, Consistent };
double kernel_scale_value(KernelScale s);

enum class Provenance { ClosedForm, Direct };

struct GFTResult {
  RepParams params;
  KernelMatrix kernel;
  Provenance provenance;
};

/// Quadrature controls for the direct route.
struct DirectQuad {
  double support_sigmas = 10.0;  // per-factor support radius in widths
  double mag_cutoff = 1e-15;     // relative screen for kernel entries
  int base_nodes = 96;
  int max_nodes = 2400;
  int workers = 1;
};

/// Closed-form Engel kernel via the partial Fourier transform in axes 2..4.
GFTResult gft_kernel_engel(const TestFunction& f, const RepParams& params, const Grid1D& grid,
                           KernelScale scale = KernelScale::Consistent);

/// Definition-route kernel of pi(f): the axes that enter the phase affinely
/// are integrated in closed form (Engel: x3, x4; Cartan: x3, x4, x5), the
/// remaining axes by adaptive Gauss-Legendre quadrature. Serves as the
/// independent oracle for the closed form and as the only kernel route for
/// the Cartan group.
GFTResult gft_direct(const TestFunction& f, const RepParams& params, const Grid1D& grid,
                     const DirectQuad& quad = {});

/// Kohn-Nirenberg symbol a(v, xi) of the Engel group Fourier transform of f.
struct KNSymbol {
  RepParams params;
  std::function<Complex(double, double)> a;
  double xi_decay_halfwidth;  // Gaussian support bound in xi
};
KNSymbol kn_symbol(const TestFunction& f, const RepParams& params);

/// Op(a) h by 2D quadrature of the Kohn-Nirenberg integral; agrees with the
/// kernel routes applied to h.
GridFunction1D kn_quantize(const KNSymbol& symbol, const GridFunction1D& h, int xi_nodes = 400);

struct PlancherelSpec {
  double lambda_min = 5e-3;
  double lambda_max = 12.0;
  double mu_cap = 1e5;
  int n_lambda = 96;  // log-scale nodes per sign
  int n_mu = 96;
  int n_v = 400;
  KernelScale scale = KernelScale::Consistent;
};

struct PlancherelResult {
  double lhs;                // ||f||^2_{L2(R^4)} in closed form
  double rhs_unnormalized;   // int int ||fhat||_HS^2 dmu dlambda
  double ratio;              // lhs / rhs
  double tail_fraction;      // estimated discarded mass fraction
  bool warning;              // tail above threshold
};

/// Squared Hilbert-Schmidt norm of the Engel group Fourier transform at
/// (lambda, mu): the u-integral is separated analytically, the v-integral is
/// Gauss-Legendre. Matches hs_norm(gft_kernel_engel(...))^2.
double engel_hs_norm_sq(const TestFunction& f, const RepParams& params, int n_v = 400,
                        KernelScale scale = KernelScale::Consistent);

PlancherelResult plancherel_check(const TestFunction& f, const PlancherelSpec& spec = {});

/// Fourier inversion at a point: c_inv * int int Tr(pi(x) fhat(pi)) dmu dlambda,
/// with c_inv the empirical Plancherel ratio (pass the value reported by
/// plancherel_check; by default the analytically consistent 1/(16 pi^3)).
Complex inverse_gft_engel(const TestFunction& f, const GroupElement& x,
                          const PlancherelSpec& spec = {},
                          std::optional<double> c_inv = std::nullopt);

}  // namespace nilcalc
