#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "nilcalc/grid.hpp"

namespace nilcalc {

/// Univariate polynomial with complex coefficients, coeffs[k] * t^k.
struct PolyC {
  std::vector<Complex> coeffs;

  PolyC() : coeffs{Complex(0)} {}
  explicit PolyC(std::vector<Complex> c) : coeffs(std::move(c)) { trim(); }
  static PolyC one() { return PolyC({Complex(1)}); }
  static PolyC monomial(int k, Complex a = Complex(1));

  int degree() const { return int(coeffs.size()) - 1; }
  Complex eval(Complex t) const {
    Complex acc(0);
    for (size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k];
    return acc;
  }
  PolyC derivative() const;
  PolyC shifted(Complex a) const;  // p(t + a)
  void trim();

  friend PolyC operator+(const PolyC& p, const PolyC& q);
  friend PolyC operator*(const PolyC& p, const PolyC& q);
  friend PolyC operator*(Complex s, const PolyC& p);
};

/// One term of the complex Gaussian class
///   f(t) = amp * poly(t) * exp(-z t^2 / 2 + w t),    Re z > 0.
/// The class is closed under Fourier transform, shifts, multiplication by
/// polynomials and by quadratic phases exp(i(a t^2 + b t + c)) -- everything
/// the representation formulas throw at a Schwartz test function.
struct GaussTerm {
  Complex amp{1.0, 0.0};
  Complex z{1.0, 0.0};
  Complex w{0.0, 0.0};
  PolyC poly = PolyC::one();

  Complex eval(double t) const {
    return amp * poly.eval(t) * std::exp(-0.5 * z * t * t + w * t);
  }
};

/// Finite sum of GaussTerm: a 1D Schwartz-class function in closed form.
struct GaussSum {
  std::vector<GaussTerm> terms;

  GaussSum() = default;
  explicit GaussSum(GaussTerm t) : terms{std::move(t)} {}

  Complex eval(double t) const {
    Complex s(0);
    for (const auto& g : terms) s += g.eval(t);
    return s;
  }
  GaussSum& operator+=(const GaussSum& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    return *this;
  }
  bool empty() const { return terms.empty(); }
};

/// Gaussian-Hermite descriptor: (t - center)^degree * exp(-(t-center)^2/(2 width^2)).
GaussTerm hermite_factor(double center, double width, int degree, Complex amp = Complex(1));

/// Unitary-convention Fourier transform F(f)(xi) = (2pi)^{-1/2} int f(t) e^{-i t xi} dt,
/// exact within the class.
GaussTerm fourier(const GaussTerm& f);
GaussSum fourier(const GaussSum& f);

/// Exact operations within the class.
GaussTerm shift(const GaussTerm& f, double a);              // f(t + a)
GaussTerm mul_poly(const GaussTerm& f, const PolyC& p);     // p(t) f(t)
GaussTerm mul_quadratic_phase(const GaussTerm& f, Complex qa, Complex qb, Complex qc);
                                                            // exp(qa t^2 + qb t + qc) f(t)
GaussTerm derivative(const GaussTerm& f);
GaussSum shift(const GaussSum& f, double a);
GaussSum mul_poly(const GaussSum& f, const PolyC& p);
GaussSum mul_quadratic_phase(const GaussSum& f, Complex qa, Complex qb, Complex qc);
GaussSum derivative(const GaussSum& f);

/// int f(t) dt in closed form (Gaussian moments).
Complex integral(const GaussTerm& f);
Complex integral(const GaussSum& f);
/// int |f(t)|^2 dt in closed form.
double l2_norm_sq(const GaussSum& f);

GridFunction1D sample(const GaussSum& f, const Grid1D& g);

/// Separable test function on R^d: finite sum of products of per-axis factors.
/// This is the concrete Schwartz class the toolkit works with; every 1D
/// Fourier transform it needs exists in closed form.
struct TestFunction {
  int n_axes = 1;
  struct Term {
    Complex amp{1.0, 0.0};
    std::vector<GaussTerm> axis;  // one factor per axis
  };
  std::vector<Term> terms;

  explicit TestFunction(int axes) : n_axes(axes) {}
  static TestFunction gaussian(int axes, const std::vector<double>& centers,
                               const std::vector<double>& widths, Complex amp = Complex(1));

  Complex eval(const std::vector<double>& x) const;
  /// Multiply by coordinate x_i (exact; used by difference-operator recursion).
  TestFunction mul_coordinate(int axis) const;
  /// d/dx_i (exact).
  TestFunction derivative(int axis) const;
  TestFunction scaled(Complex c) const;
  /// ||f||^2_{L2(R^d)} in closed form.
  double l2_norm_sq() const;
  bool zero() const { return terms.empty(); }
};

/// Adaptive Gauss-Legendre quadrature of a callable over a finite box,
/// d <= 3 (higher dimensions must be reduced analytically first).
Complex quadrature_integrate(const std::function<Complex(const std::vector<double>&)>& f,
                             const std::vector<std::pair<double, double>>& box,
                             int points_per_axis);

/// Nodes/weights for Gauss-Legendre on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

}  // namespace nilcalc
