#pragma once

#include <functional>
#include <vector>

#include "nilcalc/grid.hpp"

namespace nilcalc {

/// Discretized integral kernel K(u_j, v_k) on a uniform grid; represents a
/// Hilbert-Schmidt operator acting by (Kh)(u_j) = h_spacing * sum_k K(u_j,v_k) h(v_k).
struct KernelMatrix {
  Grid1D grid;
  std::vector<Complex> a;  // row-major N x N

  explicit KernelMatrix(const Grid1D& g) : grid(g), a(size_t(g.N) * size_t(g.N), Complex(0)) {}

  Complex& at(int j, int k) { return a[size_t(j) * size_t(grid.N) + size_t(k)]; }
  const Complex& at(int j, int k) const { return a[size_t(j) * size_t(grid.N) + size_t(k)]; }

  GridFunction1D apply(const GridFunction1D& h) const;

  KernelMatrix& operator+=(const KernelMatrix& o);
  KernelMatrix& operator-=(const KernelMatrix& o);
  KernelMatrix& scale(Complex s);

  /// diag(f(u)) * K and K * diag(f(v)).
  KernelMatrix& diag_left(const std::function<Complex(double)>& f);
  KernelMatrix& diag_right(const std::function<Complex(double)>& f);
};

KernelMatrix operator+(KernelMatrix A, const KernelMatrix& B);
KernelMatrix operator-(KernelMatrix A, const KernelMatrix& B);
KernelMatrix operator*(Complex s, KernelMatrix A);

/// Quadrature approximation of the L2(RxR) kernel norm: sqrt(h^2 sum |K|^2).
double hs_norm(const KernelMatrix& K);

/// ||A - B||_HS / ||B||_HS.
double rel_hs_error(const KernelMatrix& A, const KernelMatrix& B);

/// Kernels of (d/du) o K and K o (d/du): d/du K(u,v) and -d/dv K(u,v),
/// by 5-point central differences along rows/columns (O(h^4)).
KernelMatrix ddu_left(const KernelMatrix& K);
KernelMatrix ddu_right(const KernelMatrix& K);

}  // namespace nilcalc
