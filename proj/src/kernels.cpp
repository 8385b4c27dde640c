#include "nilcalc/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace nilcalc {

GridFunction1D KernelMatrix::apply(const GridFunction1D& h) const {
  if (!(h.grid == grid)) throw std::invalid_argument("KernelMatrix::apply: grid mismatch");
  GridFunction1D out(grid);
  const int N = grid.N;
  const double hh = grid.h();
  for (int j = 0; j < N; ++j) {
    Complex s(0);
    const Complex* row = &a[size_t(j) * size_t(N)];
    for (int k = 0; k < N; ++k) s += row[k] * h.samples[size_t(k)];
    out.samples[size_t(j)] = hh * s;
  }
  return out;
}

KernelMatrix& KernelMatrix::operator+=(const KernelMatrix& o) {
  if (!(o.grid == grid)) throw std::invalid_argument("KernelMatrix: grid mismatch");
  for (size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
  return *this;
}
KernelMatrix& KernelMatrix::operator-=(const KernelMatrix& o) {
  if (!(o.grid == grid)) throw std::invalid_argument("KernelMatrix: grid mismatch");
  for (size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
  return *this;
}
KernelMatrix& KernelMatrix::scale(Complex s) {
  for (auto& v : a) v *= s;
  return *this;
}
KernelMatrix& KernelMatrix::diag_left(const std::function<Complex(double)>& f) {
  const int N = grid.N;
  for (int j = 0; j < N; ++j) {
    Complex fj = f(grid.node(j));
    for (int k = 0; k < N; ++k) at(j, k) *= fj;
  }
  return *this;
}
KernelMatrix& KernelMatrix::diag_right(const std::function<Complex(double)>& f) {
  const int N = grid.N;
  auto fv = std::vector<Complex>(size_t(N));
  for (int k = 0; k < N; ++k) fv[size_t(k)] = f(grid.node(k));
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) at(j, k) *= fv[size_t(k)];
  return *this;
}

KernelMatrix operator+(KernelMatrix A, const KernelMatrix& B) { return A += B; }
KernelMatrix operator-(KernelMatrix A, const KernelMatrix& B) { return A -= B; }
KernelMatrix operator*(Complex s, KernelMatrix A) { return A.scale(s); }

double hs_norm(const KernelMatrix& K) {
  double s = 0;
  for (const auto& v : K.a) s += std::norm(v);
  const double h = K.grid.h();
  return std::sqrt(h * h * s);
}

double rel_hs_error(const KernelMatrix& A, const KernelMatrix& B) {
  if (!(A.grid == B.grid)) throw std::invalid_argument("rel_hs_error: grid mismatch");
  double num = 0, den = 0;
  for (size_t i = 0; i < A.a.size(); ++i) {
    num += std::norm(A.a[i] - B.a[i]);
    den += std::norm(B.a[i]);
  }
  return den == 0 ? std::sqrt(num) : std::sqrt(num / den);
}

namespace {

// 5-point stencil along one axis; one-sided 2nd order at the borders (kernel
// entries there are negligible for Schwartz data).
void differentiate(const KernelMatrix& K, KernelMatrix& out, bool along_rows) {
  const int N = K.grid.N;
  const double h = K.grid.h();
  auto get = [&](int j, int k) { return along_rows ? K.at(k, j) : K.at(j, k); };
  auto put = [&](int j, int k, Complex v) {
    if (along_rows)
      out.at(k, j) = v;
    else
      out.at(j, k) = v;
  };
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < N; ++k) {
      Complex d;
      if (k >= 2 && k + 2 < N) {
        d = (-get(j, k + 2) + 8.0 * get(j, k + 1) - 8.0 * get(j, k - 1) + get(j, k - 2)) / (12.0 * h);
      } else if (k == 0) {
        d = (-3.0 * get(j, 0) + 4.0 * get(j, 1) - get(j, 2)) / (2.0 * h);
      } else if (k == N - 1) {
        d = (3.0 * get(j, N - 1) - 4.0 * get(j, N - 2) + get(j, N - 3)) / (2.0 * h);
      } else {
        d = (get(j, k + 1) - get(j, k - 1)) / (2.0 * h);
      }
      put(j, k, d);
    }
  }
}

}  // namespace

KernelMatrix ddu_left(const KernelMatrix& K) {
  KernelMatrix out(K.grid);
  // derivative of K(u, v) in u: vary the row index at fixed column
  differentiate(K, out, /*along_rows=*/true);
  return out;
}

KernelMatrix ddu_right(const KernelMatrix& K) {
  KernelMatrix out(K.grid);
  differentiate(K, out, /*along_rows=*/false);
  out.scale(Complex(-1));
  return out;
}

}  // namespace nilcalc
