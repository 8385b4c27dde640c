#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace nilcalc {

using Complex = std::complex<double>;

/// Uniform grid on [-L, L] with N nodes, u_k = -L + k*h, h = 2L/(N-1).
struct Grid1D {
  double L;
  int N;

  Grid1D(double half_width, int points) : L(half_width), N(points) {
    if (N < 16) throw std::invalid_argument("Grid1D: N must be >= 16");
    if (!(L > 0)) throw std::invalid_argument("Grid1D: L must be positive");
  }
  double h() const { return 2.0 * L / (N - 1); }
  double node(int k) const { return -L + k * h(); }
  std::vector<double> nodes() const {
    auto u = std::vector<double>(size_t(N));
    for (int k = 0; k < N; ++k) u[size_t(k)] = node(k);
    return u;
  }
  friend bool operator==(const Grid1D& a, const Grid1D& b) { return a.L == b.L && a.N == b.N; }
};

struct GridFunction1D {
  Grid1D grid;
  std::vector<Complex> samples;

  explicit GridFunction1D(const Grid1D& g) : grid(g), samples(size_t(g.N), Complex(0)) {}
  GridFunction1D(const Grid1D& g, std::vector<Complex> s) : grid(g), samples(std::move(s)) {
    if (int(samples.size()) != g.N) throw std::invalid_argument("GridFunction1D: length mismatch");
  }
};

/// Trapezoid L2 inner product <f, g> = h * sum f conj(g) (Schwartz-class data
/// makes the endpoint corrections negligible).
inline Complex inner(const GridFunction1D& f, const GridFunction1D& g) {
  if (!(f.grid == g.grid)) throw std::invalid_argument("inner: grid mismatch");
  Complex s(0);
  for (size_t k = 0; k < f.samples.size(); ++k) s += f.samples[k] * std::conj(g.samples[k]);
  return s * f.grid.h();
}

inline double norm_l2(const GridFunction1D& f) { return std::sqrt(std::abs(inner(f, f))); }

inline double rel_l2_error(const GridFunction1D& a, const GridFunction1D& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("rel_l2_error: grid mismatch");
  double num = 0, den = 0;
  for (size_t k = 0; k < a.samples.size(); ++k) {
    num += std::norm(a.samples[k] - b.samples[k]);
    den += std::norm(b.samples[k]);
  }
  return den == 0 ? std::sqrt(num) : std::sqrt(num / den);
}

}  // namespace nilcalc
