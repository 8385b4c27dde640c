#include "nilcalc/gauss.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace nilcalc {

namespace {
constexpr double kPi = std::numbers::pi;
}

PolyC PolyC::monomial(int k, Complex a) {
  std::vector<Complex> c(size_t(k) + 1, Complex(0));
  c.back() = a;
  return PolyC(std::move(c));
}

void PolyC::trim() {
  while (coeffs.size() > 1 && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
  if (coeffs.empty()) coeffs.push_back(Complex(0));
}

PolyC PolyC::derivative() const {
  if (coeffs.size() <= 1) return PolyC();
  std::vector<Complex> c(coeffs.size() - 1);
  for (size_t k = 1; k < coeffs.size(); ++k) c[k - 1] = double(k) * coeffs[k];
  return PolyC(std::move(c));
}

PolyC PolyC::shifted(Complex a) const {
  // p(t + a) by Horner in (t + a)
  PolyC r({coeffs.back()});
  for (size_t k = coeffs.size() - 1; k-- > 0;) {
    // r = r * (t + a) + coeffs[k]
    std::vector<Complex> c(r.coeffs.size() + 1, Complex(0));
    for (size_t j = 0; j < r.coeffs.size(); ++j) {
      c[j + 1] += r.coeffs[j];
      c[j] += a * r.coeffs[j];
    }
    c[0] += coeffs[k];
    r = PolyC(std::move(c));
  }
  return r;
}

PolyC operator+(const PolyC& p, const PolyC& q) {
  std::vector<Complex> c(std::max(p.coeffs.size(), q.coeffs.size()), Complex(0));
  for (size_t k = 0; k < p.coeffs.size(); ++k) c[k] += p.coeffs[k];
  for (size_t k = 0; k < q.coeffs.size(); ++k) c[k] += q.coeffs[k];
  return PolyC(std::move(c));
}

PolyC operator*(const PolyC& p, const PolyC& q) {
  std::vector<Complex> c(p.coeffs.size() + q.coeffs.size() - 1, Complex(0));
  for (size_t i = 0; i < p.coeffs.size(); ++i)
    for (size_t j = 0; j < q.coeffs.size(); ++j) c[i + j] += p.coeffs[i] * q.coeffs[j];
  return PolyC(std::move(c));
}

PolyC operator*(Complex s, const PolyC& p) {
  std::vector<Complex> c = p.coeffs;
  for (auto& v : c) v *= s;
  return PolyC(std::move(c));
}

GaussTerm hermite_factor(double center, double width, int degree, Complex amp) {
  if (!(width > 0)) throw std::invalid_argument("hermite_factor: width must be positive");
  GaussTerm g;
  double z = 1.0 / (width * width);
  g.z = z;
  g.w = center * z;
  g.amp = amp * std::exp(-0.5 * center * center * z);
  // (t - c)^degree
  PolyC p = PolyC::one();
  for (int k = 0; k < degree; ++k) p = p * PolyC({Complex(-center), Complex(1)});
  g.poly = p;
  return g;
}

GaussTerm fourier(const GaussTerm& f) {
  // F(e^{-z t^2/2 + w t})(xi) = z^{-1/2} e^{(w - i xi)^2/(2z)}
  //                           = z^{-1/2} e^{w^2/2z} e^{-xi^2/(2z) - i (w/z) xi}.
  // Polynomial factors: F(t^k g) = i^k d^k/dxi^k F(g); done by symbolic
  // differentiation of Q(xi) e^{-xi^2/(2z) + v xi}.
  if (!(f.z.real() > 0)) throw std::invalid_argument("fourier: Re z must be positive");
  Complex zi = 1.0 / f.z;
  GaussTerm out;
  out.z = zi;
  out.w = -Complex(0, 1) * f.w * zi;
  out.amp = f.amp * std::sqrt(zi) * std::exp(0.5 * f.w * f.w * zi);
  // build Q by applying (i d/dxi) per monomial power with Horner-style expansion
  // exponent part E(xi) = -xi^2/(2z) + v xi with v = out.w.
  // d/dxi [Q e^E] = (Q' + Q E') e^E, E' = -xi/z + v.
  PolyC Ep({out.w, -zi});
  PolyC Q = PolyC::one();
  PolyC result({Complex(0)});
  // f.poly(t) = sum c_k t^k; F = sum c_k (i d/dxi)^k [e^E]
  // iterate: D^k applied to e^E gives Q_k e^E with Q_0 = 1, Q_{k+1} = Q_k' + Q_k Ep.
  std::vector<PolyC> Qs;
  Qs.push_back(PolyC::one());
  for (int k = 1; k <= f.poly.degree(); ++k)
    Qs.push_back(Qs.back().derivative() + Qs.back() * Ep);
  Complex ipow(1, 0);
  for (int k = 0; k <= f.poly.degree(); ++k) {
    result = result + f.poly.coeffs[size_t(k)] * (ipow * Qs[size_t(k)]);
    ipow *= Complex(0, 1);
  }
  out.poly = result;
  return out;
}

GaussSum fourier(const GaussSum& f) {
  GaussSum out;
  for (const auto& g : f.terms) out.terms.push_back(fourier(g));
  return out;
}

GaussTerm shift(const GaussTerm& f, double a) {
  GaussTerm out = f;
  out.poly = f.poly.shifted(a);
  // exp(-z(t+a)^2/2 + w(t+a)) = exp(-z a^2/2 + w a) exp(-z t^2/2 + (w - z a) t)
  out.amp = f.amp * std::exp(-0.5 * f.z * a * a + f.w * a);
  out.w = f.w - f.z * a;
  return out;
}

GaussTerm mul_poly(const GaussTerm& f, const PolyC& p) {
  GaussTerm out = f;
  out.poly = f.poly * p;
  return out;
}

GaussTerm mul_quadratic_phase(const GaussTerm& f, Complex qa, Complex qb, Complex qc) {
  GaussTerm out = f;
  out.z = f.z - 2.0 * qa;
  out.w = f.w + qb;
  out.amp = f.amp * std::exp(qc);
  return out;
}

GaussTerm derivative(const GaussTerm& f) {
  GaussTerm out = f;
  out.poly = f.poly.derivative() + f.poly * PolyC({f.w, -f.z});
  return out;
}

GaussSum shift(const GaussSum& f, double a) {
  GaussSum out;
  for (const auto& g : f.terms) out.terms.push_back(shift(g, a));
  return out;
}
GaussSum mul_poly(const GaussSum& f, const PolyC& p) {
  GaussSum out;
  for (const auto& g : f.terms) out.terms.push_back(mul_poly(g, p));
  return out;
}
GaussSum mul_quadratic_phase(const GaussSum& f, Complex qa, Complex qb, Complex qc) {
  GaussSum out;
  for (const auto& g : f.terms) out.terms.push_back(mul_quadratic_phase(g, qa, qb, qc));
  return out;
}
GaussSum derivative(const GaussSum& f) {
  GaussSum out;
  for (const auto& g : f.terms) out.terms.push_back(derivative(g));
  return out;
}

Complex integral(const GaussTerm& f) {
  // int t^k e^{-z t^2/2 + w t} dt: complete the square, t = s + w/z,
  // int (s + w/z)^k e^{-z s^2/2} ds with even moments
  // int s^{2m} e^{-z s^2/2} ds = sqrt(2 pi / z) (2m-1)!! z^{-m}.
  if (!(f.z.real() > 0)) throw std::invalid_argument("integral: Re z must be positive");
  Complex mu = f.w / f.z;
  PolyC p = f.poly.shifted(mu);
  Complex base = std::sqrt(2.0 * kPi / f.z) * std::exp(0.5 * f.w * f.w / f.z);
  Complex acc(0);
  Complex zinv = 1.0 / f.z;
  for (int k = 0; k <= p.degree(); k += 2) {
    double dfact = 1.0;
    for (int j = k - 1; j >= 1; j -= 2) dfact *= j;
    Complex zpow(1);
    for (int j = 0; j < k / 2; ++j) zpow *= zinv;
    acc += p.coeffs[size_t(k)] * dfact * zpow;
  }
  return f.amp * base * acc;
}

Complex integral(const GaussSum& f) {
  Complex s(0);
  for (const auto& g : f.terms) s += integral(g);
  return s;
}

double l2_norm_sq(const GaussSum& f) {
  // |f|^2 = f conj(f): conj of a term is a term with conjugated parameters.
  Complex acc(0);
  for (const auto& a : f.terms)
    for (const auto& b : f.terms) {
      GaussTerm prod;
      prod.amp = a.amp * std::conj(b.amp);
      prod.z = a.z + std::conj(b.z);
      prod.w = a.w + std::conj(b.w);
      PolyC bc = b.poly;
      for (auto& c : bc.coeffs) c = std::conj(c);
      prod.poly = a.poly * bc;
      acc += integral(prod);
    }
  return acc.real();
}

GridFunction1D sample(const GaussSum& f, const Grid1D& g) {
  GridFunction1D out(g);
  for (int k = 0; k < g.N; ++k) out.samples[size_t(k)] = f.eval(g.node(k));
  return out;
}

TestFunction TestFunction::gaussian(int axes, const std::vector<double>& centers,
                                    const std::vector<double>& widths, Complex amp) {
  TestFunction f(axes);
  Term t;
  t.amp = amp;
  for (int i = 0; i < axes; ++i) t.axis.push_back(hermite_factor(centers[size_t(i)], widths[size_t(i)], 0));
  f.terms.push_back(std::move(t));
  return f;
}

Complex TestFunction::eval(const std::vector<double>& x) const {
  Complex s(0);
  for (const auto& t : terms) {
    Complex p = t.amp;
    for (int i = 0; i < n_axes; ++i) p *= t.axis[size_t(i)].eval(x[size_t(i)]);
    s += p;
  }
  return s;
}

TestFunction TestFunction::mul_coordinate(int axis) const {
  TestFunction out(n_axes);
  for (const auto& t : terms) {
    Term nt = t;
    nt.axis[size_t(axis)] = mul_poly(t.axis[size_t(axis)], PolyC::monomial(1));
    out.terms.push_back(std::move(nt));
  }
  return out;
}

TestFunction TestFunction::derivative(int axis) const {
  TestFunction out(n_axes);
  for (const auto& t : terms) {
    Term nt = t;
    nt.axis[size_t(axis)] = nilcalc::derivative(t.axis[size_t(axis)]);
    out.terms.push_back(std::move(nt));
  }
  return out;
}

TestFunction TestFunction::scaled(Complex c) const {
  TestFunction out = *this;
  for (auto& t : out.terms) t.amp *= c;
  return out;
}

double TestFunction::l2_norm_sq() const {
  // sum over term pairs of prod_i int g_i conj(h_i)
  Complex acc(0);
  for (const auto& a : terms)
    for (const auto& b : terms) {
      Complex p = a.amp * std::conj(b.amp);
      for (int i = 0; i < n_axes; ++i) {
        GaussTerm prod;
        const auto& ga = a.axis[size_t(i)];
        const auto& gb = b.axis[size_t(i)];
        prod.amp = ga.amp * std::conj(gb.amp);
        prod.z = ga.z + std::conj(gb.z);
        prod.w = ga.w + std::conj(gb.w);
        PolyC bc = gb.poly;
        for (auto& c : bc.coeffs) c = std::conj(c);
        prod.poly = ga.poly * bc;
        p *= integral(prod);
      }
      acc += p;
    }
  return acc.real();
}

namespace {

// canonical [-1, 1] nodes, cached per order (the kernel quadratures request
// the same orders millions of times)
const std::pair<std::vector<double>, std::vector<double>>& gl_canonical(int n) {
  static std::mutex mu;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto x = std::vector<double>(size_t(n));
  auto w = std::vector<double>(size_t(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double zz = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double z1 = 2.0, pp = 0.0;
    while (std::abs(zz - z1) > 1e-15) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * zz * p2 - j * p3) / (j + 1);
      }
      pp = n * (zz * p1 - p2) / (zz * zz - 1.0);
      z1 = zz;
      zz = z1 - p1 / pp;
    }
    x[size_t(i)] = -zz;
    x[size_t(n - 1 - i)] = zz;
    double p1 = 1.0, p2 = 0.0;
    for (int j = 0; j < n; ++j) {
      double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j + 1.0) * zz * p2 - j * p3) / (j + 1);
    }
    pp = n * (zz * p1 - p2) / (zz * zz - 1.0);
    w[size_t(i)] = 2.0 / ((1.0 - zz * zz) * pp * pp);
    w[size_t(n - 1 - i)] = w[size_t(i)];
  }
  return cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first->second;
}

}  // namespace

void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  const auto& [cx, cw] = gl_canonical(n);
  x.resize(size_t(n));
  w.resize(size_t(n));
  const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    x[size_t(i)] = xm + xl * cx[size_t(i)];
    w[size_t(i)] = xl * cw[size_t(i)];
  }
}

Complex quadrature_integrate(const std::function<Complex(const std::vector<double>&)>& f,
                             const std::vector<std::pair<double, double>>& box,
                             int points_per_axis) {
  const int d = int(box.size());
  if (d > 3) throw std::invalid_argument("quadrature_integrate: reduce to d <= 3 analytically first");
  if (d == 0) return f({});
  auto xs = std::vector<std::vector<double>>(size_t(d));
  auto ws = std::vector<std::vector<double>>(size_t(d));
  for (int i = 0; i < d; ++i)
    gauss_legendre(points_per_axis, box[size_t(i)].first, box[size_t(i)].second, xs[size_t(i)], ws[size_t(i)]);
  Complex acc(0);
  std::vector<int> idx(size_t(d), 0);
  auto pt = std::vector<double>(size_t(d));
  while (true) {
    double w = 1.0;
    for (int i = 0; i < d; ++i) {
      pt[size_t(i)] = xs[size_t(i)][size_t(idx[size_t(i)])];
      w *= ws[size_t(i)][size_t(idx[size_t(i)])];
    }
    acc += w * f(pt);
    int i = 0;
    while (i < d) {
      if (++idx[size_t(i)] < points_per_axis) break;
      idx[size_t(i)] = 0;
      ++i;
    }
    if (i == d) break;
  }
  return acc;
}

}  // namespace nilcalc
