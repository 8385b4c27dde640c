#include "nilcalc/gft.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "nilcalc/parallel.hpp"

namespace nilcalc {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0, 1);

struct FactorInfo {
  GaussTerm g;       // the factor itself
  GaussTerm ft;      // its Fourier transform
  double center;     // stationary point of |g|
  double width;      // 1/sqrt(Re z)
  double ft_center;  // stationary point of |ft|
  double ft_width;
};

FactorInfo analyze(const GaussTerm& g) {
  FactorInfo fi;
  fi.g = g;
  fi.ft = fourier(g);
  fi.width = 1.0 / std::sqrt(g.z.real());
  fi.center = (g.w / g.z).real();
  fi.ft_width = 1.0 / std::sqrt(fi.ft.z.real());
  fi.ft_center = (fi.ft.w / fi.ft.z).real();
  return fi;
}

double gl_integral_mag(const GaussTerm& g) {
  // crude sup bound |amp| * max|poly| on support * 1
  double m = std::abs(g.amp);
  double r = std::abs((g.w / g.z).real()) + 8.0 / std::sqrt(g.z.real());
  double pm = 0;
  for (double t : {-r, -r / 2, 0.0, r / 2, r}) pm = std::max(pm, std::abs(g.poly.eval(t)));
  return m * std::max(pm, 1e-30);
}

}  // namespace

double kernel_scale_value(KernelScale s) {
  switch (s) {
    case KernelScale::TwoPi: return 2.0 * kPi;
    case KernelScale::TwoPiPow32: return 2.0 * std::pow(kPi, 1.5);
    case KernelScale::Consistent: return std::pow(2.0 * kPi, 1.5);
  }
  return std::pow(2.0 * kPi, 1.5);
}

GFTResult gft_kernel_engel(const TestFunction& f, const RepParams& params, const Grid1D& grid,
                           KernelScale scale) {
  if (params.group != GroupId::Engel) throw std::invalid_argument("gft_kernel_engel: Engel params required");
  if (f.n_axes != 4) throw std::invalid_argument("gft_kernel_engel: f must have 4 axes");
  params.validate();
  const double l = params.lambda, m = params.mu;
  const double c = kernel_scale_value(scale);
  KernelMatrix K(grid);
  struct TermFT {
    Complex amp;
    GaussTerm g1, F2, F3;
    Complex f4val;
  };
  std::vector<TermFT> ts;
  for (const auto& t : f.terms) {
    TermFT tf;
    tf.amp = t.amp;
    tf.g1 = t.axis[0];
    tf.F2 = fourier(t.axis[1]);
    tf.F3 = fourier(t.axis[2]);
    tf.f4val = fourier(t.axis[3]).eval(l);
    ts.push_back(tf);
  }
  const int N = grid.N;
  for (int j = 0; j < N; ++j) {
    const double u = grid.node(j);
    for (int k = 0; k < N; ++k) {
      const double v = grid.node(k);
      const double a2 = 0.5 * l * v * v - m / (2.0 * l);
      Complex s(0);
      for (const auto& t : ts)
        s += t.amp * t.g1.eval(u - v) * t.F2.eval(a2) * t.F3.eval(-l * v) * t.f4val;
      K.at(j, k) = c * s;
    }
  }
  return {params, std::move(K), Provenance::ClosedForm};
}

namespace {

// oscillatory 1D integral int g(x) exp(i theta x) dx over the factor support
Complex oscillatory_factor_integral(const GaussTerm& g, double theta, const DirectQuad& q) {
  const double c = (g.w / g.z).real();
  const double w = 1.0 / std::sqrt(g.z.real());
  const double R = q.support_sigmas * w;
  int n = q.base_nodes + int(std::abs(theta) * R / kPi * 4.0);
  n = std::min(n, q.max_nodes);
  std::vector<double> xs, ws;
  gauss_legendre(n, c - R, c + R, xs, ws);
  Complex acc(0);
  for (int i = 0; i < n; ++i)
    acc += ws[size_t(i)] * g.eval(xs[size_t(i)]) * std::exp(kI * theta * xs[size_t(i)]);
  return acc;
}

GFTResult gft_direct_engel(const TestFunction& f, const RepParams& params, const Grid1D& grid,
                           const DirectQuad& quad) {
  const double l = params.lambda, m = params.mu;
  KernelMatrix K(grid);
  struct TermD {
    Complex amp;
    GaussTerm g1, g2;
    GaussTerm F3;
    Complex f4val;
    double mag;  // screening scale
  };
  std::vector<TermD> ts;
  for (const auto& t : f.terms) {
    TermD td;
    td.amp = t.amp;
    td.g1 = t.axis[0];
    td.g2 = t.axis[1];
    td.F3 = fourier(t.axis[2]);
    td.f4val = fourier(t.axis[3]).eval(l);
    td.mag = std::abs(td.amp) * gl_integral_mag(td.g1) * gl_integral_mag(td.F3) *
             std::abs(td.f4val) * gl_integral_mag(td.g2);
    ts.push_back(td);
  }
  double mag_max = 0;
  for (const auto& t : ts) mag_max = std::max(mag_max, t.mag);
  const double cutoff = quad.mag_cutoff * std::max(mag_max, 1e-300);
  const int N = grid.N;
  const double two_pi = 2.0 * kPi;
  deterministic_parallel_for(N, quad.workers, [&](int j) {
    const double u = grid.node(j);
    for (int k = 0; k < N; ++k) {
      const double v = grid.node(k);
      const double theta = m / (2.0 * l) - 0.5 * l * v * v;
      Complex s(0);
      for (const auto& t : ts) {
        Complex pre = t.amp * t.g1.eval(u - v) * t.F3.eval(-l * v) * t.f4val * two_pi;
        if (std::abs(pre) * gl_integral_mag(t.g2) < cutoff) continue;
        s += pre * oscillatory_factor_integral(t.g2, theta, quad);
      }
      K.at(j, k) = s;
    }
  });
  return {params, std::move(K), Provenance::Direct};
}

// Cartan phase pieces restricted to the axes that stay under the t-integral.
// Phi(x1, x2, v) = -Theta1(v; x1) - Theta2(v + l x1/r; x2)
//                  + r x1 x2 (v + s) - l x1^2 x2 / 2 - m x1 x2^2 / 2,
// s = (l x1 + m x2)/r.
double cartan_phi(double x1, double x2, double v, double l, double m, double nu, double r) {
  const double s = (l * x1 + m * x2) / r;
  const double th1 = -nu * m / (2.0 * r) * x1 -
                     0.5 * r * m * (x1 * v * v + (l / r) * x1 * x1 * v + (l * l / (3.0 * r * r)) * x1 * x1 * x1);
  const double w = v + l * x1 / r;
  const double th2 = nu * l / (2.0 * r) * x2 +
                     0.5 * r * l * (x2 * w * w + (m / r) * x2 * x2 * w + (m * m / (3.0 * r * r)) * x2 * x2 * x2);
  return -th1 - th2 + r * x1 * x2 * (v + s) - 0.5 * l * x1 * x1 * x2 - 0.5 * m * x1 * x2 * x2;
}

GFTResult gft_direct_cartan(const TestFunction& f, const RepParams& params, const Grid1D& grid,
                            const DirectQuad& quad) {
  const double l = params.lambda, m = params.mu, nu = params.nu;
  const double r = params.rho();
  KernelMatrix K(grid);
  struct TermD {
    Complex amp;
    GaussTerm g1, g2;
    GaussTerm F3;
    Complex f4val, f5val;
    double c1, w1, c2, w2;  // supports of g1, g2
  };
  std::vector<TermD> ts;
  for (const auto& t : f.terms) {
    TermD td;
    td.amp = t.amp;
    td.g1 = t.axis[0];
    td.g2 = t.axis[1];
    td.F3 = fourier(t.axis[2]);
    td.f4val = fourier(t.axis[3]).eval(l);
    td.f5val = fourier(t.axis[4]).eval(m);
    td.c1 = (td.g1.w / td.g1.z).real();
    td.w1 = 1.0 / std::sqrt(td.g1.z.real());
    td.c2 = (td.g2.w / td.g2.z).real();
    td.w2 = 1.0 / std::sqrt(td.g2.z.real());
    ts.push_back(td);
  }
  double mag_max = 0;
  for (const auto& t : ts)
    mag_max = std::max(mag_max, std::abs(t.amp) * gl_integral_mag(t.g1) * gl_integral_mag(t.g2) *
                                    gl_integral_mag(t.F3) * std::abs(t.f4val * t.f5val));
  const double cutoff = quad.mag_cutoff * std::max(mag_max, 1e-300);
  const int N = grid.N;
  const double pref = r * std::pow(2.0 * kPi, 1.5);
  deterministic_parallel_for(N, quad.workers, [&](int j) {
    const double u = grid.node(j);
    for (int k = 0; k < N; ++k) {
      const double v = grid.node(k);
      const double sh = u - v;  // = s(x) on the support of the kernel entry
      Complex acc(0);
      for (const auto& t : ts) {
        Complex pre = t.amp * t.F3.eval(-r * v) * t.f4val * t.f5val * pref;
        if (std::abs(pre) * gl_integral_mag(t.g1) * gl_integral_mag(t.g2) < cutoff) continue;
        // x1 = l*sh + m*tt, x2 = m*sh - l*tt: intersect factor supports in tt
        const double S = quad.support_sigmas;
        double lo = -1e18, hi = 1e18;
        if (m != 0.0) {
          double a = (t.c1 - S * t.w1 - l * sh) / m, b = (t.c1 + S * t.w1 - l * sh) / m;
          lo = std::max(lo, std::min(a, b));
          hi = std::min(hi, std::max(a, b));
        } else if (std::abs(l * sh - t.c1) > S * t.w1) {
          continue;
        }
        if (l != 0.0) {
          double a = (m * sh - t.c2 - S * t.w2) / l, b = (m * sh - t.c2 + S * t.w2) / l;
          lo = std::max(lo, std::min(a, b));
          hi = std::min(hi, std::max(a, b));
        } else if (std::abs(m * sh - t.c2) > S * t.w2) {
          continue;
        }
        if (!(lo < hi)) continue;
        // phase-variation estimate for the node count
        auto phase = [&](double tt) {
          return cartan_phi(l * sh + m * tt, m * sh - l * tt, v, l, m, nu, r);
        };
        double var = 0;
        double pprev = phase(lo);
        for (int q2 = 1; q2 <= 8; ++q2) {
          double pcur = phase(lo + (hi - lo) * q2 / 8.0);
          var += std::abs(pcur - pprev);
          pprev = pcur;
        }
        int n = quad.base_nodes + int(var / kPi * 4.0);
        n = std::min(n, quad.max_nodes);
        std::vector<double> xs, ws;
        gauss_legendre(n, lo, hi, xs, ws);
        Complex inner(0);
        for (int q2 = 0; q2 < n; ++q2) {
          const double tt = xs[size_t(q2)];
          const double x1 = l * sh + m * tt, x2 = m * sh - l * tt;
          inner += ws[size_t(q2)] * t.g1.eval(x1) * t.g2.eval(x2) *
                   std::exp(kI * cartan_phi(x1, x2, v, l, m, nu, r));
        }
        acc += pre * inner;
      }
      K.at(j, k) = acc;
    }
  });
  return {params, std::move(K), Provenance::Direct};
}

}  // namespace

GFTResult gft_direct(const TestFunction& f, const RepParams& params, const Grid1D& grid,
                     const DirectQuad& quad) {
  params.validate();
  if (params.group == GroupId::Engel) {
    if (f.n_axes != 4) throw std::invalid_argument("gft_direct: Engel f must have 4 axes");
    return gft_direct_engel(f, params, grid, quad);
  }
  if (f.n_axes != 5) throw std::invalid_argument("gft_direct: Cartan f must have 5 axes");
  return gft_direct_cartan(f, params, grid, quad);
}

KNSymbol kn_symbol(const TestFunction& f, const RepParams& params) {
  if (params.group != GroupId::Engel) throw std::invalid_argument("kn_symbol: Engel only");
  if (f.n_axes != 4) throw std::invalid_argument("kn_symbol: f must have 4 axes");
  params.validate();
  const double l = params.lambda, m = params.mu;
  struct TermFT {
    Complex amp;
    GaussTerm F1, F2, F3;
    Complex f4val;
  };
  auto ts = std::make_shared<std::vector<TermFT>>();
  double xi_hw = 0;
  for (const auto& t : f.terms) {
    TermFT tf;
    tf.amp = t.amp;
    tf.F1 = fourier(t.axis[0]);
    tf.F2 = fourier(t.axis[1]);
    tf.F3 = fourier(t.axis[2]);
    tf.f4val = fourier(t.axis[3]).eval(l);
    auto fi = analyze(t.axis[0]);
    xi_hw = std::max(xi_hw, std::abs(fi.ft_center) + 14.0 * fi.ft_width);
    ts->push_back(tf);
  }
  const double pref = std::pow(2.0 * kPi, 2.0);
  KNSymbol sym;
  sym.params = params;
  sym.xi_decay_halfwidth = xi_hw;
  sym.a = [ts, l, m, pref](double v, double xi) {
    const double a2 = 0.5 * l * v * v - m / (2.0 * l);
    Complex s(0);
    for (const auto& t : *ts) s += t.amp * t.F1.eval(xi) * t.F2.eval(a2) * t.F3.eval(-l * v) * t.f4val;
    return pref * s;
  };
  return sym;
}

GridFunction1D kn_quantize(const KNSymbol& symbol, const GridFunction1D& h, int xi_nodes) {
  const Grid1D& grid = h.grid;
  GridFunction1D out(grid);
  const double hh = grid.h();
  const double XI = symbol.xi_decay_halfwidth;
  int n = std::max(xi_nodes, int(XI * 2.0 * grid.L / kPi * 1.5) + 64);
  std::vector<double> xs, ws;
  gauss_legendre(n, -XI, XI, xs, ws);
  // Op(a) h(u) = (2 pi)^{-1} int int e^{i(u-v)xi} a(v,xi) h(v) dv dxi
  const int N = grid.N;
  std::vector<Complex> avxi(size_t(N) * size_t(n));
  for (int k = 0; k < N; ++k)
    for (int q = 0; q < n; ++q)
      avxi[size_t(k) * size_t(n) + size_t(q)] = symbol.a(grid.node(k), xs[size_t(q)]);
  for (int j = 0; j < N; ++j) {
    const double u = grid.node(j);
    Complex acc(0);
    for (int k = 0; k < N; ++k) {
      const double v = grid.node(k);
      Complex inner(0);
      for (int q = 0; q < n; ++q)
        inner += ws[size_t(q)] * std::exp(kI * (u - v) * xs[size_t(q)]) *
                 avxi[size_t(k) * size_t(n) + size_t(q)];
      acc += hh * h.samples[size_t(k)] * inner;
    }
    out.samples[size_t(j)] = acc / (2.0 * kPi);
  }
  return out;
}

namespace {

// Decay windows of the transformed slots, pooled over the terms of f:
// a2-slot support [a2_lo, a2_hi] (second argument of F_{R^3}) and |lambda v|
// support y_max (third argument).
struct SlotWindows {
  double a2_lo, a2_hi;
  double y_max;
};

SlotWindows slot_windows(const TestFunction& f, double sigmas = 12.0) {
  SlotWindows w{0, 0, 0};
  bool first = true;
  for (const auto& t : f.terms) {
    auto f2 = analyze(t.axis[1]);
    auto f3 = analyze(t.axis[2]);
    double lo = f2.ft_center - sigmas * f2.ft_width, hi = f2.ft_center + sigmas * f2.ft_width;
    double y = std::abs(f3.ft_center) + sigmas * f3.ft_width;
    if (first) {
      w = {lo, hi, y};
      first = false;
    } else {
      w.a2_lo = std::min(w.a2_lo, lo);
      w.a2_hi = std::max(w.a2_hi, hi);
      w.y_max = std::max(w.y_max, y);
    }
  }
  return w;
}

// The v-integrand of the Engel kernel lives where both
//   a2(v) = lambda v^2/2 - mu/(2 lambda) in [a2_lo, a2_hi]  and  |lambda v| <= y_max.
// Returns the (at most two, symmetric) v-intervals [v_lo, v_hi] with v >= 0;
// the caller adds the mirrored negative interval.
bool engel_v_band(const SlotWindows& w, double l, double mu, double& v_lo, double& v_hi) {
  // v^2 in [q_lo, q_hi]
  double q1 = (mu / l + 2.0 * w.a2_lo) / l;
  double q2 = (mu / l + 2.0 * w.a2_hi) / l;
  double q_lo = std::min(q1, q2), q_hi = std::max(q1, q2);
  q_lo = std::max(q_lo, 0.0);
  double q3 = (w.y_max / std::abs(l)) * (w.y_max / std::abs(l));
  q_hi = std::min(q_hi, q3);
  if (!(q_hi > q_lo)) return false;
  v_lo = std::sqrt(q_lo);
  v_hi = std::sqrt(q_hi);
  return true;
}

// mu-window: mu = lambda^2 v^2 - 2 lambda a2 over the admissible (v, a2).
void engel_mu_window(const SlotWindows& w, double l, double cap, double& mu_lo, double& mu_hi) {
  double e1 = -2.0 * l * w.a2_lo, e2 = -2.0 * l * w.a2_hi;
  mu_lo = std::min(e1, e2);
  mu_hi = std::max(e1, e2);
  double quad = w.y_max * w.y_max;  // lambda^2 v^2 <= y_max^2
  mu_hi = std::max(mu_hi, quad + mu_hi);
  mu_lo = std::min(mu_lo, quad + mu_lo);
  mu_lo = std::max(mu_lo, -cap);
  mu_hi = std::min(mu_hi, cap);
}

}  // namespace

double engel_hs_norm_sq(const TestFunction& f, const RepParams& params, int n_v, KernelScale scale) {
  const double l = params.lambda, m = params.mu;
  const double c = kernel_scale_value(scale);
  // ||K||^2 = c^2 sum_{t,t'} [int g1_t conj(g1_t') dw] [int Q_t conj(Q_t')(v) dv]
  const size_t T = f.terms.size();
  std::vector<GaussTerm> g1(T), F2(T), F3(T);
  std::vector<Complex> f4(T), amp(T);
  for (size_t t = 0; t < T; ++t) {
    g1[t] = f.terms[t].axis[0];
    F2[t] = fourier(f.terms[t].axis[1]);
    F3[t] = fourier(f.terms[t].axis[2]);
    f4[t] = fourier(f.terms[t].axis[3]).eval(l);
    amp[t] = f.terms[t].amp;
  }
  SlotWindows w = slot_windows(f);
  double v_lo, v_hi;
  if (!engel_v_band(w, l, m, v_lo, v_hi)) return 0.0;
  const int half = std::max(n_v / 2, 32);
  // I1[a][b] = int g1_a conj(g1_b), closed form
  std::vector<Complex> I1(T * T);
  for (size_t a = 0; a < T; ++a)
    for (size_t b = 0; b < T; ++b) {
      GaussTerm prod;
      prod.amp = g1[a].amp * std::conj(g1[b].amp);
      prod.z = g1[a].z + std::conj(g1[b].z);
      prod.w = g1[a].w + std::conj(g1[b].w);
      PolyC bc = g1[b].poly;
      for (auto& cc : bc.coeffs) cc = std::conj(cc);
      prod.poly = g1[a].poly * bc;
      I1[a * T + b] = integral(prod);
    }
  std::vector<double> xs, ws;
  std::vector<Complex> qv(T);
  std::vector<Complex> I2(T * T, Complex(0));
  for (int side = 0; side < 2; ++side) {
    const double sg = side == 0 ? 1.0 : -1.0;
    gauss_legendre(half, sg * v_lo, sg * v_hi, xs, ws);
    for (int q = 0; q < half; ++q) {
      const double v = xs[size_t(q)];
      const double a2 = 0.5 * l * v * v - m / (2.0 * l);
      for (size_t t = 0; t < T; ++t) qv[t] = F2[t].eval(a2) * F3[t].eval(-l * v) * f4[t];
      const double wq = std::abs(ws[size_t(q)]);
      for (size_t a = 0; a < T; ++a)
        for (size_t b = 0; b < T; ++b) I2[a * T + b] += wq * qv[a] * std::conj(qv[b]);
    }
  }
  Complex acc(0);
  for (size_t a = 0; a < T; ++a)
    for (size_t b = 0; b < T; ++b) acc += amp[a] * std::conj(amp[b]) * I1[a * T + b] * I2[a * T + b];
  return c * c * acc.real();
}

PlancherelResult plancherel_check(const TestFunction& f, const PlancherelSpec& spec) {
  if (f.n_axes != 4) throw std::invalid_argument("plancherel_check: f must have 4 axes");
  PlancherelResult out{};
  out.lhs = f.l2_norm_sq();
  if (f.terms.empty() || out.lhs == 0) {
    out.rhs_unnormalized = 0;
    out.ratio = 0;
    out.tail_fraction = 0;
    out.warning = false;
    return out;
  }
  // log-scale lambda nodes per sign; lambda cells are independent pure tasks,
  // accumulated into an indexed buffer and summed sequentially
  SlotWindows w = slot_windows(f);
  const int NL = spec.n_lambda;
  std::vector<double> cell(size_t(2 * NL), 0.0);
  std::vector<double> ls, lw;
  gauss_legendre(NL, std::log(spec.lambda_min), std::log(spec.lambda_max), ls, lw);
  deterministic_parallel_for(2 * NL, default_workers(), [&](int idx) {
    const int sign = idx / NL, i = idx % NL;
    const double sg = sign == 0 ? 1.0 : -1.0;
    const double l = sg * std::exp(ls[size_t(i)]);
    const double jac = std::abs(l);  // dlambda = e^s ds
    RepParams p = RepParams::engel(l, 0.0);
    double mu_lo, mu_hi;
    engel_mu_window(w, l, spec.mu_cap, mu_lo, mu_hi);
    std::vector<double> ms, mw;
    gauss_legendre(spec.n_mu, mu_lo, mu_hi, ms, mw);
    double contrib = 0;
    for (int k = 0; k < spec.n_mu; ++k) {
      p.mu = ms[size_t(k)];
      contrib += mw[size_t(k)] * engel_hs_norm_sq(f, p, spec.n_v, spec.scale);
    }
    cell[size_t(idx)] = lw[size_t(i)] * jac * contrib;
  });
  double total = 0, boundary = 0;
  for (int idx = 0; idx < 2 * NL; ++idx) {
    total += cell[size_t(idx)];
    const int i = idx % NL;
    if (i == 0 || i == NL - 1) boundary += std::abs(cell[size_t(idx)]);
  }
  out.rhs_unnormalized = total;
  out.ratio = total > 0 ? out.lhs / total : 0.0;
  out.tail_fraction = total > 0 ? boundary / total : 0.0;
  out.warning = out.tail_fraction > 1e-4;
  return out;
}

Complex inverse_gft_engel(const TestFunction& f, const GroupElement& x, const PlancherelSpec& spec,
                          std::optional<double> c_inv) {
  if (x.group != GroupId::Engel) throw std::invalid_argument("inverse_gft_engel: Engel point required");
  const double cinv = c_inv.value_or(1.0 / (16.0 * kPi * kPi * kPi));
  const double c = kernel_scale_value(spec.scale);
  const size_t T = f.terms.size();
  if (T == 0) return Complex(0);
  // Tr(pi(x) fhat(pi)) = int e^{i E_x(u)} K(u + x1, u) du
  SlotWindows w = slot_windows(f);
  const int NL = spec.n_lambda;
  std::vector<Complex> cell(size_t(2 * NL), Complex(0));
  std::vector<double> ls, lw;
  gauss_legendre(NL, std::log(spec.lambda_min), std::log(spec.lambda_max), ls, lw);
  deterministic_parallel_for(2 * NL, default_workers(), [&](int idx) {
    const int sign = idx / NL, i = idx % NL;
    const double sg = sign == 0 ? 1.0 : -1.0;
    const double l = sg * std::exp(ls[size_t(i)]);
    const double jac = std::abs(l);
    RepParams p = RepParams::engel(l, 0.0);
    std::vector<GaussTerm> g1(T), F2(T), F3(T);
    std::vector<Complex> f4(T), amp(T);
    for (size_t t = 0; t < T; ++t) {
      g1[t] = f.terms[t].axis[0];
      F2[t] = fourier(f.terms[t].axis[1]);
      F3[t] = fourier(f.terms[t].axis[2]);
      f4[t] = fourier(f.terms[t].axis[3]).eval(l);
      amp[t] = f.terms[t].amp;
    }
    double mu_lo, mu_hi;
    engel_mu_window(w, l, spec.mu_cap, mu_lo, mu_hi);
    std::vector<double> ms, mw, us, uw;
    gauss_legendre(spec.n_mu, mu_lo, mu_hi, ms, mw);
    Complex contrib(0);
    const int half = std::max(spec.n_v / 2, 32);
    for (int k = 0; k < spec.n_mu; ++k) {
      const double mu = ms[size_t(k)];
      p.mu = mu;
      double u_lo, u_hi;
      if (!engel_v_band(w, l, mu, u_lo, u_hi)) continue;
      PhaseCoeffs ph = rep_phase(p, x);
      Complex tr(0);
      for (int side = 0; side < 2; ++side) {
        const double ss = side == 0 ? 1.0 : -1.0;
        gauss_legendre(half, ss * u_lo, ss * u_hi, us, uw);
        for (int q = 0; q < half; ++q) {
          const double u = us[size_t(q)];
          const double a2 = 0.5 * l * u * u - mu / (2.0 * l);
          Complex kval(0);
          for (size_t t = 0; t < T; ++t)
            kval += amp[t] * g1[t].eval(x.x[0]) * F2[t].eval(a2) * F3[t].eval(-l * u) * f4[t];
          tr += std::abs(uw[size_t(q)]) * std::exp(kI * ph.eval(u)) * c * kval;
        }
      }
      contrib += mw[size_t(k)] * tr;
    }
    cell[size_t(idx)] = lw[size_t(i)] * jac * contrib;
  });
  Complex total(0);
  for (const auto& v : cell) total += v;
  return cinv * total;
}

}  // namespace nilcalc
