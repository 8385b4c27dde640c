#include "nilcalc/diffops.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nilcalc/verify.hpp"

namespace nilcalc {

namespace {

const Complex kI(0, 1);

Rational rationalize(double x) {
  // continued-fraction rationalization; parameters in practice are short
  // decimals, recovered exactly
  if (x == 0) return Rational(0);
  bool neg = x < 0;
  double v = std::abs(x);
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double a = v;
  for (int it = 0; it < 40; ++it) {
    std::int64_t ai = std::int64_t(std::floor(a));
    std::int64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > 1000000000LL) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (std::abs(double(p1) / double(q1) - v) < 1e-13 * std::max(1.0, v)) break;
    double frac = a - double(ai);
    if (frac < 1e-15) break;
    a = 1.0 / frac;
  }
  return Rational(neg ? -p1 : p1, q1);
}

using DQ = Dual<Rational>;
using PolyDQ = Polynomial<DQ>;

// variable layout: x1..xn, then u as the last variable
PolyDQ var(int nv, int i) { return PolyDQ::variable(nv, i); }
PolyDQ cst(int nv, DQ c) { return PolyDQ::constant(nv, c); }

// The phase A_g(u) of pi(g) as a polynomial, over arbitrary polynomial
// coordinates (so the same builder serves the derivative tables and the
// symbolic homomorphism check).
PolyDQ phase_from_coords(GroupId group, DQ l, DQ m, DQ nu, const std::vector<PolyDQ>& X,
                         const PolyDQ& u) {
  const int nv = u.n_vars();
  DQ half(Rational(1, 2));
  if (group == GroupId::Engel) {
    // printed phase: -mu/(2 lambda) x2 + lambda x4 - lambda x3 u + (lambda/2) x2 u^2
    return cst(nv, -m / (DQ(2) * l)) * X[1] + cst(nv, l) * X[3] - cst(nv, l) * (X[2] * u) +
           cst(nv, l * half) * (X[1] * u * u);
  }
  DQ r = l * l + m * m;
  PolyDQ c = X[2] + X[0] * X[1];
  PolyDQ d = X[3] + X[0] * X[2] + cst(nv, half) * (X[0] * X[0] * X[1]);
  PolyDQ e = X[4] + X[1] * X[2] + cst(nv, half) * (X[0] * X[1] * X[1]);
  PolyDQ s = cst(nv, l / r) * X[0] + cst(nv, m / r) * X[1];
  // Theta1(u) = -(nu mu/(2r)) x1 - (r mu/2)(x1 u^2 + (l/r) x1^2 u + (l^2/(3 r^2)) x1^3)
  PolyDQ Th1 = cst(nv, -nu * m / (DQ(2) * r)) * X[0] -
               cst(nv, r * m * half) *
                   (X[0] * u * u + cst(nv, l / r) * (X[0] * X[0] * u) +
                    cst(nv, l * l / (DQ(3) * r * r)) * (X[0] * X[0] * X[0]));
  // Theta2 at w = u + (l/r) x1
  PolyDQ w = u + cst(nv, l / r) * X[0];
  PolyDQ Th2 = cst(nv, nu * l / (DQ(2) * r)) * X[1] +
               cst(nv, r * l * half) *
                   (X[1] * w * w + cst(nv, m / r) * (X[1] * X[1] * w) +
                    cst(nv, m * m / (DQ(3) * r * r)) * (X[1] * X[1] * X[1]));
  // pi(X3) = -i r u: phase -r c (u + s)
  return Th1 + Th2 - cst(nv, r) * (c * (u + s)) + cst(nv, l) * d + cst(nv, m) * e;
}

PolyDQ shift_from_coords(GroupId group, DQ l, DQ m, const std::vector<PolyDQ>& X) {
  if (group == GroupId::Engel) return X[0];
  DQ r = l * l + m * m;
  const int nv = X[0].n_vars();
  return cst(nv, l / r) * X[0] + cst(nv, m / r) * X[1];
}

struct PhaseData {
  PolyDQ adjoint_phase;  // A*(u) = -A_x(u - s)
  PolyDQ shift;          // s(x)
  int nv;                // dim + 1
};

PhaseData build_phase(GroupId group, DQ l, DQ m, DQ nu) {
  const int dim = dimension(group);
  const int nv = dim + 1;
  const int U = dim;  // index of u
  std::vector<PolyDQ> X;
  for (int i = 0; i < dim; ++i) X.push_back(var(nv, i));
  PolyDQ u = var(nv, U);
  PolyDQ A = phase_from_coords(group, l, m, nu, X, u);
  PolyDQ s = shift_from_coords(group, l, m, X);
  PolyDQ repl = var(nv, U) - s;
  PhaseData pd{(-A).substitute(U, repl), s, nv};
  return pd;
}

}  // namespace

bool verify_phase_cocycle(GroupId group, double lambda, double mu, double nu) {
  DQ l(rationalize(lambda)), m(rationalize(mu)), n(rationalize(nu));
  const int dim = dimension(group);
  const int nv = 2 * dim + 1;
  std::vector<PolyDQ> X, Y;
  for (int i = 0; i < dim; ++i) X.push_back(var(nv, i));
  for (int i = 0; i < dim; ++i) Y.push_back(var(nv, dim + i));
  PolyDQ u = var(nv, 2 * dim);
  DQ half(Rational(1, 2));
  // printed group law over polynomial coordinates
  std::vector<PolyDQ> XY;
  XY.push_back(X[0] + Y[0]);
  XY.push_back(X[1] + Y[1]);
  XY.push_back(X[2] + Y[2] - X[0] * Y[1]);
  XY.push_back(X[3] + Y[3] + cst(nv, half) * (X[0] * X[0] * Y[1]) - X[0] * Y[2]);
  if (group == GroupId::Cartan)
    XY.push_back(X[4] + Y[4] + cst(nv, half) * (X[0] * Y[1] * Y[1]) - X[1] * Y[2] +
                 X[0] * X[1] * Y[1]);
  PolyDQ lhs = phase_from_coords(group, l, m, n, XY, u);
  PolyDQ sx = shift_from_coords(group, l, m, X);
  PolyDQ rhs = phase_from_coords(group, l, m, n, X, u) +
               phase_from_coords(group, l, m, n, Y, u + sx);
  return (lhs - rhs).is_zero();
}

BCoefficients coeff_tables(int which, double lambda, double mu, double nu) {
  const double l = lambda, m = mu;
  const double r = l * l + m * m;
  if (r == 0) throw std::invalid_argument("coeff_tables: lambda^2 + mu^2 must be nonzero");
  const double r2 = r * r;
  BCoefficients b{};
  if (which == 4) {
    b.b1_1 = -nu * l * m / r2;
    b.b1_2 = -l * m;
    b.b2_1 = (nu * l * l - nu * m * m) / (2.0 * r2);
    b.b2_2 = (9 * std::pow(l, 6) + 3 * std::pow(m, 6) + 15 * l * l * std::pow(m, 4) +
              21 * std::pow(l, 4) * m * m) /
             (6.0 * r2);
    b.b12 = -2.0 * l;
    b.b112 = (3 * std::pow(l, 4) + 9 * std::pow(m, 4)) / (6.0 * r2);
    b.b122 = -2.0 * l * m * m * m / r2;
    b.b111 = 4.0 * l * m * m * m / (3.0 * r2);
    b.b222 = (2 * m * m * l * l - 2 * std::pow(m, 4)) / (3.0 * r2);
  } else if (which == 5) {
    b.b1_1 = (nu * l * l - nu * m * m) / (2.0 * r2);
    b.b1_2 = -(3 * std::pow(l, 6) + 9 * std::pow(m, 6) + 15 * std::pow(l, 4) * m * m +
               21 * l * l * std::pow(m, 4)) /
             (6.0 * r2);
    b.b2_1 = nu * l * m / r2;
    b.b2_2 = l * m;
    b.b12 = 0.0;
    b.b112 = 2.0 * l * l * l * m / r2;
    b.b122 = (std::pow(m, 4) + 3 * m * m * l * l) / r2;
    b.b111 = (2 * std::pow(l, 4) - 2 * l * l * m * m) / (3.0 * r2);
    b.b222 = -4.0 * l * l * l * m / (3.0 * r2);
  } else {
    throw std::invalid_argument("coeff_tables: which must be 4 or 5");
  }
  return b;
}

DerivTable phase_derivative_table(GroupId group, char param, double lambda, double mu, double nu) {
  DQ l(rationalize(lambda)), m(rationalize(mu)), n(rationalize(nu));
  switch (param) {
    case 'l': l = DQ::variable(l.val); break;
    case 'm': m = DQ::variable(m.val); break;
    case 'n': n = DQ::variable(n.val); break;
    default: throw std::invalid_argument("phase_derivative_table: param must be 'l','m','n'");
  }
  PhaseData pd = build_phase(group, l, m, n);
  const int dim = dimension(group);
  DerivTable out;
  for (const auto& [mon, c] : pd.adjoint_phase.terms()) {
    if (c.der.is_zero()) continue;
    DerivEntry e;
    e.xpow.assign(size_t(dim), 0);
    for (int i = 0; i < dim; ++i) e.xpow[size_t(i)] = mon[size_t(i)];
    e.upow = mon[size_t(dim)];
    e.coeff = c.der.to_double();
    out.entries.push_back(std::move(e));
  }
  // d(-s)/dparam, linear in x1, x2
  for (const auto& [mon, c] : pd.shift.terms()) {
    if (c.der.is_zero()) continue;
    if (mon[0] == 1) out.shift_dx1 = -c.der.to_double();
    if (mon[1] == 1) out.shift_dx2 = -c.der.to_double();
  }
  return out;
}

std::vector<CoeffComparison> compare_coeff_tables(int which, double lambda, double mu, double nu) {
  BCoefficients b = coeff_tables(which, lambda, mu, nu);
  DerivTable t = phase_derivative_table(GroupId::Cartan, which == 4 ? 'l' : 'm', lambda, mu, nu);
  auto lookup = [&](std::vector<int> xp, int up) {
    for (const auto& e : t.entries)
      if (e.xpow == xp && e.upow == up) return e.coeff;
    return 0.0;
  };
  std::vector<CoeffComparison> rows;
  rows.push_back({"x1", b.b1_1, lookup({1, 0, 0, 0, 0}, 0)});
  rows.push_back({"x1*u^2", b.b1_2, lookup({1, 0, 0, 0, 0}, 2)});
  rows.push_back({"x2", b.b2_1, lookup({0, 1, 0, 0, 0}, 0)});
  rows.push_back({"x2*u^2", b.b2_2, lookup({0, 1, 0, 0, 0}, 2)});
  rows.push_back({"x1*x2*u", b.b12, lookup({1, 1, 0, 0, 0}, 1)});
  rows.push_back({"x1^2*x2", b.b112, lookup({2, 1, 0, 0, 0}, 0)});
  rows.push_back({"x1*x2^2", b.b122, lookup({1, 2, 0, 0, 0}, 0)});
  rows.push_back({"x1^3", b.b111, lookup({3, 0, 0, 0, 0}, 0)});
  rows.push_back({"x2^3", b.b222, lookup({0, 3, 0, 0, 0}, 0)});
  // monomials the printed tables do not carry at all
  rows.push_back({"x3*u", 0.0, lookup({0, 0, 1, 0, 0}, 1)});
  rows.push_back({which == 4 ? "x1*x3" : "x2*x3", 0.0,
                  which == 4 ? lookup({1, 0, 1, 0, 0}, 0) : lookup({0, 1, 1, 0, 0}, 0)});
  rows.push_back({"x1^2*u", 0.0, lookup({2, 0, 0, 0, 0}, 1)});
  rows.push_back({"x2^2*u", 0.0, lookup({0, 2, 0, 0, 0}, 1)});
  return rows;
}

DeltaWorkspace::DeltaWorkspace(TestFunction kappa, RepParams params, Grid1D grid, DirectQuad quad,
                               KernelScale scale, double fd_step)
    : kappa_(std::move(kappa)), params_(params), grid_(grid), quad_(quad), scale_(scale),
      fd_step_(fd_step) {
  params_.validate();
  if (kappa_.n_axes != dimension(params_.group))
    throw std::invalid_argument("DeltaWorkspace: kappa axis count must match the group dimension");
}

KernelMatrix DeltaWorkspace::kernel_at(const TestFunction& f, const RepParams& p) const {
  if (p.group == GroupId::Engel) return gft_kernel_engel(f, p, grid_, scale_).kernel;
  return gft_direct(f, p, grid_, quad_).kernel;
}

const KernelMatrix& DeltaWorkspace::monomial_kernel(const std::vector<int>& xpow) {
  auto it = cache_.find(xpow);
  if (it != cache_.end()) return it->second;
  TestFunction f = kappa_;
  for (size_t i = 0; i < xpow.size(); ++i)
    for (int j = 0; j < xpow[i]; ++j) f = f.mul_coordinate(int(i));
  auto [pos, ok] = cache_.emplace(xpow, kernel_at(f, params_));
  return pos->second;
}

const KernelMatrix& DeltaWorkspace::delta_direct(int i) {
  std::vector<int> xp(size_t(dimension(params_.group)), 0);
  xp[size_t(i - 1)] = 1;
  return monomial_kernel(xp);
}

KernelMatrix DeltaWorkspace::param_derivative(char param) {
  std::string key(1, param);
  auto it = deriv_cache_.find(key);
  if (it != deriv_cache_.end()) return it->second;
  auto family = [&](double value) {
    RepParams p = params_;
    switch (param) {
      case 'l': p.lambda = value; break;
      case 'm': p.mu = value; break;
      case 'n': p.nu = value; break;
      default: throw std::invalid_argument("param_derivative: bad param");
    }
    p.validate();
    return kernel_at(kappa_, p);
  };
  double at = param == 'l' ? params_.lambda : (param == 'm' ? params_.mu : params_.nu);
  double step = fd_step_ * std::max(1.0, std::abs(at));
  KernelMatrix d = central_difference_family(family, at, step, nullptr);
  deriv_cache_.emplace(key, d);
  return d;
}

KernelMatrix central_difference_family(const std::function<KernelMatrix(double)>& family, double at,
                                       double step, double* richardson_error) {
  auto cd = [&](double h) {
    KernelMatrix plus = family(at + h);
    KernelMatrix minus = family(at - h);
    plus -= minus;
    plus.scale(Complex(1.0 / (2.0 * h)));
    return plus;
  };
  KernelMatrix d1 = cd(step);
  KernelMatrix d2 = cd(0.5 * step);
  KernelMatrix out = d2;
  out.scale(Complex(4.0 / 3.0));
  KernelMatrix d1s = d1;
  d1s.scale(Complex(1.0 / 3.0));
  out -= d1s;
  if (richardson_error) {
    KernelMatrix diff = d2;
    diff -= d1;
    *richardson_error = hs_norm(diff) / 3.0;
  }
  return out;
}

namespace {

// left/right composition of a first-order one-variable operator with a kernel
KernelMatrix compose_left(const DiffOp1C& op, const KernelMatrix& K) {
  KernelMatrix out(K.grid);
  for (const auto& [alpha, coeff] : op.terms()) {
    KernelMatrix part = K;
    for (int j = 0; j < alpha[0]; ++j) part = ddu_left(part);
    std::vector<Complex> cs;
    for (const auto& [mon, c] : coeff.terms()) {
      if (int(cs.size()) <= int(mon[0])) cs.resize(size_t(mon[0]) + 1, Complex(0));
      cs[size_t(mon[0])] = c;
    }
    PolyC p(cs.empty() ? std::vector<Complex>{Complex(0)} : cs);
    part.diag_left([p](double u) { return p.eval(u); });
    out += part;
  }
  return out;
}

KernelMatrix compose_right(const DiffOp1C& op, const KernelMatrix& K) {
  KernelMatrix out(K.grid);
  for (const auto& [alpha, coeff] : op.terms()) {
    KernelMatrix part = K;
    std::vector<Complex> cs;
    for (const auto& [mon, c] : coeff.terms()) {
      if (int(cs.size()) <= int(mon[0])) cs.resize(size_t(mon[0]) + 1, Complex(0));
      cs[size_t(mon[0])] = c;
    }
    PolyC p(cs.empty() ? std::vector<Complex>{Complex(0)} : cs);
    part.diag_right([p](double v) { return p.eval(v); });
    for (int j = 0; j < alpha[0]; ++j) part = ddu_right(part);
    out += part;
  }
  return out;
}

}  // namespace

KernelMatrix DeltaWorkspace::assemble_from_table(char param, const std::vector<int>& target) {
  const int dim = dimension(params_.group);
  DerivTable table = phase_derivative_table(params_.group, param, params_.lambda, params_.mu, params_.nu);
  // locate the target coefficient (u-power 0)
  double c_t = 0;
  for (const auto& e : table.entries)
    if (e.xpow == target && e.upow == 0) c_t = e.coeff;
  if (c_t == 0) throw std::logic_error("assemble_from_table: target monomial missing from the expansion");
  KernelMatrix acc = param_derivative(param);
  // remove the shift-derivative terms (they act through d/du on the test vector)
  if (table.shift_dx1 != 0) {
    std::vector<int> e1(size_t(dim), 0);
    e1[0] = 1;
    KernelMatrix t = ddu_right(monomial_kernel(e1));
    t.scale(Complex(table.shift_dx1));
    acc -= t;
  }
  if (table.shift_dx2 != 0) {
    std::vector<int> e2(size_t(dim), 0);
    e2[1] = 1;
    KernelMatrix t = ddu_right(monomial_kernel(e2));
    t.scale(Complex(table.shift_dx2));
    acc -= t;
  }
  // K_target = 1/(i c_t) [K_param - shifts] - (1/c_t) sum_{m != target} c_m u^k K_m
  acc.scale(1.0 / (kI * c_t));
  for (const auto& e : table.entries) {
    if (e.xpow == target && e.upow == 0) continue;
    KernelMatrix part = monomial_kernel(e.xpow);
    if (e.upow > 0) {
      const int up = e.upow;
      part.diag_left([up](double u) { return Complex(std::pow(u, up)); });
    }
    part.scale(Complex(-e.coeff / c_t));
    acc += part;
  }
  return acc;
}

KernelMatrix DeltaWorkspace::delta_engel(int i) {
  const RepParams& p = params_;
  const double l = p.lambda, m = p.mu;
  const KernelMatrix& K = monomial_kernel(std::vector<int>(4, 0));
  switch (i) {
    case 1: {
      // (i/lambda) [pi(X3) K - K pi(X3)]
      KernelMatrix a = compose_left(infinitesimal(p, 3), K);
      a -= compose_right(infinitesimal(p, 3), K);
      a.scale(kI / l);
      return a;
    }
    case 2: {
      // (2 lambda / i) d/dmu
      KernelMatrix d = param_derivative('m');
      d.scale(2.0 * l / kI);
      return d;
    }
    case 3: {
      // (i/lambda)[Delta_{x2} K pi(X3) + K pi(X1) - pi(X1) K]
      KernelMatrix a = compose_right(infinitesimal(p, 3), delta_direct(2));
      a += compose_right(infinitesimal(p, 1), K);
      a -= compose_left(infinitesimal(p, 1), K);
      a.scale(kI / l);
      return a;
    }
    case 4: {
      // i d/dlambda - (mu/(2 lambda^2) + u^2/2) Delta_{x2} + u Delta_{x3}
      // - Delta_{x3}Delta_{x1} + u Delta_{x2}Delta_{x1} - 1/2 Delta_{x2}Delta_{x1}^2
      KernelMatrix acc = param_derivative('l');
      acc.scale(kI);
      {
        KernelMatrix t = delta_direct(2);
        t.diag_left([l, m](double u) { return Complex(m / (2.0 * l * l) + 0.5 * u * u); });
        acc -= t;
      }
      {
        KernelMatrix t = delta_direct(3);
        t.diag_left([](double u) { return Complex(u); });
        acc += t;
      }
      acc -= monomial_kernel({1, 0, 1, 0});
      {
        KernelMatrix t = monomial_kernel({1, 1, 0, 0});
        t.diag_left([](double u) { return Complex(u); });
        acc += t;
      }
      {
        KernelMatrix t = monomial_kernel({2, 1, 0, 0});
        t.scale(Complex(0.5));
        acc -= t;
      }
      return acc;
    }
  }
  throw std::invalid_argument("delta_engel: index must be in 1..4");
}

KernelMatrix DeltaWorkspace::delta_cartan(int i) {
  const RepParams& p = params_;
  const double l = p.lambda, m = p.mu;
  const double r = p.rho();
  const KernelMatrix& K = monomial_kernel(std::vector<int>(5, 0));
  switch (i) {
    case 1: {
      // -2 i mu d/dnu + (i lambda / rho)[pi(X3) K - K pi(X3)]
      KernelMatrix a = compose_left(infinitesimal(p, 3), K);
      a -= compose_right(infinitesimal(p, 3), K);
      a.scale(kI * l / r);
      if (m != 0) {
        KernelMatrix d = param_derivative('n');
        d.scale(-2.0 * kI * m);
        a += d;
      }
      return a;
    }
    case 2: {
      KernelMatrix a = compose_left(infinitesimal(p, 3), K);
      a -= compose_right(infinitesimal(p, 3), K);
      a.scale(kI * m / r);
      KernelMatrix d = param_derivative('n');
      d.scale(2.0 * kI * l);
      a += d;
      return a;
    }
    case 3: {
      // (i/lambda)[Delta_{x2} K pi(X3) + K pi(X1) - pi(X1) K] + (mu/(2 lambda)) Delta_{x2}^2
      // (the proof's coefficient mu/(2 lambda); the statement's mu/lambda fails the oracle)
      if (l == 0) throw std::invalid_argument("delta_cartan: x3 formula requires lambda != 0");
      KernelMatrix a = compose_right(infinitesimal(p, 3), delta_direct(2));
      a += compose_right(infinitesimal(p, 1), K);
      a -= compose_left(infinitesimal(p, 1), K);
      a.scale(kI / l);
      {
        KernelMatrix t = monomial_kernel({0, 2, 0, 0, 0});
        t.scale(Complex(m / (2.0 * l)));
        a += t;
      }
      return a;
    }
    case 4: return assemble_from_table('l', {0, 0, 0, 1, 0});
    case 5: return assemble_from_table('m', {0, 0, 0, 0, 1});
  }
  throw std::invalid_argument("delta_cartan: index must be in 1..5");
}

KernelMatrix DeltaWorkspace::delta_formula(int i) {
  return params_.group == GroupId::Engel ? delta_engel(i) : delta_cartan(i);
}

DeltaReport run_delta_case(DeltaWorkspace& ws, int i) {
  KernelMatrix formula = ws.delta_formula(i);
  const KernelMatrix& direct = ws.delta_direct(i);
  DeltaReport r{};
  r.group = ws.params().group;
  r.index = i;
  r.lambda = ws.params().lambda;
  r.mu = ws.params().mu;
  r.nu = ws.params().nu;
  r.fd_step = ws.fd_step();
  r.rel_hs_error = rel_hs_error(formula, direct);
  return r;
}

}  // namespace nilcalc
