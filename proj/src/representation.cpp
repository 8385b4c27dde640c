#include "nilcalc/representation.hpp"

#include <cmath>
#include <stdexcept>

namespace nilcalc {

RepParams RepParams::engel(double lambda, double mu) {
  RepParams p{GroupId::Engel, lambda, mu, 0.0};
  p.validate();
  return p;
}

RepParams RepParams::cartan(double lambda, double mu, double nu) {
  RepParams p{GroupId::Cartan, lambda, mu, nu};
  p.validate();
  return p;
}

void RepParams::validate() const {
  if (group == GroupId::Engel) {
    if (lambda == 0.0) throw std::invalid_argument("Engel representation requires lambda != 0");
  } else {
    if (lambda * lambda + mu * mu == 0.0)
      throw std::invalid_argument("Cartan representation requires lambda^2 + mu^2 != 0");
  }
}

double rep_shift(const RepParams& p, const GroupElement& g) {
  if (p.group == GroupId::Engel) return g.x[0];
  return (p.lambda * g.x[0] + p.mu * g.x[1]) / p.rho();
}

PhaseCoeffs rep_phase(const RepParams& p, const GroupElement& g) {
  if (g.group != p.group) throw std::invalid_argument("rep_phase: group mismatch");
  const auto& x = g.x;
  if (p.group == GroupId::Engel) {
    const double l = p.lambda, m = p.mu;
    return {0.5 * l * x[1], -l * x[2], -m / (2.0 * l) * x[1] + l * x[3]};
  }
  const double l = p.lambda, m = p.mu, nu = p.nu, r = p.rho();
  const double a = x[0], b = x[1];
  const double c = x[2] + x[0] * x[1];
  const double d = x[3] + x[0] * x[2] + 0.5 * x[0] * x[0] * x[1];
  const double e = x[4] + x[1] * x[2] + 0.5 * x[0] * x[1] * x[1];
  const double s = (l * a + m * b) / r;
  // Theta1(u) = int_0^a q1(u + l t / r) dt, q1(w) = -nu m/(2r) - (r m/2) w^2
  double A2 = 0, A1 = 0, A0 = 0;
  A2 += -0.5 * r * m * a;
  A1 += -0.5 * r * m * (l / r) * a * a;
  A0 += -nu * m / (2.0 * r) * a - 0.5 * r * m * (l * l / (r * r)) * a * a * a / 3.0;
  // Theta2 at w = u + l a / r: q2(w) = nu l/(2r) + (r l / 2) w^2
  {
    const double off = l * a / r;
    // int_0^b q2(u + off + m t / r) dt expanded in u
    const double c2 = 0.5 * r * l;
    // (u + off + m t/r)^2 integrated: b u^2 + (2 off b + m b^2 / r) u + (off^2 b + off m b^2/r + m^2 b^3/(3 r^2))
    A2 += c2 * b;
    A1 += c2 * (2.0 * off * b + m * b * b / r);
    A0 += nu * l / (2.0 * r) * b + c2 * (off * off * b + off * m * b * b / r + m * m * b * b * b / (3.0 * r * r));
  }
  // -r c (u + s)  [pi(X3) = -i r u]
  A1 += -r * c;
  A0 += -r * c * s;
  // central part
  A0 += l * d + m * e;
  return {A2, A1, A0};
}

GaussSum rep_apply(const RepParams& p, const GroupElement& g, const GaussSum& h) {
  const double s = rep_shift(p, g);
  const PhaseCoeffs ph = rep_phase(p, g);
  GaussSum out = shift(h, s);
  const Complex i(0, 1);
  return mul_quadratic_phase(out, i * ph.a2, i * ph.a1, i * ph.a0);
}

GaussSum rep_adjoint_apply(const RepParams& p, const GroupElement& g, const GaussSum& h) {
  return rep_apply(p, inverse(g), h);
}

GridFunction1D rep_apply(const RepParams& p, const GroupElement& g, const GridFunction1D& h) {
  const double s = rep_shift(p, g);
  const PhaseCoeffs ph = rep_phase(p, g);
  const Grid1D& grid = h.grid;
  GridFunction1D out(grid);
  const double hh = grid.h();
  auto sample_at = [&](double t) -> Complex {
    // cubic (Catmull-Rom) interpolation, zero extension outside the grid
    double pos = (t + grid.L) / hh;
    int k1 = int(std::floor(pos));
    double frac = pos - k1;
    auto val = [&](int k) -> Complex {
      return (k < 0 || k >= grid.N) ? Complex(0) : h.samples[size_t(k)];
    };
    Complex f0 = val(k1 - 1), f1 = val(k1), f2 = val(k1 + 1), f3 = val(k1 + 2);
    double t2 = frac * frac, t3 = t2 * frac;
    return 0.5 * ((2.0 * f1) + (-f0 + f2) * frac + (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) * t2 +
                  (-f0 + 3.0 * f1 - 3.0 * f2 + f3) * t3);
  };
  const Complex i(0, 1);
  for (int k = 0; k < grid.N; ++k) {
    double u = grid.node(k);
    out.samples[size_t(k)] = std::exp(i * ph.eval(u)) * sample_at(u + s);
  }
  return out;
}

DiffOp1C infinitesimal(const RepParams& p, int i) {
  const int dim = dimension(p.group);
  if (i < 1 || i > dim) throw std::invalid_argument("infinitesimal: invalid basis index");
  const Complex I(0, 1);
  auto mult = [&](const PolyC& poly) {
    DiffOp1C op(1);
    Polynomial<Complex> c(1);
    for (int k = 0; k <= poly.degree(); ++k) {
      MultiIndex m{std::uint8_t(k)};
      c.add_term(m, poly.coeffs[size_t(k)]);
    }
    op.add_term(MultiIndex{0}, c);
    return op;
  };
  auto dd = DiffOp1C::partial(1, 0);
  const double l = p.lambda, m = p.mu, nu = p.nu;
  if (p.group == GroupId::Engel) {
    switch (i) {
      case 1: return dd;
      case 2: return mult(PolyC({-I * m / (2.0 * l), Complex(0), I * 0.5 * l}));
      case 3: return mult(PolyC({Complex(0), -I * l}));
      case 4: return mult(PolyC({I * l}));
    }
  } else {
    const double r = p.rho();
    switch (i) {
      case 1: {
        auto op = mult(PolyC({-I * 0.5 * nu * m / r, Complex(0), -I * 0.5 * r * m}));
        return op + Complex(l / r) * dd;
      }
      case 2: {
        auto op = mult(PolyC({I * 0.5 * nu * l / r, Complex(0), I * 0.5 * r * l}));
        return op + Complex(m / r) * dd;
      }
      case 3: return mult(PolyC({Complex(0), -I * r}));
      case 4: return mult(PolyC({I * l}));
      case 5: return mult(PolyC({I * m}));
    }
  }
  throw std::logic_error("unreachable");
}

GroupElement exp_basis(GroupId group, int i, double t) {
  GroupElement g = GroupElement::identity(group);
  g.x[size_t(i - 1)] = t;
  return g;
}

GaussSum apply_op(const DiffOp1C& op, const GaussSum& h) {
  GaussSum out;
  for (const auto& [alpha, coeff] : op.terms()) {
    GaussSum g = h;
    for (int j = 0; j < alpha[0]; ++j) g = derivative(g);
    PolyC pc;
    {
      std::vector<Complex> cs;
      for (const auto& [m, c] : coeff.terms()) {
        if (int(cs.size()) <= int(m[0])) cs.resize(size_t(m[0]) + 1, Complex(0));
        cs[size_t(m[0])] = c;
      }
      if (cs.empty()) cs.push_back(Complex(0));
      pc = PolyC(std::move(cs));
    }
    out += mul_poly(g, pc);
  }
  return out;
}

GridFunction1D infinitesimal_oracle(const RepParams& p, int i, const GaussSum& h, double t_step,
                                    const Grid1D& grid) {
  if (!(t_step > 0)) throw std::invalid_argument("infinitesimal_oracle: t_step must be positive");
  auto central = [&](double t) {
    GaussSum plus = rep_apply(p, exp_basis(p.group, i, t), h);
    GaussSum minus = rep_apply(p, exp_basis(p.group, i, -t), h);
    GridFunction1D out(grid);
    for (int k = 0; k < grid.N; ++k) {
      double u = grid.node(k);
      out.samples[size_t(k)] = (plus.eval(u) - minus.eval(u)) / (2.0 * t);
    }
    return out;
  };
  GridFunction1D d1 = central(t_step);
  GridFunction1D d2 = central(0.5 * t_step);
  GridFunction1D out(grid);
  for (int k = 0; k < grid.N; ++k)
    out.samples[size_t(k)] = (4.0 * d2.samples[size_t(k)] - d1.samples[size_t(k)]) / 3.0;
  return out;
}

DiffOp1C build_symbol(const RepParams& p, const std::vector<std::pair<int, int>>& spec) {
  DiffOp1C acc = DiffOp1C::identity(1);
  const Complex I(0, 1);
  for (auto [idx, power] : spec) {
    if (power >= 0) {
      DiffOp1C op = infinitesimal(p, idx);
      for (int j = 0; j < power; ++j) acc = compose(acc, op);
    } else {
      // negative powers only for scalar pi(X_i)
      Complex scalar;
      if (p.group == GroupId::Engel && idx == 4)
        scalar = I * p.lambda;
      else if (p.group == GroupId::Cartan && idx == 4)
        scalar = I * p.lambda;
      else if (p.group == GroupId::Cartan && idx == 5)
        scalar = I * p.mu;
      else
        throw std::invalid_argument("build_symbol: negative power of a non-scalar symbol");
      if (scalar == Complex(0))
        throw std::invalid_argument("build_symbol: negative power of a zero scalar");
      Complex val = 1.0;
      for (int j = 0; j < -power; ++j) val /= scalar;
      acc = compose(acc, val * DiffOp1C::identity(1));
    }
  }
  return acc;
}

}  // namespace nilcalc
