#include "nilcalc/verify.hpp"

#include <cmath>
#include <random>

#include "nilcalc/fields.hpp"

namespace nilcalc {

namespace {

// exact spot check of the field formulas against the law: dual-number
// derivative of the translated point in direction i at y = 0
bool fields_match_law(GroupId g, Side side) {
  const int n = dimension(g);
  auto fields = invariant_fields(g, side);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> numer(-8, 8);
  using D = Dual<Rational>;
  for (int trial = 0; trial < 20; ++trial) {
    Point<Rational> x{g, {}};
    for (int k = 0; k < n; ++k) x.x.push_back(Rational(numer(rng), 4));
    for (int i = 0; i < n; ++i) {
      Point<D> a{g, {}}, b{g, {}};
      for (int k = 0; k < n; ++k) {
        b.x.push_back(D(x.x[size_t(k)]));
        a.x.push_back(D(Rational(0)));
      }
      a.x[size_t(i)] = D::variable(Rational(0));
      Point<D> prod = (side == Side::Left) ? multiply(b, a) : multiply(a, b);
      const auto& op = fields[size_t(i)];
      for (int k = 0; k < n; ++k) {
        Rational got = prod.x[size_t(k)].der;
        MultiIndex want(size_t(n), 0);
        want[size_t(k)] = 1;
        Rational expect(0);
        for (const auto& [alpha, coeff] : op.terms()) {
          if (alpha != want) continue;
          std::vector<Rational> pt(x.x.begin(), x.x.end());
          expect = coeff.eval(pt);
        }
        if (!(got == expect)) return false;
      }
    }
  }
  return true;
}

}  // namespace

std::vector<std::pair<std::string, bool>> run_algebra_checks(GroupId g) {
  const int n = dimension(g);
  std::vector<std::pair<std::string, bool>> out;
  auto record = [&](const std::string& name, bool ok) { out.emplace_back(name, ok); };

  auto L = invariant_fields(g, Side::Left);
  auto R = invariant_fields(g, Side::Right);

  for (auto side : {Side::Left, Side::Right}) {
    const auto& F = side == Side::Left ? L : R;
    auto c = structure_constants(g, side);
    bool ok = true;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        DiffOpQ expect(n);
        for (int k = 0; k < n; ++k)
          if (!(c[size_t(i)][size_t(j)][size_t(k)] == Rational(0)))
            expect = expect + c[size_t(i)][size_t(j)][size_t(k)] * F[size_t(k)];
        ok = ok && (commutator(F[size_t(i)], F[size_t(j)]) == expect);
      }
    record(side == Side::Left ? "structure-relations-left" : "structure-relations-right", ok);
  }

  {
    bool ok = true;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ok = ok && commutator(L[size_t(i)], R[size_t(j)]).is_zero();
    record("left-right-commute", ok);
  }

  record("left-fields-from-law", fields_match_law(g, Side::Left));
  record("right-fields-from-law", fields_match_law(g, Side::Right));

  {
    bool ok = true;
    for (auto* F : {&L, &R})
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            auto jac = commutator(commutator((*F)[size_t(i)], (*F)[size_t(j)]), (*F)[size_t(k)]) +
                       commutator(commutator((*F)[size_t(j)], (*F)[size_t(k)]), (*F)[size_t(i)]) +
                       commutator(commutator((*F)[size_t(k)], (*F)[size_t(i)]), (*F)[size_t(j)]);
            ok = ok && jac.is_zero();
          }
    record("jacobi-identity", ok);
  }

  {
    auto mult = [&](const PolyQ& p) { return DiffOpQ::multiplication(p); };
    PolyQ x1 = PolyQ::variable(n, 0), x2 = PolyQ::variable(n, 1), x3 = PolyQ::variable(n, 2);
    bool ok = true;
    if (g == GroupId::Engel) {
      DiffOpQ d4 = DiffOpQ::partial(n, 3);
      ok = ok && (R[2] - L[2] == compose(mult(x1), d4));
      ok = ok && (L[0] - R[0] - compose(mult(x2), R[2]) == compose(mult(x3), d4));
    } else {
      ok = ok && (R[2] - L[2] == compose(mult(x1), L[3]) + compose(mult(x2), L[4]));
      Rational half(1, 2);
      ok = ok && (compose(L[3], mult(x3)) ==
                  L[0] - compose(mult(x2), R[2]) + compose(mult(half * (x2 * x2)), L[4]) - R[0]);
    }
    record("proof-identities", ok);
  }

  {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> numer(-6, 6);
    auto rnd = [&]() {
      Point<Rational> p{g, {}};
      for (int k = 0; k < n; ++k) p.x.push_back(Rational(numer(rng), 3));
      return p;
    };
    bool ok = true;
    for (int trial = 0; trial < 25; ++trial) {
      auto a = rnd(), b = rnd(), c = rnd();
      ok = ok && (multiply(multiply(a, b), c).x == multiply(a, multiply(b, c)).x);
      auto e = Point<Rational>::identity(g);
      ok = ok && (multiply(a, inverse(a)).x == e.x);
      ok = ok && (multiply(inverse(a), a).x == e.x);
      ok = ok && (inverse(inverse(a)).x == a.x);
      Rational r(std::abs(numer(rng)) + 1, 2);
      Rational s2(5, 3);
      ok = ok && (dilate(r, multiply(a, b)).x == multiply(dilate(r, a), dilate(r, b)).x);
      ok = ok && (dilate(r, dilate(s2, a)).x == dilate(r * s2, a).x);
    }
    ok = ok && (homogeneous_dimension(g) == (g == GroupId::Engel ? 7 : 10));
    record("group-axioms-dilations", ok);
  }

  {
    auto sub = compose(L[0], L[0]) + compose(L[1], L[1]);
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> numer(-4, 4);
    bool ok = true;
    for (int trial = 0; trial < 20; ++trial) {
      PolyQ poly(n);
      for (int t2 = 0; t2 < 6; ++t2) {
        MultiIndex m(size_t(n), 0);
        for (int k = 0; k < n; ++k) m[size_t(k)] = std::uint8_t(std::abs(numer(rng)) % 3);
        poly.add_term(m, Rational(numer(rng), 2));
      }
      ok = ok && (sub.apply(poly) ==
                  L[0].apply(L[0].apply(poly)) + L[1].apply(L[1].apply(poly)));
    }
    record("sub-laplacian-expansion", ok);
  }

  return out;
}

RepSuiteResult run_rep_suite(GroupId g, int draws, const Grid1D& grid, unsigned long long seed) {
  const int n = dimension(g);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  auto rnd_elem = [&]() {
    GroupElement e = GroupElement::identity(g);
    for (int k = 0; k < n; ++k) e.x[size_t(k)] = 1.5 * unif(rng);
    return e;
  };
  auto rnd_params = [&]() {
    double l = (unif(rng) > 0 ? 1 : -1) * (0.6 + 0.9 * std::abs(unif(rng)));
    if (g == GroupId::Engel) return RepParams::engel(l, 1.5 * unif(rng));
    double m2 = (unif(rng) > 0 ? 1 : -1) * (0.6 + 0.9 * std::abs(unif(rng)));
    return RepParams::cartan(l, m2, 1.5 * unif(rng));
  };
  GaussSum h(hermite_factor(0.2, 1.0, 0));
  GaussSum h2(hermite_factor(-0.3, 0.9, 1));
  GridFunction1D hh = sample(h, grid);

  RepSuiteResult r{0, 0, 0, 0, 0};
  for (int trial = 0; trial < draws; ++trial) {
    RepParams p = rnd_params();
    GroupElement g1 = rnd_elem(), g2 = rnd_elem();
    GridFunction1D a = sample(rep_apply(p, g1, rep_apply(p, g2, h)), grid);
    GridFunction1D b = sample(rep_apply(p, multiply(g1, g2), h), grid);
    r.homomorphism_err = std::max(r.homomorphism_err, rel_l2_error(a, b));

    GridFunction1D pg = sample(rep_apply(p, g1, h), grid);
    r.unitarity_err =
        std::max(r.unitarity_err, std::abs(norm_l2(pg) - norm_l2(hh)) / norm_l2(hh));
    GaussSum round = rep_adjoint_apply(p, g1, rep_apply(p, g1, h));
    r.unitarity_err = std::max(r.unitarity_err, rel_l2_error(sample(round, grid), hh));

    Complex lhs_ip = inner(pg, sample(h2, grid));
    Complex rhs_ip = inner(hh, sample(rep_adjoint_apply(p, g1, h2), grid));
    r.adjoint_pairing_err =
        std::max(r.adjoint_pairing_err, std::abs(lhs_ip - rhs_ip) / std::abs(rhs_ip));
  }

  auto cc = structure_constants(g, Side::Left);
  for (int k5 = 0; k5 < 5; ++k5) {
    RepParams p = rnd_params();
    for (int i = 1; i <= n; ++i) {
      GridFunction1D oracle = infinitesimal_oracle(p, i, h, 1e-3, grid);
      GridFunction1D closed = sample(apply_op(infinitesimal(p, i), h), grid);
      r.infinitesimal_err = std::max(r.infinitesimal_err, rel_l2_error(oracle, closed));
    }
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        DiffOp1C lhs = commutator(infinitesimal(p, i), infinitesimal(p, j));
        DiffOp1C rhs(1);
        for (int k = 0; k < n; ++k) {
          Rational c = cc[size_t(i - 1)][size_t(j - 1)][size_t(k)];
          if (!(c == Rational(0))) rhs = rhs + Complex(c.to_double()) * infinitesimal(p, k + 1);
        }
        DiffOp1C diff = lhs - rhs;
        for (const auto& [alpha, coeff] : diff.terms())
          for (const auto& [mon, c] : coeff.terms())
            r.bracket_err = std::max(r.bracket_err, std::abs(c));
      }
  }
  return r;
}

TestFunction gft_suite_f(GroupId g, int which) {
  const int n = dimension(g);
  std::vector<double> c0(size_t(n), 0.0), w1(size_t(n), 1.0);
  switch (which) {
    case 0: return TestFunction::gaussian(n, c0, w1);
    case 1: {
      std::vector<double> c(size_t(n), 0.0), w(size_t(n), 1.0);
      c[0] = 0.4;
      c[1] = -0.3;
      w[2] = 1.3;
      w[3] = 0.8;
      return TestFunction::gaussian(n, c, w);
    }
    default: {
      TestFunction f = TestFunction::gaussian(n, c0, w1);
      f = f.mul_coordinate(0);
      TestFunction f2 = TestFunction::gaussian(n, std::vector<double>(size_t(n), 0.1),
                                               std::vector<double>(size_t(n), 1.1), Complex(0.5));
      f.terms.insert(f.terms.end(), f2.terms.begin(), f2.terms.end());
      return f;
    }
  }
}

std::vector<DeltaReport> run_delta_suite(GroupId g, const Grid1D& grid, int workers, double fd_step) {
  const int n = dimension(g);
  DirectQuad dq;
  dq.workers = workers;
  std::vector<RepParams> params;
  if (g == GroupId::Engel) {
    params = {RepParams::engel(1.0, 0.7), RepParams::engel(1.0, 0.0), RepParams::engel(2.0, -1.0)};
  } else {
    params = {RepParams::cartan(1.0, 0.7, 0.3), RepParams::cartan(1.0, 0.0, 0.5),
              RepParams::cartan(0.8, -1.2, 1.0)};
  }
  std::vector<DeltaReport> out;
  for (int which = 0; which < 3; ++which) {
    TestFunction kappa = gft_suite_f(g, which);
    const RepParams& p = params[size_t(which)];
    DeltaWorkspace ws(kappa, p, grid, dq, KernelScale::Consistent, fd_step);
    for (int i = 1; i <= n; ++i) out.push_back(run_delta_case(ws, i));
  }
  return out;
}

}  // namespace nilcalc
