#include "nilcalc/fields.hpp"

#include <stdexcept>

namespace nilcalc {

namespace {

DiffOpQ dpartial(int n, int i) { return DiffOpQ::partial(n, i); }
PolyQ var(int n, int i) { return PolyQ::variable(n, i); }

DiffOpQ mul(const PolyQ& p, const DiffOpQ& d) { return compose(DiffOpQ::multiplication(p), d); }

}  // namespace

std::vector<DiffOpQ> invariant_fields(GroupId group, Side side) {
  const int n = dimension(group);
  std::vector<DiffOpQ> out;
  const Rational half(1, 2);
  if (group == GroupId::Engel) {
    PolyQ x1 = var(n, 0), x2 = var(n, 1), x3 = var(n, 2);
    if (side == Side::Left) {
      out.push_back(dpartial(n, 0));
      out.push_back(dpartial(n, 1) - mul(x1, dpartial(n, 2)) + mul(half * (x1 * x1), dpartial(n, 3)));
      out.push_back(dpartial(n, 2) - mul(x1, dpartial(n, 3)));
      out.push_back(dpartial(n, 3));
    } else {
      out.push_back(dpartial(n, 0) - mul(x2, dpartial(n, 2)) - mul(x3, dpartial(n, 3)));
      out.push_back(dpartial(n, 1));
      out.push_back(dpartial(n, 2));
      out.push_back(dpartial(n, 3));
    }
  } else {
    PolyQ x1 = var(n, 0), x2 = var(n, 1), x3 = var(n, 2);
    if (side == Side::Left) {
      out.push_back(dpartial(n, 0));
      out.push_back(dpartial(n, 1) - mul(x1, dpartial(n, 2)) + mul(half * (x1 * x1), dpartial(n, 3)) +
                    mul(x1 * x2, dpartial(n, 4)));
      out.push_back(dpartial(n, 2) - mul(x1, dpartial(n, 3)) - mul(x2, dpartial(n, 4)));
      out.push_back(dpartial(n, 3));
      out.push_back(dpartial(n, 4));
    } else {
      out.push_back(dpartial(n, 0) - mul(x2, dpartial(n, 2)) - mul(x3, dpartial(n, 3)) +
                    mul(half * (x2 * x2), dpartial(n, 4)));
      out.push_back(dpartial(n, 1) - mul(x3, dpartial(n, 4)));
      out.push_back(dpartial(n, 2));
      out.push_back(dpartial(n, 3));
      out.push_back(dpartial(n, 4));
    }
  }
  return out;
}

std::vector<std::vector<std::vector<Rational>>> structure_constants(GroupId group, Side side) {
  const int n = dimension(group);
  std::vector<std::vector<std::vector<Rational>>> c(
      size_t(n), std::vector<std::vector<Rational>>(size_t(n), std::vector<Rational>(size_t(n), Rational(0))));
  // sign with which the basis realizes the abstract table [I1,I2]=I3, ...
  const Rational s = (side == Side::Left) ? Rational(-1) : Rational(1);
  c[0][1][2] = s;
  c[1][0][2] = -s;
  c[0][2][3] = s;
  c[2][0][3] = -s;
  if (group == GroupId::Cartan) {
    c[1][2][4] = s;
    c[2][1][4] = -s;
  }
  return c;
}

}  // namespace nilcalc
