#pragma once

#include <array>
#include <stdexcept>
#include <vector>

namespace nilcalc {

enum class GroupId { Engel, Cartan };

inline int dimension(GroupId g) { return g == GroupId::Engel ? 4 : 5; }

/// Dilation weights: (1,1,2,3) for Engel, (1,1,2,3,3) for Cartan.
inline const std::vector<int>& dilation_weights(GroupId g) {
  static const std::vector<int> engel{1, 1, 2, 3};
  static const std::vector<int> cartan{1, 1, 2, 3, 3};
  return g == GroupId::Engel ? engel : cartan;
}

/// Homogeneous dimension Q = sum of weights: 7 (Engel), 10 (Cartan).
inline int homogeneous_dimension(GroupId g) {
  int q = 0;
  for (int w : dilation_weights(g)) q += w;
  return q;
}

/// A point of the group in the paper's global coordinates. Scalar is double
/// for numerics; the exact-rational twin used by the algebra tests
/// instantiates the same formulas over Rational.
template <class S>
struct Point {
  GroupId group;
  std::vector<S> x;

  static Point identity(GroupId g) { return {g, std::vector<S>(size_t(dimension(g)), S(0))}; }
};

template <class S>
Point<S> multiply(const Point<S>& a, const Point<S>& b) {
  if (a.group != b.group) throw std::invalid_argument("multiply: group mismatch");
  const auto& x = a.x;
  const auto& y = b.x;
  Point<S> r{a.group, {}};
  if (a.group == GroupId::Engel) {
    r.x = {x[0] + y[0], x[1] + y[1], x[2] + y[2] - x[0] * y[1],
           x[3] + y[3] + x[0] * x[0] * y[1] / S(2) - x[0] * y[2]};
  } else {
    r.x = {x[0] + y[0], x[1] + y[1], x[2] + y[2] - x[0] * y[1],
           x[3] + y[3] + x[0] * x[0] * y[1] / S(2) - x[0] * y[2],
           x[4] + y[4] + x[0] * y[1] * y[1] / S(2) - x[1] * y[2] + x[0] * x[1] * y[1]};
  }
  return r;
}

/// Closed-form inverse solved once from the group law; multiply(a, inverse(a))
/// is the identity exactly in the coordinate field.
template <class S>
Point<S> inverse(const Point<S>& a) {
  const auto& x = a.x;
  Point<S> r{a.group, {}};
  S y3 = -x[2] - x[0] * x[1];
  S y4 = -x[3] - x[0] * x[2] - x[0] * x[0] * x[1] / S(2);
  if (a.group == GroupId::Engel) {
    r.x = {-x[0], -x[1], y3, y4};
  } else {
    S y5 = -x[4] - x[1] * x[2] - x[0] * x[1] * x[1] / S(2);
    r.x = {-x[0], -x[1], y3, y4, y5};
  }
  return r;
}

/// D_r: coordinate i scaled by r^{w_i}.
template <class S>
Point<S> dilate(const S& r, const Point<S>& a) {
  if (!(S(0) < r)) throw std::invalid_argument("dilate: r must be positive");
  Point<S> out{a.group, a.x};
  const auto& w = dilation_weights(a.group);
  for (size_t i = 0; i < a.x.size(); ++i) {
    S f = S(1);
    for (int j = 0; j < w[i]; ++j) f = f * r;
    out.x[i] = f * a.x[i];
  }
  return out;
}

using GroupElement = Point<double>;

}  // namespace nilcalc
