#pragma once

#include <vector>

#include "nilcalc/diffop.hpp"
#include "nilcalc/group.hpp"

namespace nilcalc {

enum class Side { Left, Right };

/// The canonical invariant vector fields of the group as exact differential
/// operators, X_i(x) = d/dy_i (x.y)|_{y=0} (left) and d/dy_i (y.x)|_{y=0}
/// (right). Derived once from the group law and frozen here; the algebra
/// tests re-derive them from the law and compare.
std::vector<DiffOpQ> invariant_fields(GroupId group, Side side);

/// Structure table of the basis as differential operators,
/// c[i][j] = coefficients of [X_i, X_j] in the basis itself. With the paper's
/// group law the left-invariant basis satisfies [X1,X2] = -X3 (and so on);
/// the right-invariant basis carries the opposite sign.
std::vector<std::vector<std::vector<Rational>>> structure_constants(GroupId group, Side side);

}  // namespace nilcalc
