#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilcalc/rational.hpp"

namespace nilcalc {

/// Exponent multi-index for a fixed number of variables.
using MultiIndex = std::vector<std::uint8_t>;

namespace detail {
template <class C>
bool coeff_is_zero(const C& c) {
  if constexpr (requires { c.is_zero(); })
    return c.is_zero();
  else
    return c == C(0);
}
}  // namespace detail

/// Sparse multivariate polynomial over a commutative coefficient ring C.
/// Terms are kept in a canonical (lexicographic) order and zero coefficients
/// are never stored.
template <class C>
class Polynomial {
public:
  using Terms = std::map<MultiIndex, C>;

  Polynomial() : n_vars_(0) {}
  explicit Polynomial(int n_vars) : n_vars_(n_vars) {}

  static Polynomial constant(int n_vars, C c) {
    Polynomial p(n_vars);
    p.add_term(MultiIndex(n_vars, 0), c);
    return p;
  }
  static Polynomial variable(int n_vars, int i, C unit = C(1)) {
    Polynomial p(n_vars);
    MultiIndex m(n_vars, 0);
    m.at(i) = 1;
    p.add_term(m, unit);
    return p;
  }

  int n_vars() const { return n_vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const MultiIndex& m, const C& c) {
    if (detail::coeff_is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  C coefficient(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    check_vars(a, b);
    Polynomial r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    check_vars(a, b);
    Polynomial r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_vars(a, b);
    Polynomial r(a.n_vars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        MultiIndex m(a.n_vars_);
        for (int i = 0; i < a.n_vars_; ++i) m[i] = std::uint8_t(ma[i] + mb[i]);
        r.add_term(m, ca * cb);
      }
    return r;
  }
  Polynomial operator-() const {
    Polynomial r(n_vars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  friend Polynomial operator*(const C& s, const Polynomial& p) {
    Polynomial r(p.n_vars_);
    for (const auto& [m, c] : p.terms_) r.add_term(m, s * c);
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.n_vars_ == b.n_vars_ && a.terms_ == b.terms_;
  }

  /// d/dx_i.
  Polynomial derivative(int i) const {
    Polynomial r(n_vars_);
    for (const auto& [m, c] : terms_) {
      if (m[i] == 0) continue;
      MultiIndex d = m;
      d[i] -= 1;
      r.add_term(d, C(int(m[i])) * c);
    }
    return r;
  }

  /// Substitute variable i by polynomial q (same variable set).
  Polynomial substitute(int i, const Polynomial& q) const {
    Polynomial r(n_vars_);
    for (const auto& [m, c] : terms_) {
      Polynomial t = Polynomial::constant(n_vars_, c);
      MultiIndex rest = m;
      int k = rest[i];
      rest[i] = 0;
      Polynomial mono(n_vars_);
      mono.add_term(rest, C(1));
      t = t * mono;
      for (int j = 0; j < k; ++j) t = t * q;
      r += t;
    }
    return r;
  }

  template <class X>
  X eval(const std::vector<X>& x) const {
    X acc = X(0);
    for (const auto& [m, c] : terms_) {
      X t = coeff_cast<X>(c);
      for (int i = 0; i < n_vars_; ++i)
        for (int j = 0; j < m[i]; ++j) t = t * x[size_t(i)];
      acc = acc + t;
    }
    return acc;
  }

  /// Map coefficients into another ring (e.g. Rational -> double).
  template <class D, class F>
  Polynomial<D> map_coeffs(F&& f) const {
    Polynomial<D> r(n_vars_);
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
  }

  std::string str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) out += " + ";
      first = false;
      out += coeff_str(c);
      for (int i = 0; i < n_vars_; ++i) {
        if (m[i] == 0) continue;
        out += "*" + names[size_t(i)];
        if (m[i] > 1) out += "^" + std::to_string(int(m[i]));
      }
    }
    return out;
  }

private:
  int n_vars_;
  Terms terms_;

  static void check_vars(const Polynomial& a, const Polynomial& b) {
    if (a.n_vars_ != b.n_vars_)
      throw std::invalid_argument("Polynomial: variable-count mismatch");
  }
  template <class X>
  static X coeff_cast(const C& c) {
    if constexpr (std::is_same_v<X, C>)
      return c;
    else if constexpr (std::is_same_v<C, Rational>)
      return X(c.to_double());
    else
      return X(c);
  }
  static std::string coeff_str(const C& c) {
    if constexpr (std::is_same_v<C, Rational>) {
      std::string s = std::to_string(c.num());
      if (c.den() != 1) s += "/" + std::to_string(c.den());
      return s;
    } else {
      return "c";
    }
  }
};

using PolyQ = Polynomial<Rational>;

}  // namespace nilcalc
