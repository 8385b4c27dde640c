#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilcalc/polynomial.hpp"

namespace nilcalc {

/// Differential operator with polynomial coefficients, sum p_a(x) d^a, kept in
/// normal form (all coefficients to the left of all derivatives). Equality is
/// structural equality of the normal form.
template <class C>
class DiffOp {
public:
  using Coeff = Polynomial<C>;
  using Terms = std::map<MultiIndex, Coeff>;

  DiffOp() : n_vars_(0) {}
  explicit DiffOp(int n_vars) : n_vars_(n_vars) {}

  static DiffOp identity(int n_vars) {
    return multiplication(Coeff::constant(n_vars, C(1)));
  }
  /// Multiplication operator by a polynomial.
  static DiffOp multiplication(const Coeff& p) {
    DiffOp op(p.n_vars());
    op.add_term(MultiIndex(p.n_vars(), 0), p);
    return op;
  }
  /// d/dx_i.
  static DiffOp partial(int n_vars, int i) {
    DiffOp op(n_vars);
    MultiIndex a(n_vars, 0);
    a.at(i) = 1;
    op.add_term(a, Coeff::constant(n_vars, C(1)));
    return op;
  }

  int n_vars() const { return n_vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const MultiIndex& a, const Coeff& p) {
    if (p.is_zero()) return;
    auto it = terms_.find(a);
    if (it == terms_.end()) {
      terms_.emplace(a, p);
    } else {
      it->second += p;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend DiffOp operator+(const DiffOp& A, const DiffOp& B) {
    check(A, B);
    DiffOp r = A;
    for (const auto& [a, p] : B.terms_) r.add_term(a, p);
    return r;
  }
  friend DiffOp operator-(const DiffOp& A, const DiffOp& B) {
    check(A, B);
    DiffOp r = A;
    for (const auto& [a, p] : B.terms_) r.add_term(a, -p);
    return r;
  }
  DiffOp operator-() const {
    DiffOp r(n_vars_);
    for (const auto& [a, p] : terms_) r.terms_.emplace(a, -p);
    return r;
  }
  friend DiffOp operator*(const C& s, const DiffOp& A) {
    DiffOp r(A.n_vars_);
    for (const auto& [a, p] : A.terms_) r.add_term(a, s * p);
    return r;
  }
  friend bool operator==(const DiffOp& A, const DiffOp& B) {
    return A.n_vars_ == B.n_vars_ && A.terms_ == B.terms_;
  }

  /// Exact action on a polynomial.
  Coeff apply(const Coeff& f) const {
    if (f.n_vars() != n_vars_) throw std::invalid_argument("DiffOp::apply: variable-count mismatch");
    Coeff r(n_vars_);
    for (const auto& [a, p] : terms_) {
      Coeff g = f;
      for (int i = 0; i < n_vars_; ++i)
        for (int j = 0; j < a[i]; ++j) g = g.derivative(i);
      r += p * g;
    }
    return r;
  }

  std::string str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [a, p] : terms_) {
      if (!first) out += " + ";
      first = false;
      out += "(" + p.str(names) + ")";
      for (int i = 0; i < n_vars_; ++i) {
        if (a[i] == 0) continue;
        out += "*d" + names[size_t(i)];
        if (a[i] > 1) out += "^" + std::to_string(int(a[i]));
      }
    }
    return out;
  }

private:
  int n_vars_;
  Terms terms_;

  static void check(const DiffOp& A, const DiffOp& B) {
    if (A.n_vars_ != B.n_vars_) throw std::invalid_argument("DiffOp: variable-count mismatch");
  }
};

/// Normal form of A o B via the Leibniz rule: d^a o p = sum over subsets of a
/// of binom(a,g) (d^{a-g} p) d^g.
template <class C>
DiffOp<C> compose(const DiffOp<C>& A, const DiffOp<C>& B) {
  if (A.n_vars() != B.n_vars()) throw std::invalid_argument("compose: variable-count mismatch");
  const int n = A.n_vars();
  DiffOp<C> r(n);
  for (const auto& [a, p] : A.terms()) {
    for (const auto& [b, q] : B.terms()) {
      // enumerate g <= a componentwise
      MultiIndex g(n, 0);
      while (true) {
        // binom(a, g) and derivative d^{a-g} q
        C binom = C(1);
        Polynomial<C> dq = q;
        for (int i = 0; i < n; ++i) {
          int ai = a[i], gi = g[i];
          // C(a_i, g_i)
          std::int64_t bc = 1;
          for (int j = 0; j < gi; ++j) bc = bc * (ai - j) / (j + 1);
          binom = binom * C(bc);
          for (int j = 0; j < ai - gi; ++j) dq = dq.derivative(i);
        }
        if (!dq.is_zero()) {
          MultiIndex tot(n);
          for (int i = 0; i < n; ++i) tot[i] = std::uint8_t(g[i] + b[i]);
          r.add_term(tot, binom * (p * dq));
        }
        // next g
        int i = 0;
        while (i < n) {
          if (g[i] < a[i]) {
            ++g[i];
            break;
          }
          g[i] = 0;
          ++i;
        }
        if (i == n) break;
      }
    }
  }
  return r;
}

template <class C>
DiffOp<C> commutator(const DiffOp<C>& A, const DiffOp<C>& B) {
  return compose(A, B) - compose(B, A);
}

using DiffOpQ = DiffOp<Rational>;

}  // namespace nilcalc
