#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace nilcalc {

/// Exact rational over int64 with gcd normalization. The group laws, vector
/// fields and phase polynomials only ever produce small denominators (2, 3, 6
/// and products of the parameter denominators), so int64 is ample; overflow
/// aborts rather than silently wrapping.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                    checked_mul(a.den_, b.den_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(checked_sub(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                    checked_mul(a.den_, b.den_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational(checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_));
  }
  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
  }

  bool is_zero() const { return num_ == 0; }
  double to_double() const { return double(num_) / double(den_); }

  /// Exact rational from a decimal double (e.g. 0.7 passed as 7/10 via
  /// from_decimal(7,10)); plain doubles are never converted implicitly.
  static Rational from_decimal(std::int64_t mantissa, std::int64_t scale) {
    return Rational(mantissa, scale);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    os << r.num_;
    if (r.den_ != 1) os << "/" << r.den_;
    return os;
  }

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;

  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rational overflow (mul)");
    return r;
  }
  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Rational overflow (add)");
    return r;
  }
  static std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("Rational overflow (sub)");
    return r;
  }

  void normalize() {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
    if (num_ == 0) den_ = 1;
  }
};

/// First-order dual number a + b*eps over an exact scalar: carries a value and
/// its derivative with respect to one chosen parameter through rational
/// expressions (including divisions), so parameter derivatives of phase
/// polynomials come out exact.
template <class S>
struct Dual {
  S val{};
  S der{};

  Dual() = default;
  Dual(S v) : val(v), der(S(0)) {}
  Dual(S v, S d) : val(v), der(d) {}

  static Dual variable(S v) { return Dual(v, S(1)); }

  friend Dual operator+(const Dual& a, const Dual& b) { return {a.val + b.val, a.der + b.der}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.val - b.val, a.der - b.der}; }
  friend Dual operator*(const Dual& a, const Dual& b) {
    return {a.val * b.val, a.der * b.val + a.val * b.der};
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    S v = a.val / b.val;
    return {v, (a.der - v * b.der) / b.val};
  }
  Dual operator-() const { return {-val, -der}; }
  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }

  friend bool operator==(const Dual& a, const Dual& b) { return a.val == b.val && a.der == b.der; }
  friend bool operator!=(const Dual& a, const Dual& b) { return !(a == b); }
  bool is_zero() const { return val == S(0) && der == S(0); }
};

using DualRational = Dual<Rational>;

}  // namespace nilcalc
