#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "qpkit/common.hpp"

namespace qpkit {

using Int = mpz_class;
using Rat = mpq_class;

// gmpxx lacks long long constructors; go through long (64-bit on this ABI).
inline Int make_int(long long v) { return Int(static_cast<long>(v)); }

inline Rat make_rat(long long num, long long den = 1) {
  const Int n = make_int(num);
  const Int d = make_int(den);
  Rat r(n, d);
  r.canonicalize();
  return r;
}

// Parses "p/q", "p", or a finite decimal like "-0.5" (converted exactly).
inline Rat parse_rat(const std::string& s) {
  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos || s.find('.', dot + 1) != std::string::npos)
      throw std::invalid_argument("not a rational: '" + s + "'");
    const std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t fraction_len = s.size() - dot - 1;
    Rat r = parse_rat(digits.empty() || digits == "-" || digits == "+" ? "0" : digits);
    Int den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, fraction_len);
    r /= Rat(den);
    return r;
  }
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("not a rational: '" + s + "'");
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline bool is_square_free(long m) {
  if (m < 1) return false;
  for (long p = 2; p * p <= m; ++p)
    if (m % (p * p) == 0) return false;
  return true;
}

// An exact element a + b*sqrt(m) of Q(sqrt(m)), with a, b arbitrary-precision
// rationals. Pure rationals carry m == 0 (no radical); values with b != 0
// require a square-free m >= 2. Two radicals never mix: combining values with
// different nonzero m throws. Immutable in spirit; all operations return new
// values, so instances are safe to share across threads.
class FieldScalar {
 public:
  FieldScalar() : a_(0), b_(0), m_(0) {}
  FieldScalar(long long v) : a_(make_rat(v)), b_(0), m_(0) {}  // NOLINT: implicit from integers
  FieldScalar(Rat a) : a_(std::move(a)), b_(0), m_(0) {}       // NOLINT
  FieldScalar(Rat a, Rat b, long m) : a_(std::move(a)), b_(std::move(b)), m_(m) {
    normalize();
  }

  static FieldScalar sqrt_of(long m) { return FieldScalar(Rat(0), Rat(1), m); }

  const Rat& rational_part() const { return a_; }
  const Rat& radical_part() const { return b_; }
  long radicand() const { return m_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_integer() const { return b_ == 0 && a_.get_den() == 1; }

  FieldScalar conjugate() const { return FieldScalar(a_, -b_, m_); }

  friend FieldScalar operator+(const FieldScalar& x, const FieldScalar& y) {
    const long m = unify(x, y);
    return FieldScalar(x.a_ + y.a_, x.b_ + y.b_, m);
  }
  friend FieldScalar operator-(const FieldScalar& x, const FieldScalar& y) {
    const long m = unify(x, y);
    return FieldScalar(x.a_ - y.a_, x.b_ - y.b_, m);
  }
  friend FieldScalar operator-(const FieldScalar& x) {
    return FieldScalar(-x.a_, -x.b_, x.m_);
  }
  friend FieldScalar operator*(const FieldScalar& x, const FieldScalar& y) {
    const long m = unify(x, y);
    // (a1 + b1 s)(a2 + b2 s) = a1 a2 + b1 b2 m + (a1 b2 + a2 b1) s
    return FieldScalar(x.a_ * y.a_ + x.b_ * y.b_ * m, x.a_ * y.b_ + y.a_ * x.b_, m);
  }
  FieldScalar inverse() const {
    if (is_zero()) throw std::domain_error("FieldScalar: inversion of zero");
    // (a + b s)^-1 = (a - b s) / (a^2 - b^2 m)
    const Rat norm = a_ * a_ - b_ * b_ * static_cast<long>(m_);
    return FieldScalar(a_ / norm, -b_ / norm, m_);
  }
  friend FieldScalar operator/(const FieldScalar& x, const FieldScalar& y) {
    return x * y.inverse();
  }
  FieldScalar& operator+=(const FieldScalar& y) { return *this = *this + y; }
  FieldScalar& operator-=(const FieldScalar& y) { return *this = *this - y; }
  FieldScalar& operator*=(const FieldScalar& y) { return *this = *this * y; }

  // Exact: sqrt(m) is irrational, so a1 + b1 sqrt(m) = a2 + b2 sqrt(m) iff
  // the components match.
  friend bool operator==(const FieldScalar& x, const FieldScalar& y) {
    if (x.b_ == 0 && y.b_ == 0) return x.a_ == y.a_;
    return x.m_ == y.m_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const FieldScalar& x, const FieldScalar& y) { return !(x == y); }

  // Exact sign of a + b*sqrt(m).
  int sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 against b^2 m; the larger magnitude wins.
    const int cmp = cmp_rat(a_ * a_, b_ * b_ * static_cast<long>(m_));
    return cmp == 0 ? 0 : (cmp > 0 ? sa : sb);
  }
  friend bool operator<(const FieldScalar& x, const FieldScalar& y) {
    return (x - y).sign() < 0;
  }
  friend bool operator<=(const FieldScalar& x, const FieldScalar& y) {
    return (x - y).sign() <= 0;
  }
  friend bool operator>(const FieldScalar& x, const FieldScalar& y) { return y < x; }
  friend bool operator>=(const FieldScalar& x, const FieldScalar& y) { return y <= x; }

  FieldScalar abs() const { return sign() < 0 ? -*this : *this; }

  // Largest integer <= value, computed exactly.
  Int floor() const {
    if (b_ == 0) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), a_.get_num().get_mpz_t(), a_.get_den().get_mpz_t());
      return q;
    }
    Int c(std::floor(to_double()));
    while (*this < FieldScalar(Rat(c))) c -= 1;
    while (*this >= FieldScalar(Rat(c + 1))) c += 1;
    return c;
  }
  Int ceil() const { return -((-*this).floor()); }

  // Fractional part in [0, 1), exact.
  FieldScalar mod1() const { return *this - FieldScalar(Rat(floor())); }

  // Rounds a + b*sqrt(m) to double through a fixed-point computation carrying
  // `precision` significant bits plus guard bits; the result satisfies
  // |to_float(x) - x| <= 2^(1-precision) * (1 + |x|).
  double to_float(unsigned precision = 53) const {
    if (precision > 53) precision = 53;
    if (b_ == 0 && a_ == 0) return 0.0;
    // Guard bits absorb the isqrt truncation and any cancellation a ~ -b*sqrt(m).
    long cancel_guard = 0;
    if (b_ != 0) {
      const long bbits = static_cast<long>(mpz_sizeinbase(b_.get_num().get_mpz_t(), 2)) -
                         static_cast<long>(mpz_sizeinbase(b_.get_den().get_mpz_t(), 2));
      cancel_guard = std::max(0L, bbits + 4);
    }
    const unsigned long g = precision + 32 + static_cast<unsigned long>(cancel_guard);
    Int fixed;  // ~ value * 2^g
    {
      Int num = a_.get_num();
      mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), g);
      Int qa;
      mpz_fdiv_q(qa.get_mpz_t(), num.get_mpz_t(), a_.get_den().get_mpz_t());
      fixed = qa;
    }
    if (b_ != 0) {
      Int ms(m_);
      mpz_mul_2exp(ms.get_mpz_t(), ms.get_mpz_t(), 2 * g);
      Int s;  // floor(sqrt(m) * 2^g)
      mpz_sqrt(s.get_mpz_t(), ms.get_mpz_t());
      Int num = b_.get_num() * s;
      Int qb;
      mpz_fdiv_q(qb.get_mpz_t(), num.get_mpz_t(), b_.get_den().get_mpz_t());
      fixed += qb;
    }
    // Round to nearest at 53 bits; mpz_get_d alone truncates toward zero.
    const int sign_x = sgn_int(fixed);
    if (sign_x < 0) fixed = -fixed;
    const long bits = static_cast<long>(mpz_sizeinbase(fixed.get_mpz_t(), 2));
    long shift = bits - 53;
    if (shift > 0) {
      Int half(1);
      mpz_mul_2exp(half.get_mpz_t(), half.get_mpz_t(), shift - 1);
      fixed += half;
      mpz_fdiv_q_2exp(fixed.get_mpz_t(), fixed.get_mpz_t(), shift);
    } else {
      shift = 0;
    }
    return sign_x * std::ldexp(fixed.get_d(), static_cast<int>(shift - static_cast<long>(g)));
  }

  double to_double() const { return to_float(53); }

  std::string to_string() const {
    if (b_ == 0) return rat_to_string(a_);
    return rat_to_string(a_) + (sgn(b_) < 0 ? " - " : " + ") +
           rat_to_string(qpkit::Rat(::abs(b_))) + "*sqrt(" + std::to_string(m_) + ")";
  }

 private:
  static int sgn(const Rat& r) { return mpq_sgn(r.get_mpq_t()); }
  static int sgn_int(const Int& z) { return mpz_sgn(z.get_mpz_t()); }
  static int cmp_rat(const Rat& x, const Rat& y) { return mpq_cmp(x.get_mpq_t(), y.get_mpq_t()); }

  void normalize() {
    if (b_ == 0) {
      m_ = 0;
      return;
    }
    if (m_ < 2 || !is_square_free(m_))
      throw std::invalid_argument("FieldScalar: radicand must be square-free and >= 2, got " +
                                  std::to_string(m_));
  }

  // Mixed radicals are rejected; a pure rational adopts the other operand's field.
  static long unify(const FieldScalar& x, const FieldScalar& y) {
    if (x.m_ == 0) return y.m_;
    if (y.m_ == 0 || x.m_ == y.m_) return x.m_;
    throw std::invalid_argument("FieldScalar: mixing sqrt(" + std::to_string(x.m_) +
                                ") with sqrt(" + std::to_string(y.m_) + ")");
  }

  Rat a_, b_;
  long m_;
};

inline FieldScalar golden_ratio() { return FieldScalar(make_rat(1, 2), make_rat(1, 2), 5); }
inline FieldScalar golden_ratio_conjugate() { return golden_ratio().conjugate(); }

}  // namespace qpkit
