#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpkit {

using Complex = std::complex<double>;

// Lattice multi-index k in Z^n, ordered lexicographically by std::vector.
using KVec = std::vector<long long>;

// Thrown when an operation's mathematical precondition fails (e.g. lifting a
// polynomial whose frequency matrix is rationally dependent). Carries the
// integer witness of the violated condition when one exists.
class precondition_error : public std::domain_error {
 public:
  precondition_error(const std::string& what, std::vector<long long> witness = {})
      : std::domain_error(what), witness_(std::move(witness)) {}
  const std::vector<long long>& witness() const { return witness_; }

 private:
  std::vector<long long> witness_;
};

class dimension_mismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an iterative/grid computation cannot certify its result at the
// requested resolution (the message suggests the remedy).
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Closed interval [lo, hi] bracketing a real quantity.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Compensated (Kahan) accumulator; direct summation of trigonometric series
// is the accuracy bottleneck everywhere in this library.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

class KahanComplex {
 public:
  void add(Complex z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_, im_;
};

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace qpkit
