#pragma once

#include <vector>

#include "qpkit/field.hpp"

namespace qpkit {

// The d x n matrix P = (p_1 ... p_n) whose columns generate the frequency
// module P(Z^n). Entries are exact; every entry with a radical part must
// live in the same quadratic field.
class FrequencyMatrix {
 public:
  FrequencyMatrix(int d, int n, std::vector<FieldScalar> row_major)
      : d_(d), n_(n), entries_(std::move(row_major)) {
    if (d_ < 1 || n_ < 1) throw std::invalid_argument("FrequencyMatrix: d, n must be >= 1");
    if (entries_.size() != static_cast<std::size_t>(d_) * n_)
      throw dimension_mismatch("FrequencyMatrix: entry count != d*n");
    m_ = 0;
    for (const auto& e : entries_) {
      if (e.radicand() == 0) continue;
      if (m_ == 0)
        m_ = e.radicand();
      else if (m_ != e.radicand())
        throw std::invalid_argument("FrequencyMatrix: entries mix different radicals");
    }
    entries_dbl_.reserve(entries_.size());
    for (const auto& e : entries_) entries_dbl_.push_back(e.to_double());
  }

  // Convenience for the ubiquitous d = 1 case, e.g. P = (1, sqrt(2)).
  static FrequencyMatrix row(std::vector<FieldScalar> entries) {
    const int n = static_cast<int>(entries.size());
    return FrequencyMatrix(1, n, std::move(entries));
  }

  int rows() const { return d_; }
  int cols() const { return n_; }
  long radicand() const { return m_; }
  const FieldScalar& at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<FieldScalar>& entries() const { return entries_; }

  // lambda = P k, exact (length d).
  std::vector<FieldScalar> frequency(const KVec& k) const {
    if (k.size() != static_cast<std::size_t>(n_))
      throw dimension_mismatch("frequency: k has wrong length");
    std::vector<FieldScalar> out(d_, FieldScalar(0));
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < n_; ++j)
        if (k[j] != 0) out[i] += at(i, j) * FieldScalar(k[j]);
    return out;
  }

  // |P k|^2 as an exact field element (sum of squared coordinates).
  FieldScalar frequency_norm_sq(const KVec& k) const {
    FieldScalar s(0);
    for (const auto& c : frequency(k)) s += c * c;
    return s;
  }

  double at_double(int i, int j) const { return entries_dbl_[static_cast<std::size_t>(i) * n_ + j]; }

  // P^T x in double precision (length n); the torus side of the action.
  std::vector<double> transpose_times(const std::vector<double>& x) const {
    if (x.size() != static_cast<std::size_t>(d_))
      throw dimension_mismatch("transpose_times: x has wrong length");
    std::vector<double> out(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
      KahanSum s;
      for (int i = 0; i < d_; ++i) s.add(at_double(i, j) * x[i]);
      out[j] = s.value();
    }
    return out;
  }

  FrequencyMatrix scaled(const Rat& c) const {
    std::vector<FieldScalar> e;
    e.reserve(entries_.size());
    for (const auto& v : entries_) e.push_back(v * FieldScalar(c));
    return FrequencyMatrix(d_, n_, std::move(e));
  }

  friend bool operator==(const FrequencyMatrix& x, const FrequencyMatrix& y) {
    return x.d_ == y.d_ && x.n_ == y.n_ && x.entries_ == y.entries_;
  }

 private:
  int d_, n_;
  long m_;
  std::vector<FieldScalar> entries_;
  std::vector<double> entries_dbl_;
};

}  // namespace qpkit
