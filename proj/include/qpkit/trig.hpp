#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "qpkit/frequency_matrix.hpp"
#include "qpkit/independence.hpp"

namespace qpkit {

using CoeffMap = std::map<KVec, Complex>;  // lexicographic key order; deterministic iteration

// Fourier data of a periodic parent function F on T^n: finitely many nonzero
// coefficients F_hat(k), k in Z^n.
struct ParentSpectrum {
  int n = 0;
  CoeffMap coeffs;

  static ParentSpectrum make(int n, CoeffMap coeffs) {
    ParentSpectrum f;
    f.n = n;
    for (auto& [k, c] : coeffs) {
      if (static_cast<int>(k.size()) != n)
        throw dimension_mismatch("ParentSpectrum: index length != n");
      if (c != Complex(0.0, 0.0)) f.coeffs.emplace(k, c);
    }
    return f;
  }

  Complex at(const KVec& k) const {
    const auto it = coeffs.find(k);
    return it == coeffs.end() ? Complex(0.0, 0.0) : it->second;
  }

  Complex mean() const { return at(KVec(n, 0)); }

  int max_abs_index() const {  // max_j |k_j| over the support
    long long m = 0;
    for (const auto& [k, c] : coeffs)
      for (long long kj : k) m = std::max(m, std::llabs(kj));
    return static_cast<int>(m);
  }
};

// A finite Bohr-Fourier series f(x) = sum_k c_k exp(2*pi*i*(P k)^T x),
// stored by lattice index k (so the parent coefficient transport is the
// identity on the coefficient map). When P is rationally dependent distinct
// indices can share a frequency; construction merges them by exact frequency
// so the invariant "frequencies pairwise distinct" always holds.
struct TrigPolynomial {
  FrequencyMatrix P;
  CoeffMap terms;
  bool p_independent = false;

  static TrigPolynomial make(FrequencyMatrix p, CoeffMap terms) {
    TrigPolynomial f{std::move(p), {}, false};
    f.p_independent = q_independent(f.P).independent;
    for (auto& [k, c] : terms) {
      if (static_cast<int>(k.size()) != f.P.cols())
        throw dimension_mismatch("TrigPolynomial: index length != n");
      if (c == Complex(0.0, 0.0)) continue;
      f.terms.emplace(k, c);
    }
    if (!f.p_independent) f.merge_equal_frequencies();
    return f;
  }

  int dim() const { return P.rows(); }

  Complex at(const KVec& k) const {
    const auto it = terms.find(k);
    return it == terms.end() ? Complex(0.0, 0.0) : it->second;
  }

  int max_abs_index() const {
    long long m = 0;
    for (const auto& [k, c] : terms)
      for (long long kj : k) m = std::max(m, std::llabs(kj));
    return static_cast<int>(m);
  }

 private:
  void merge_equal_frequencies() {
    std::map<std::vector<FieldScalar>, std::pair<KVec, Complex>> groups;
    for (const auto& [k, c] : terms) {
      auto freq = P.frequency(k);
      auto it = groups.find(freq);
      if (it == groups.end())
        groups.emplace(std::move(freq), std::make_pair(k, c));
      else
        it->second.second += c;  // representative stays the lex-smallest k
    }
    terms.clear();
    for (auto& [freq, kc] : groups)
      if (kc.second != Complex(0.0, 0.0)) terms.emplace(kc.first, kc.second);
  }
};

inline Complex unit_phase(double turns) {  // exp(2*pi*i*turns)
  const double u = kTwoPi * turns;
  return {std::cos(u), std::sin(u)};
}

// Direct compensated summation of the series at x in R^d.
inline Complex evaluate(const TrigPolynomial& f, const std::vector<double>& x) {
  const std::vector<double> t = f.P.transpose_times(x);
  KahanComplex acc;
  for (const auto& [k, c] : f.terms) {
    KahanSum phase;
    for (std::size_t j = 0; j < t.size(); ++j) phase.add(static_cast<double>(k[j]) * t[j]);
    acc.add(c * unit_phase(phase.value()));
  }
  return acc.value();
}

inline Complex evaluate(const TrigPolynomial& f, double x) { return evaluate(f, std::vector<double>{x}); }

inline Complex evaluate_parent(const ParentSpectrum& F, const std::vector<double>& y) {
  if (static_cast<int>(y.size()) != F.n)
    throw dimension_mismatch("evaluate_parent: point dimension != n");
  KahanComplex acc;
  for (const auto& [k, c] : F.coeffs) {
    KahanSum phase;
    for (std::size_t j = 0; j < y.size(); ++j) phase.add(static_cast<double>(k[j]) * y[j]);
    acc.add(c * unit_phase(phase.value()));
  }
  return acc.value();
}

// l1 norm of the coefficients: the Wiener-algebra norm (equal for f and its
// parent; the Wiener-algebra isometry made concrete by shared storage).
inline double wiener_norm_of(const CoeffMap& m) {
  KahanSum s;
  for (const auto& [k, c] : m) s.add(std::abs(c));
  return s.value();
}
inline double wiener_norm(const TrigPolynomial& f) { return wiener_norm_of(f.terms); }
inline double wiener_norm(const ParentSpectrum& F) { return wiener_norm_of(F.coeffs); }

inline CoeffMap convolve(const CoeffMap& a, const CoeffMap& b) {
  CoeffMap out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      KVec k(ka.size());
      for (std::size_t j = 0; j < k.size(); ++j) k[j] = ka[j] + kb[j];
      out[k] += ca * cb;
    }
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == Complex(0.0, 0.0)) ? out.erase(it) : std::next(it);
  return out;
}

inline CoeffMap conjugate_spectrum(const CoeffMap& a) {
  CoeffMap out;
  for (const auto& [k, c] : a) {
    KVec nk(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) nk[j] = -k[j];
    out[nk] = std::conj(c);
  }
  return out;
}

// Pointwise product; frequency matrices must agree exactly.
inline TrigPolynomial multiply(const TrigPolynomial& f, const TrigPolynomial& g) {
  if (!(f.P == g.P))
    throw std::invalid_argument("multiply: operands live over different frequency matrices");
  return TrigPolynomial::make(f.P, convolve(f.terms, g.terms));
}

inline ParentSpectrum multiply(const ParentSpectrum& f, const ParentSpectrum& g) {
  if (f.n != g.n) throw dimension_mismatch("multiply: parent dimensions differ");
  return ParentSpectrum::make(f.n, convolve(f.coeffs, g.coeffs));
}

inline TrigPolynomial add_scaled(const TrigPolynomial& f, const TrigPolynomial& g, Complex scale) {
  if (!(f.P == g.P)) throw std::invalid_argument("add_scaled: frequency matrices differ");
  CoeffMap out = f.terms;
  for (const auto& [k, c] : g.terms) out[k] += scale * c;
  return TrigPolynomial::make(f.P, std::move(out));
}

}  // namespace qpkit
