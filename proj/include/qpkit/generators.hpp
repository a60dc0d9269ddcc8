#pragma once

#include "qpkit/rng.hpp"
#include "qpkit/trig.hpp"

namespace qpkit {

// Random instance builders shared by the selftest command and the test
// suites. Heights are bounds on numerators and denominators.

inline Rat random_rational(Rng& rng, long long height) {
  return make_rat(rng.next_int(-height, height), rng.next_int(1, height));
}

inline FieldScalar random_field_scalar(Rng& rng, long long height, long m) {
  const Rat a = random_rational(rng, height);
  if (m == 0) return FieldScalar(a);
  return FieldScalar(a, random_rational(rng, height), m);
}

inline FrequencyMatrix random_matrix(Rng& rng, int d, int n, long long height, long m) {
  std::vector<FieldScalar> entries;
  entries.reserve(static_cast<std::size_t>(d) * n);
  for (int i = 0; i < d * n; ++i) entries.push_back(random_field_scalar(rng, height, m));
  return FrequencyMatrix(d, n, std::move(entries));
}

inline CoeffMap random_terms(Rng& rng, int n, int count, long long kmax) {
  CoeffMap terms;
  for (int t = 0; t < count; ++t) {
    KVec k(n);
    for (int j = 0; j < n; ++j) k[j] = rng.next_int(-kmax, kmax);
    terms[k] += Complex(rng.next_real(-2.0, 2.0), rng.next_real(-2.0, 2.0));
  }
  return terms;
}

inline TrigPolynomial random_polynomial(Rng& rng, const FrequencyMatrix& p, int count,
                                        long long kmax) {
  return TrigPolynomial::make(p, random_terms(rng, p.cols(), count, kmax));
}

// P = (1, sqrt(2)), the running example across the suites.
inline FrequencyMatrix matrix_one_sqrt2() {
  return FrequencyMatrix::row({FieldScalar(1), FieldScalar::sqrt_of(2)});
}

}  // namespace qpkit
