#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "qpkit/frequency_matrix.hpp"
#include "qpkit/linalg.hpp"

namespace qpkit {

enum class VerdictKind { QRank, ZModZd, Density };

// Outcome of an exact independence test. When `independent` is false the
// witness is a nonzero integer vector realizing the violated relation:
//   QRank:   sum_j w_j p_j = 0
//   ZModZd:  sum_j w_j p_j in Z^d
//   Density: p_j = (p_1 / w_1) * w_j for all j (all ratios rational)
struct IndependenceVerdict {
  bool independent = false;
  std::optional<std::vector<long long>> witness;
  VerdictKind kind = VerdictKind::QRank;
};

namespace detail {

inline std::vector<long long> to_ll(const std::vector<Int>& v) {
  std::vector<long long> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.fits_slong_p()) throw std::overflow_error("witness does not fit in long long");
    out.push_back(x.get_si());
  }
  return out;
}

inline void normalize_sign(std::vector<Int>& v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    return;
  }
}

inline Int max_norm(const std::vector<Int>& v) {
  Int m = 0;
  for (const auto& x : v) m = std::max(m, Int(abs(x)));
  return m;
}

// Deterministic witness choice: smallest max-norm, ties broken
// lexicographically, after normalizing the leading sign to be positive.
inline std::vector<long long> pick_witness(std::vector<std::vector<Int>> candidates) {
  for (auto& c : candidates) normalize_sign(c);
  auto best = candidates.begin();
  for (auto it = std::next(candidates.begin()); it != candidates.end(); ++it) {
    const int c = cmp(max_norm(*it), max_norm(*best));
    if (c < 0 || (c == 0 && *it < *best)) best = it;
  }
  return to_ll(*best);
}

// Row-major rational parts (top) stacked over radical parts (bottom);
// Q-linear relations among columns of P are exactly the kernel of this.
inline RatMatrix stacked_components(const FrequencyMatrix& p) {
  const int d = p.rows(), n = p.cols();
  RatMatrix s(2 * d, std::vector<Rat>(n));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < n; ++j) {
      s[i][j] = p.at(i, j).rational_part();
      s[d + i][j] = p.at(i, j).radical_part();
    }
  return s;
}

}  // namespace detail

// Kronecker-Weyl criterion for the flow: the columns of P admit no
// nontrivial rational
// relation. Writing entries as a + b*sqrt(m), a rational relation must kill
// the a-parts and b-parts separately, so Q-independence is full column rank
// of the stacked 2d x n rational matrix.
inline IndependenceVerdict q_independent(const FrequencyMatrix& p) {
  IndependenceVerdict v;
  v.kind = VerdictKind::QRank;
  const auto kernel = rational_kernel(detail::stacked_components(p));
  if (kernel.empty()) {
    v.independent = true;
    return v;
  }
  std::vector<std::vector<Int>> candidates;
  for (const auto& kv : kernel) {
    Int den_lcm = 1;
    for (const auto& r : kv) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), r.get_den().get_mpz_t());
    std::vector<Int> w;
    w.reserve(kv.size());
    Int content = 0;
    for (const auto& r : kv) {
      Int x = r.get_num() * (den_lcm / r.get_den());
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
      w.push_back(std::move(x));
    }
    if (content > 1)
      for (auto& x : w) x /= content;
    candidates.push_back(std::move(w));
  }
  v.independent = false;
  v.witness = detail::pick_witness(std::move(candidates));
  return v;
}

// Kronecker-Weyl criterion for the lattice action: the only a in Z^n with
// sum_j a_j p_j in Z^d is 0.
// The radical parts force an integer kernel condition (B a = 0 over Z, found
// by diagonalizing B); within that kernel the rational parts pose a lattice
// membership problem mod the cleared denominator, solved through a second
// diagonalization.
inline IndependenceVerdict z_independent_mod_zd(const FrequencyMatrix& p) {
  IndependenceVerdict v;
  v.kind = VerdictKind::ZModZd;
  const int d = p.rows(), n = p.cols();

  // Integer kernel of the radical parts; each row scaled by its denominator lcm.
  IntMatrix b(d, std::vector<Int>(n));
  for (int i = 0; i < d; ++i) {
    Int l = 1;
    for (int j = 0; j < n; ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.at(i, j).radical_part().get_den().get_mpz_t());
    for (int j = 0; j < n; ++j) {
      const Rat& r = p.at(i, j).radical_part();
      b[i][j] = r.get_num() * (l / r.get_den());
    }
  }
  const auto kernel = integer_kernel(b);
  const int r = static_cast<int>(kernel.size());
  if (r == 0) {
    v.independent = true;
    return v;
  }

  // M = A * K (d x r rational); we need nonzero t with M t integral. Clearing
  // the common denominator D, that is M' t = 0 (mod D), solved by
  // diagonalizing M' and scaling each free direction to order.
  RatMatrix m(d, std::vector<Rat>(r, Rat(0)));
  Int den = 1;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < r; ++j) {
      for (int s = 0; s < n; ++s) m[i][j] += p.at(i, s).rational_part() * Rat(kernel[j][s]);
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m[i][j].get_den().get_mpz_t());
    }
  IntMatrix mi(d, std::vector<Int>(r));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < r; ++j) mi[i][j] = m[i][j].get_num() * (den / m[i][j].get_den());

  const Diagonalization dg = diagonalize_integer_matrix(mi);
  std::vector<std::vector<Int>> candidates;
  for (int j = 0; j < r; ++j) {
    Int scale = 1;
    if (j < static_cast<int>(dg.diag.size())) {
      Int g;
      mpz_gcd(g.get_mpz_t(), dg.diag[j].get_mpz_t(), den.get_mpz_t());
      scale = den / g;
    }
    // t = scale * (V e_j), mapped back through the kernel basis: a = K t.
    std::vector<Int> a(n, 0);
    for (int s = 0; s < r; ++s)
      for (int q = 0; q < n; ++q) a[q] += scale * dg.v[s][j] * kernel[s][q];
    candidates.push_back(std::move(a));
  }
  v.independent = false;
  v.witness = detail::pick_witness(std::move(candidates));
  return v;
}

// Lemma criterion for d = 1: the module p_1 Z + ... + p_n Z is dense in R
// iff some ratio p_i / p_j is irrational. When all ratios are rational the
// witness w has p_j = (p_1 / w_1) * w_j, exhibiting the discrete group.
inline IndependenceVerdict module_dense_in_R(const FrequencyMatrix& p) {
  if (p.rows() != 1) throw std::invalid_argument("module_dense_in_R: requires d = 1");
  const int n = p.cols();
  for (int j = 0; j < n; ++j)
    if (p.at(0, j).is_zero())
      throw std::invalid_argument("module_dense_in_R: all frequencies must be nonzero");

  IndependenceVerdict v;
  v.kind = VerdictKind::Density;
  std::vector<Rat> ratios(n);
  for (int j = 0; j < n; ++j) {
    const FieldScalar q = p.at(0, j) / p.at(0, 0);
    if (!q.is_rational()) {
      v.independent = true;  // dense
      return v;
    }
    ratios[j] = q.rational_part();
  }
  Int t = 1;
  for (const auto& r : ratios) mpz_lcm(t.get_mpz_t(), t.get_mpz_t(), r.get_den().get_mpz_t());
  std::vector<Int> w;
  w.reserve(n);
  for (const auto& r : ratios) w.push_back(r.get_num() * (t / r.get_den()));
  v.independent = false;
  v.witness = detail::to_ll(w);
  return v;
}

// Unique-ergodicity report for both actions generated by P. When the Z^d
// action fails, `invariant_character` is the exponent a* of the invariant
// character gamma(y) = exp(2*pi*i*(a*^T y)).
struct ErgodicityReport {
  IndependenceVerdict r_action;
  IndependenceVerdict z_action;
  std::optional<std::vector<long long>> invariant_character;
};

inline ErgodicityReport ergodicity_report(const FrequencyMatrix& p) {
  ErgodicityReport rep;
  rep.r_action = q_independent(p);
  rep.z_action = z_independent_mod_zd(p);
  if (!rep.z_action.independent) rep.invariant_character = rep.z_action.witness;
  return rep;
}

// ---------------------------------------------------------------------------
// Brute-force reference search. This is the testing oracle for the two exact
// verdicts above: it enumerates all integer vectors with |a_j| <= bound and
// checks the defining relation directly, through a code path that shares
// nothing with the normal-form implementations. Exponential in n; intended
// for small instances only.
// ---------------------------------------------------------------------------

namespace detail {

struct ScaledInts {
  bool ok = false;            // fits the fast int64 path
  long long den = 1;          // common denominator of all rational parts
  std::vector<long long> a;   // row-major, scaled by den
  std::vector<long long> bb;  // row-major radical parts, scaled by their own lcm per row
};

inline ScaledInts scale_for_search(const FrequencyMatrix& p, long long bound) {
  ScaledInts s;
  const int d = p.rows(), n = p.cols();
  Int den = 1;
  for (const auto& e : p.entries()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.rational_part().get_den().get_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.radical_part().get_den().get_mpz_t());
  }
  if (!den.fits_slong_p()) return s;
  s.den = den.get_si();
  s.a.resize(static_cast<std::size_t>(d) * n);
  s.bb.resize(static_cast<std::size_t>(d) * n);
  long long max_abs = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& e = p.at(i, j);
      Int sa = e.rational_part().get_num() * (den / e.rational_part().get_den());
      Int sb = e.radical_part().get_num() * (den / e.radical_part().get_den());
      if (!sa.fits_slong_p() || !sb.fits_slong_p()) return s;
      s.a[static_cast<std::size_t>(i) * n + j] = sa.get_si();
      s.bb[static_cast<std::size_t>(i) * n + j] = sb.get_si();
      max_abs = std::max({max_abs, std::llabs(sa.get_si()), std::llabs(sb.get_si())});
    }
  // Overflow headroom for n * bound * max_abs.
  if (max_abs > 0 && bound > (1LL << 61) / (max_abs * std::max(1, n))) return s;
  s.ok = true;
  return s;
}

template <typename Accept>
std::optional<std::vector<long long>> enumerate_relations(int n, long long bound, Accept accept) {
  std::vector<long long> a(n, -bound);
  for (;;) {
    bool nonzero = false, leading_positive = false;
    for (int j = 0; j < n; ++j) {
      if (a[j] != 0) {
        nonzero = true;
        leading_positive = a[j] > 0;
        break;
      }
    }
    if (nonzero && leading_positive && accept(a)) return a;
    int j = n - 1;
    while (j >= 0 && a[j] == bound) a[j--] = -bound;
    if (j < 0) return std::nullopt;
    ++a[j];
  }
}

}  // namespace detail

// Searches for a nonzero rational relation sum a_j p_j = 0 with integer
// coefficients |a_j| <= bound. Returns the first relation found.
inline std::optional<std::vector<long long>> brute_force_q_relation(const FrequencyMatrix& p,
                                                                    long long bound = 10) {
  const int d = p.rows(), n = p.cols();
  const auto s = detail::scale_for_search(p, bound);
  if (s.ok) {
    return detail::enumerate_relations(n, bound, [&](const std::vector<long long>& a) {
      for (int i = 0; i < d; ++i) {
        long long sa = 0, sb = 0;
        for (int j = 0; j < n; ++j) {
          sa += a[j] * s.a[static_cast<std::size_t>(i) * n + j];
          sb += a[j] * s.bb[static_cast<std::size_t>(i) * n + j];
        }
        if (sa != 0 || sb != 0) return false;
      }
      return true;
    });
  }
  return detail::enumerate_relations(n, bound, [&](const std::vector<long long>& a) {
    for (int i = 0; i < d; ++i) {
      FieldScalar sum(0);
      for (int j = 0; j < n; ++j) sum += p.at(i, j) * FieldScalar(a[j]);
      if (!sum.is_zero()) return false;
    }
    return true;
  });
}

// Searches for nonzero integer a with sum a_j p_j in Z^d, |a_j| <= bound.
inline std::optional<std::vector<long long>> brute_force_z_relation(const FrequencyMatrix& p,
                                                                    long long bound = 10) {
  const int d = p.rows(), n = p.cols();
  const auto s = detail::scale_for_search(p, bound);
  if (s.ok) {
    return detail::enumerate_relations(n, bound, [&](const std::vector<long long>& a) {
      for (int i = 0; i < d; ++i) {
        long long sa = 0, sb = 0;
        for (int j = 0; j < n; ++j) {
          sa += a[j] * s.a[static_cast<std::size_t>(i) * n + j];
          sb += a[j] * s.bb[static_cast<std::size_t>(i) * n + j];
        }
        if (sb != 0 || sa % s.den != 0) return false;
      }
      return true;
    });
  }
  return detail::enumerate_relations(n, bound, [&](const std::vector<long long>& a) {
    for (int i = 0; i < d; ++i) {
      FieldScalar sum(0);
      for (int j = 0; j < n; ++j) sum += p.at(i, j) * FieldScalar(a[j]);
      if (!sum.is_integer()) return false;
    }
    return true;
  });
}

// Substitutes a witness back into its defining relation, in exact arithmetic.
inline bool witness_satisfies(const FrequencyMatrix& p, const std::vector<long long>& w,
                              VerdictKind kind) {
  const int d = p.rows(), n = p.cols();
  if (static_cast<int>(w.size()) != n) return false;
  bool nonzero = false;
  for (long long x : w) nonzero |= (x != 0);
  if (!nonzero) return false;
  switch (kind) {
    case VerdictKind::QRank: {
      for (int i = 0; i < d; ++i) {
        FieldScalar sum(0);
        for (int j = 0; j < n; ++j) sum += p.at(i, j) * FieldScalar(w[j]);
        if (!sum.is_zero()) return false;
      }
      return true;
    }
    case VerdictKind::ZModZd: {
      for (int i = 0; i < d; ++i) {
        FieldScalar sum(0);
        for (int j = 0; j < n; ++j) sum += p.at(i, j) * FieldScalar(w[j]);
        if (!sum.is_integer()) return false;
      }
      return true;
    }
    case VerdictKind::Density: {
      if (d != 1 || w[0] == 0) return false;
      const FieldScalar unit = p.at(0, 0) / FieldScalar(w[0]);
      for (int j = 0; j < n; ++j)
        if (p.at(0, j) != unit * FieldScalar(w[j])) return false;
      return true;
    }
  }
  return false;
}

}  // namespace qpkit
