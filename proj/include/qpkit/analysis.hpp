#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qpkit/qp.hpp"

namespace qpkit {

enum class Direction { LE, GE };

// One Hausdorff-Young comparison: lhs is the coefficient side
// (sum |f_hat|^q')^(1/q'), rhs the Besicovitch norm ||f||_q. For q <= 2 the
// theorem asserts lhs <= rhs, for q >= 2 the reverse.
struct HYReport {
  double q = 0.0;
  double q_conjugate = 0.0;  // infinity when q == 1
  double lhs = 0.0;
  double rhs = 0.0;
  Direction direction = Direction::LE;
  bool holds = false;
  double slack = 0.0;  // signed margin in the asserted direction
};

// l^{q'} norm of the coefficients; q' = infinity means the maximum modulus.
inline double coefficient_lq_norm(const CoeffMap& terms, double q_prime) {
  if (std::isinf(q_prime)) {
    double mx = 0.0;
    for (const auto& [k, c] : terms) mx = std::max(mx, std::abs(c));
    return mx;
  }
  KahanSum s;
  for (const auto& [k, c] : terms) s.add(std::pow(std::abs(c), q_prime));
  return std::pow(s.value(), 1.0 / q_prime);
}

inline HYReport hausdorff_young_check(const TrigPolynomial& f, double q, int grid = 0,
                                      double quadrature_tol = 1e-8) {
  if (!(q >= 1.0) || std::isinf(q))
    throw std::invalid_argument("hausdorff_young_check: need 1 <= q < infinity");
  HYReport rep;
  rep.q = q;
  rep.q_conjugate = q == 1.0 ? std::numeric_limits<double>::infinity() : q / (q - 1.0);
  rep.lhs = coefficient_lq_norm(f.terms, rep.q_conjugate);
  rep.rhs = besicovitch_norm(f, q, grid);
  rep.direction = q <= 2.0 ? Direction::LE : Direction::GE;
  rep.slack = rep.direction == Direction::LE ? rep.rhs - rep.lhs : rep.lhs - rep.rhs;
  rep.holds = rep.slack >= -quadrature_tol;
  return rep;
}

struct DecayViolation {
  KVec k;
  double freq_abs = 0.0;
  double coeff_abs = 0.0;
  double bound = 0.0;
};

struct DecayReport {
  bool holds = true;
  std::vector<DecayViolation> violations;
};

// Checks the Holder-modulus decay conclusion |f_hat(beta)| <= (C/2)|beta|^-eta
// at every stored nonzero frequency. A violation disproves the modulus
// hypothesis omega_1(f, delta) <= C delta^eta for this (C, eta).
inline DecayReport holder_decay_bound(const TrigPolynomial& f, double eta, double C) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("holder_decay_bound: need 0 < eta <= 1");
  if (!(C > 0.0)) throw std::invalid_argument("holder_decay_bound: need C > 0");
  DecayReport rep;
  for (const auto& [k, c] : f.terms) {
    const FieldScalar norm_sq = f.P.frequency_norm_sq(k);
    if (norm_sq.is_zero()) continue;  // the estimate says nothing at beta = 0
    const double beta = std::sqrt(norm_sq.to_double());
    const double bound = 0.5 * C * std::pow(beta, -eta);
    if (std::abs(c) > bound)
      rep.violations.push_back(DecayViolation{k, beta, std::abs(c), bound});
  }
  rep.holds = rep.violations.empty();
  return rep;
}

struct Omega1Estimate {
  double lower = 0.0;  // certified lower bound for omega_1(f, delta)
  double upper = 0.0;  // lower + quadrature and net slack
};

// Bohr L^1 modulus of continuity omega_1(f, delta) = sup_{|t|<=delta}
// M(|f(.+t) - f|), computed through the parent identity
// M(|f(.+t)-f|) = Int |F(y + P^T t) - F(y)| dy and maximized over a
// one-dimensional net of shifts per coordinate axis (evenness in t covers the
// negative side). For d > 1 this restricts the sup to axis directions, so
// `upper` bounds the axis-restricted modulus; `lower` is always a certified
// lower bound for the full omega_1.
inline Omega1Estimate omega1_estimate(const TrigPolynomial& f, double delta, int grid = 0,
                                      int net = 16) {
  if (!(delta > 0.0)) throw std::invalid_argument("omega1_estimate: delta must be positive");
  if (net < 1) throw std::invalid_argument("omega1_estimate: net must be >= 1");
  if (!f.p_independent)
    throw precondition_error("omega1_estimate: frequency matrix is rationally dependent",
                             q_independent(f.P).witness.value_or(std::vector<long long>{}));
  const int d = f.dim();
  const int n = f.P.cols();
  const int N = grid > 0 ? grid : default_grid(f.max_abs_index());

  // Lipschitz data: |d/dt| <= 2 pi sum |c| |lambda|, |grad_y| <= 2 pi sum |c| |k|_1.
  double lip_t = 0.0, lip_y = 0.0;
  for (const auto& [k, c] : f.terms) {
    lip_t += kTwoPi * std::abs(c) * std::sqrt(f.P.frequency_norm_sq(k).to_double());
    long long l1 = 0;
    for (long long kj : k) l1 += std::llabs(kj);
    lip_y += kTwoPi * std::abs(c) * static_cast<double>(l1);
  }
  const double cell_err = lip_y * n / (2.0 * N);  // rectangle rule on a Lipschitz integrand

  double best = 0.0;
  for (int axis = 0; axis < d; ++axis) {
    for (int step = 1; step <= net; ++step) {
      std::vector<double> t(d, 0.0);
      t[axis] = delta * step / net;
      const std::vector<double> w = f.P.transpose_times(t);
      // Spectrum of F(. + w) - F: coefficients c (e^{2 pi i k.w} - 1).
      CoeffMap diff;
      for (const auto& [k, c] : f.terms) {
        KahanSum phase;
        for (int j = 0; j < n; ++j) phase.add(static_cast<double>(k[j]) * w[j]);
        diff[k] = c * (unit_phase(phase.value()) - 1.0);
      }
      const GridFunction gf = eval_on_grid(diff, n, N);
      KahanSum mean;
      for (const auto& v : gf.values) mean.add(std::abs(v));
      best = std::max(best, mean.value() / static_cast<double>(gf.size()));
    }
  }
  Omega1Estimate est;
  est.lower = std::max(0.0, best - cell_err);
  est.upper = best + cell_err + lip_t * (delta / net);
  return est;
}

// D' = min over stored k != 0 of |P k| / |k|_2 (d = 1). The minimizer is
// selected by exact comparison of squared ratios; only the final value is
// rounded. Zero signals a failing discreteness condition on this truncation.
inline double discreteness_constant(const TrigPolynomial& f) {
  if (f.dim() != 1) throw std::invalid_argument("discreteness_constant: requires d = 1");
  KVec zero(f.P.cols(), 0);
  bool seen = false;
  FieldScalar best_num(0);  // (P k)^2 of the current minimizer
  Int best_den = 1;         // |k|^2
  KVec best_k;
  for (const auto& [k, c] : f.terms) {
    if (k == zero) continue;
    FieldScalar num = f.P.frequency(k)[0];
    num = num * num;
    Int den = 0;
    for (long long kj : k) den += make_int(kj) * make_int(kj);
    // num / den < best_num / best_den  <=>  num * best_den < best_num * den
    if (!seen || num * FieldScalar(Rat(best_den)) < best_num * FieldScalar(Rat(den))) {
      best_num = num;
      best_den = den;
      best_k = k;
      seen = true;
    }
  }
  if (!seen)
    throw std::invalid_argument("discreteness_constant: no nonzero frequency in the spectrum");
  if (best_num.is_zero()) return 0.0;
  return std::sqrt(best_num.to_double()) / std::sqrt(best_den.get_d());
}

// Sobolev-Besicovitch norm (sum (1+|lambda|^2)^(s q'/2) |f_hat|^{q'})^{1/q'}.
inline double sobolev_besicovitch_norm(const TrigPolynomial& f, double s, double q) {
  if (!(q > 1.0)) throw std::invalid_argument("sobolev_besicovitch_norm: need q > 1");
  const double qp = q / (q - 1.0);
  KahanSum sum;
  for (const auto& [k, c] : f.terms) {
    const double lambda_sq = f.P.frequency_norm_sq(k).to_double();
    sum.add(std::pow(1.0 + lambda_sq, s * qp / 2.0) * std::pow(std::abs(c), qp));
  }
  return std::pow(sum.value(), 1.0 / qp);
}

struct SeriesRow {
  double radius = 0.0;
  double partial_sum = 0.0;
  bool convergent = true;  // advisory ratio-of-increments flag
};

// Partial sums of sum_{0<|k|<=R} |k|^m |F_hat(k)| per truncation radius.
// The convergence flag compares consecutive rows: an increment below
// `threshold` (relative) looks Cauchy, anything more looks divergent. It is
// truncation evidence, never a proof.
inline std::vector<SeriesRow> derivative_series_probe(const ParentSpectrum& F, int m,
                                                      std::vector<double> radii,
                                                      double threshold = 0.05) {
  if (m < 0) throw std::invalid_argument("derivative_series_probe: m must be >= 0");
  std::sort(radii.begin(), radii.end());
  struct Item {
    double norm_sq;
    double value;
  };
  std::vector<Item> items;
  items.reserve(F.coeffs.size());
  const KVec zero(F.n, 0);
  for (const auto& [k, c] : F.coeffs) {
    if (k == zero) continue;
    double ns = 0.0;
    for (long long kj : k) ns += static_cast<double>(kj) * static_cast<double>(kj);
    items.push_back(Item{ns, std::pow(ns, m / 2.0) * std::abs(c)});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.norm_sq < b.norm_sq; });

  std::vector<SeriesRow> rows;
  KahanSum sum;
  std::size_t pos = 0;
  double prev = 0.0;
  for (double r : radii) {
    const double r2 = r * r;
    while (pos < items.size() && items[pos].norm_sq <= r2) sum.add(items[pos++].value);
    SeriesRow row;
    row.radius = r;
    row.partial_sum = sum.value();
    row.convergent = rows.empty()
                         ? true
                         : (row.partial_sum - prev) <= threshold * std::max(prev, 1e-300);
    prev = row.partial_sum;
    rows.push_back(row);
  }
  return rows;
}

enum class RegularityMode { Holder, Sobolev };

struct RegularityVerdict {
  RegularityMode mode = RegularityMode::Holder;
  int hypothesis_r = 0;       // Holder mode
  double hypothesis_eta = 0;  // Holder mode
  double s = 0.0;             // Sobolev mode
  double q = 0.0;             // Sobolev mode
  double D_prime = 0.0;
  std::optional<int> guaranteed_class;
  std::vector<SeriesRow> checked_series;  // per order m: partial-sum evidence
  std::vector<int> series_orders;
  std::vector<std::string> failures;  // hypothesis violations, structured not thrown
  std::optional<KVec> offending_k;    // index with P k = 0 when D' = 0
};

namespace detail {

inline std::optional<KVec> find_null_frequency(const TrigPolynomial& f) {
  const KVec zero(f.P.cols(), 0);
  for (const auto& [k, c] : f.terms) {
    if (k == zero) continue;
    if (f.P.frequency_norm_sq(k).is_zero()) return k;
  }
  return std::nullopt;
}

inline void attach_series(RegularityVerdict& v, const ParentSpectrum& F, int order_max) {
  const double R = std::max(1, F.max_abs_index());
  std::vector<double> radii{std::max(1.0, R / 100.0), std::max(1.0, R / 10.0), R};
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  for (int m = 0; m <= order_max; ++m) {
    const auto rows = derivative_series_probe(F, m, radii);
    v.series_orders.insert(v.series_orders.end(), rows.size(), m);
    v.checked_series.insert(v.checked_series.end(), rows.begin(), rows.end());
  }
}

}  // namespace detail

// Hypothesis checker for the parent-regularity theorems. The caller asserts
// the regularity data of f (Holder class (r, eta), or membership in the
// Sobolev-Besicovitch space with parameters (s, q)); the verdict verifies the
// decidable hypotheses (dimension, exponent ranges, discreteness D' > 0),
// reports the guaranteed differentiability class of the parent, and attaches
// the certifying partial sums sum |k|^m |F_hat(k)| as truncation evidence.
inline RegularityVerdict parent_regularity_verdict_holder(const TrigPolynomial& f, int r,
                                                          double eta) {
  RegularityVerdict v;
  v.mode = RegularityMode::Holder;
  v.hypothesis_r = r;
  v.hypothesis_eta = eta;
  const int n = f.P.cols();
  if (f.dim() != 1) v.failures.push_back("requires d = 1");
  if (!(r > n)) v.failures.push_back("requires r > n (got r = " + std::to_string(r) +
                                     ", n = " + std::to_string(n) + ")");
  if (!(eta > 0.0 && eta < 1.0)) v.failures.push_back("requires 0 < eta < 1");
  if (f.terms.empty()) v.failures.push_back("empty spectrum");
  if (!v.failures.empty()) return v;

  v.D_prime = discreteness_constant(f);
  if (v.D_prime <= 0.0) {
    v.failures.push_back("discreteness condition fails: D' = 0 on the stored spectrum");
    v.offending_k = detail::find_null_frequency(f);
    return v;
  }
  v.guaranteed_class = r - n;
  detail::attach_series(v, lift(f), r - n);
  return v;
}

inline RegularityVerdict parent_regularity_verdict_sobolev(const TrigPolynomial& f, double s,
                                                           double q) {
  RegularityVerdict v;
  v.mode = RegularityMode::Sobolev;
  v.s = s;
  v.q = q;
  const int n = f.P.cols();
  if (!(q > 1.0)) v.failures.push_back("requires q > 1");
  if (f.terms.empty()) v.failures.push_back("empty spectrum");
  if (!v.failures.empty()) return v;
  const double gap = s - static_cast<double>(n) / q;
  if (!(gap > 1.0))
    v.failures.push_back("requires s - n/q > 1 (got " + std::to_string(gap) + ")");
  if (f.dim() != 1)
    v.failures.push_back("discreteness check implemented for d = 1 spectra only");
  if (!v.failures.empty()) return v;

  v.D_prime = discreteness_constant(f);
  if (v.D_prime <= 0.0) {
    v.failures.push_back("norm comparability fails: D' = 0 on the stored spectrum");
    v.offending_k = detail::find_null_frequency(f);
    return v;
  }
  // Largest integer strictly below s - n/q.
  int m = static_cast<int>(std::ceil(gap)) - 1;
  if (static_cast<double>(m) >= gap) --m;
  v.guaranteed_class = m;
  detail::attach_series(v, lift(f), m);
  return v;
}

}  // namespace qpkit
