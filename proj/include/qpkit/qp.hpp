#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "qpkit/grid.hpp"
#include "qpkit/torus.hpp"
#include "qpkit/trig.hpp"

namespace qpkit {

// Coefficient transport f_hat(P k) -> F_hat(k). Because terms are stored by
// lattice index, the transport is literally the identity on the map; the
// rational independence of P is what makes the parent unique, so dependent
// matrices are refused with the witness of the rational relation.
inline ParentSpectrum lift(const TrigPolynomial& f) {
  if (!f.p_independent) {
    const auto verdict = q_independent(f.P);
    throw precondition_error("lift: frequency matrix is rationally dependent; parent not unique",
                             verdict.witness.value_or(std::vector<long long>{}));
  }
  return ParentSpectrum::make(f.P.cols(), f.terms);
}

inline TrigPolynomial project(const ParentSpectrum& F, const FrequencyMatrix& p) {
  if (F.n != p.cols()) throw dimension_mismatch("project: F.n != P.n");
  return TrigPolynomial::make(p, F.coeffs);
}

// f_hat(lambda) = M(f(x) e^{-2 pi i lambda^T x}). Exact: a stored term
// matching lambda = P k under exact field comparison, otherwise zero by
// orthogonality of distinct characters in the Bohr mean.
inline Complex bohr_coefficient(const TrigPolynomial& f, const std::vector<FieldScalar>& lambda) {
  if (static_cast<int>(lambda.size()) != f.dim())
    throw dimension_mismatch("bohr_coefficient: lambda dimension != d");
  for (const auto& [k, c] : f.terms)
    if (f.P.frequency(k) == lambda) return c;
  return Complex(0.0, 0.0);
}

inline Complex bohr_coefficient(const TrigPolynomial& f, const FieldScalar& lambda) {
  return bohr_coefficient(f, std::vector<FieldScalar>{lambda});
}

// M(f) = f_hat(0) = F_hat(0) = Int F; requires the parent correspondence.
inline Complex bohr_mean(const TrigPolynomial& f) {
  if (!f.p_independent)
    throw precondition_error("bohr_mean: frequency matrix is rationally dependent",
                             q_independent(f.P).witness.value_or(std::vector<long long>{}));
  return f.at(KVec(f.P.cols(), 0));
}

struct MeanIntegralReport {
  Complex bohr_mean;
  Complex parent_integral;
  bool equal = false;
};

inline MeanIntegralReport mean_matches_parent_integral(const TrigPolynomial& f) {
  MeanIntegralReport r;
  r.bohr_mean = bohr_mean(f);
  r.parent_integral = lift(f).mean();
  r.equal = r.bohr_mean == r.parent_integral;
  return r;
}

// Triangular Fejer weight (1 - |k_1|/N) ... (1 - |k_n|/N), zero outside
// max_j |k_j| < N.
inline double fejer_weight(const KVec& k, int N) {
  double w = 1.0;
  for (long long kj : k) {
    const long long a = std::llabs(kj);
    if (a >= N) return 0.0;
    w *= 1.0 - static_cast<double>(a) / N;
  }
  return w;
}

// N-th order Fejer sum of the parent at y.
inline Complex fejer_sum(const ParentSpectrum& F, int N, const std::vector<double>& y) {
  if (N < 1) throw std::invalid_argument("fejer_sum: order must be >= 1");
  if (static_cast<int>(y.size()) != F.n) throw dimension_mismatch("fejer_sum: y dimension != n");
  KahanComplex acc;
  for (const auto& [k, c] : F.coeffs) {
    const double w = fejer_weight(k, N);
    if (w == 0.0) continue;
    KahanSum phase;
    for (std::size_t j = 0; j < k.size(); ++j) phase.add(static_cast<double>(k[j]) * y[j]);
    acc.add(c * w * unit_phase(phase.value()));
  }
  return acc.value();
}

// Bochner-Fejer sum of f: the same weighted sum expressed in the frequencies
// P k, so it agrees with fejer_sum(lift(f), N, P^T x mod 1) pointwise.
inline Complex bochner_fejer_sum(const TrigPolynomial& f, int N, const std::vector<double>& x) {
  if (N < 1) throw std::invalid_argument("bochner_fejer_sum: order must be >= 1");
  const std::vector<double> t = f.P.transpose_times(x);
  KahanComplex acc;
  for (const auto& [k, c] : f.terms) {
    const double w = fejer_weight(k, N);
    if (w == 0.0) continue;
    KahanSum phase;
    for (std::size_t j = 0; j < t.size(); ++j) phase.add(static_cast<double>(k[j]) * t[j]);
    acc.add(c * w * unit_phase(phase.value()));
  }
  return acc.value();
}

inline Complex bochner_fejer_sum(const TrigPolynomial& f, int N, double x) {
  return bochner_fejer_sum(f, N, std::vector<double>{x});
}

// Certified bracket for ||F||_inf: grid maximum plus the mean-value slack.
inline Interval sup_norm(const ParentSpectrum& F, int grid = 0) {
  const int need = min_alias_free_grid(F.max_abs_index());
  const int N = grid > 0 ? grid : default_grid(F.max_abs_index());
  if (N < need)
    throw std::invalid_argument("sup_norm: grid too small, need N >= " + std::to_string(need));
  const GridFunction g = eval_on_grid(F, N);
  double mx = 0.0;
  for (const auto& v : g.values) mx = std::max(mx, std::abs(v));
  return Interval{mx, mx + grid_slack(F.coeffs, N)};
}

// One-sided estimate for ||f||_inf by sampling a window [0, T]^d. The sample
// maximum is a true lower bound; it converges to ||F||_inf as the window
// grows (minimality of the flow). The l1 coefficient norm closes the bracket
// from above.
inline Interval sup_norm_qp(const TrigPolynomial& f, int samples, double T_window) {
  if (samples < 2) throw std::invalid_argument("sup_norm_qp: need samples >= 2");
  const int d = f.dim();
  int per_axis = samples;
  if (d > 1) {
    per_axis = static_cast<int>(std::ceil(std::pow(static_cast<double>(samples), 1.0 / d)));
    per_axis = std::max(per_axis, 2);
  }
  std::vector<int> idx(d, 0);
  double lower = 0.0;
  for (;;) {
    std::vector<double> x(d);
    for (int i = 0; i < d; ++i) x[i] = T_window * idx[i] / (per_axis - 1);
    lower = std::max(lower, std::abs(evaluate(f, x)));
    int i = d - 1;
    while (i >= 0 && idx[i] == per_axis - 1) idx[i--] = 0;
    if (i < 0) break;
    ++idx[i];
  }
  return Interval{lower, wiener_norm(f)};
}

namespace detail {

// M(|f|^q) for even integer q, by exact coefficient convolution: the mean of
// (F conj(F))^(q/2) is its constant coefficient.
inline double even_power_mean(const CoeffMap& terms, int q) {
  const CoeffMap sq = convolve(terms, conjugate_spectrum(terms));
  CoeffMap pw = sq;
  for (int i = 1; i < q / 2; ++i) pw = convolve(pw, sq);
  if (pw.empty()) return 0.0;
  const auto it = pw.find(KVec(pw.begin()->first.size(), 0));
  return it == pw.end() ? 0.0 : it->second.real();
}

}  // namespace detail

// Quadrature route for the Besicovitch norm. Auto follows the rule "exact
// convolution for even integer q, rectangle rule otherwise"; the explicit
// values let tests compare the two routes against each other.
enum class NormRoute { Auto, Grid, Convolution };

// Besicovitch norm ||f||_q = (M(|f|^q))^(1/q) = (Int_T^n |F|^q)^(1/q).
// Even integer q goes through exact convolution; otherwise the uniform-grid
// rectangle rule on the parent (spectrally accurate for these integrands).
inline double besicovitch_norm(const TrigPolynomial& f, double q, int grid = 0,
                               NormRoute route = NormRoute::Auto) {
  if (q < 1.0) throw std::invalid_argument("besicovitch_norm: q must be >= 1");
  if (!f.p_independent)
    throw precondition_error("besicovitch_norm: frequency matrix is rationally dependent",
                             q_independent(f.P).witness.value_or(std::vector<long long>{}));
  if (f.terms.empty()) return 0.0;
  const double qi = std::round(q);
  const bool even_q = qi == q && static_cast<long long>(qi) % 2 == 0;
  if (route == NormRoute::Convolution && !even_q)
    throw std::invalid_argument("besicovitch_norm: convolution route needs even integer q");
  if (even_q && route != NormRoute::Grid) {
    const double mean = detail::even_power_mean(f.terms, static_cast<int>(qi));
    return std::pow(std::max(mean, 0.0), 1.0 / q);
  }
  const int need = min_alias_free_grid(f.max_abs_index());
  const int N = grid > 0 ? grid : default_grid(f.max_abs_index());
  if (N < need)
    throw std::invalid_argument("besicovitch_norm: grid too small, need N >= " +
                                std::to_string(need));
  const GridFunction g = eval_on_grid(f.terms, f.P.cols(), N);
  KahanSum s;
  for (const auto& v : g.values) s.add(std::pow(std::abs(v), q));
  return std::pow(s.value() / static_cast<double>(g.size()), 1.0 / q);
}

struct WienerInversion {
  TrigPolynomial inverse;
  double residual = 0.0;  // l1 bound on ||f * g - 1||_inf
  double grid_min = 0.0;  // certified min |F| on the grid
  double slack = 0.0;     // Bernstein-type slack used in the certificate
};

// Wiener-algebra inversion (the 1/f theorem made effective): certify F != 0 on
// the torus from grid values minus slack, invert pointwise, recover the
// coefficients of 1/F by the discrete transform, truncate below tail_tol.
inline WienerInversion wiener_inverse(const TrigPolynomial& f, int grid = 0,
                                      double tail_tol = 1e-12, double residual_tol = 1e-8) {
  const ParentSpectrum F = lift(f);
  const int n = F.n;
  const int need = min_alias_free_grid(F.max_abs_index());
  const int N = grid > 0 ? grid : std::max(default_grid(F.max_abs_index()), 64);
  if (N < need)
    throw std::invalid_argument("wiener_inverse: grid too small, need N >= " +
                                std::to_string(need));

  GridFunction g = eval_on_grid(F, N);
  double gmin = std::numeric_limits<double>::infinity();
  for (const auto& v : g.values) gmin = std::min(gmin, std::abs(v));
  const double slack = grid_slack(F.coeffs, N);
  if (!(gmin - slack > 0.0))
    throw std::domain_error(
        "wiener_inverse: cannot certify F nonvanishing (grid min " + std::to_string(gmin) +
        ", slack " + std::to_string(slack) + "); F may vanish or the grid is too coarse");

  for (auto& v : g.values) v = 1.0 / v;
  const GridFunction spectrum = forward_dft(std::move(g));

  CoeffMap inv_terms;
  KVec k(n, 0);
  std::vector<int> idx(n, 0);
  for (std::size_t flat = 0;; ++flat) {
    const Complex c = spectrum.values[flat];
    if (std::abs(c) > tail_tol) {
      for (int a = 0; a < n; ++a) k[a] = idx[a] > N / 2 ? idx[a] - N : idx[a];
      inv_terms[k] = c;
    }
    int a = n - 1;
    while (a >= 0 && idx[a] == N - 1) idx[a--] = 0;
    if (a < 0) break;
    ++idx[a];
  }
  TrigPolynomial inv = TrigPolynomial::make(f.P, std::move(inv_terms));

  CoeffMap prod = convolve(f.terms, inv.terms);
  prod[KVec(n, 0)] -= 1.0;
  const double residual = wiener_norm_of(prod);
  if (residual > residual_tol)
    throw convergence_error("wiener_inverse: residual " + std::to_string(residual) +
                            " above tolerance; increase the grid size");
  return WienerInversion{std::move(inv), residual, gmin, slack};
}

struct B2IsometryReport {
  double parent_sum_sq = 0.0;  // ||F||_{L^2}^2 by Parseval on T^n
  double qp_sum_sq = 0.0;      // ||f||_2^2 by Parseval for the Bohr mean
  bool equal = false;
};

// The coefficient-transport isometry B^2_P <-> L^2(T^n).
// Both sides are the same sum over the same map in the same order, so the
// report shows exact equality.
inline B2IsometryReport b2_isometry_check(const ParentSpectrum& F, const FrequencyMatrix& p) {
  if (!q_independent(p).independent)
    throw precondition_error("b2_isometry_check: frequency matrix is rationally dependent");
  const TrigPolynomial f = project(F, p);
  B2IsometryReport rep;
  KahanSum a, b;
  for (const auto& [k, c] : F.coeffs) a.add(std::norm(c));
  for (const auto& [k, c] : f.terms) b.add(std::norm(c));
  rep.parent_sum_sq = a.value();
  rep.qp_sum_sq = b.value();
  rep.equal = rep.parent_sum_sq == rep.qp_sum_sq;
  return rep;
}

}  // namespace qpkit
