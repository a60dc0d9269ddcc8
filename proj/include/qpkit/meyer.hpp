#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "qpkit/parallel.hpp"
#include "qpkit/trig.hpp"

namespace qpkit {

// Acceptance window W of the cut-and-project scheme: a bounded interval with
// nonempty interior, endpoints exact field elements.
struct Window {
  FieldScalar lo;
  FieldScalar hi;
  bool closed_lo = true;
  bool closed_hi = false;

  static Window make(FieldScalar lo, FieldScalar hi, bool closed_lo = true,
                     bool closed_hi = false) {
    if (!(lo < hi)) throw std::invalid_argument("Window: need lo < hi (nonempty interior)");
    return Window{std::move(lo), std::move(hi), closed_lo, closed_hi};
  }

  bool contains(const FieldScalar& x) const {
    const int cl = (x - lo).sign();
    const int ch = (x - hi).sign();
    if (cl < 0 || ch > 0) return false;
    if (cl == 0 && !closed_lo) return false;
    if (ch == 0 && !closed_hi) return false;
    return true;
  }
};

// One lattice point of the golden band: (m, n) with m + n*phi' in W.
struct BandPoint {
  long long m = 0;
  long long n = 0;
  friend bool operator==(const BandPoint&, const BandPoint&) = default;
};

inline constexpr long double kGoldenL = 1.6180339887498948482045868343656381177L;
inline constexpr long double kGoldenConjL = 1.0L - kGoldenL;  // (1 - sqrt 5)/2

// The enumerated band B = {(m,n) : m + n*phi' in W, |(m,n)| <= radius},
// sorted by physical value m + n*phi. Lambda (physical projections) and
// Lambda' (internal projections, dense in W) derive per point.
struct BandSet {
  Window window;
  double radius = 0.0;
  std::vector<BandPoint> points;

  FieldScalar physical_exact(const BandPoint& p) const {
    return FieldScalar(p.m) + FieldScalar(p.n) * golden_ratio();
  }
  FieldScalar internal_exact(const BandPoint& p) const {
    return FieldScalar(p.m) + FieldScalar(p.n) * golden_ratio_conjugate();
  }
  static double physical(const BandPoint& p) {
    return static_cast<double>(static_cast<long double>(p.m) + static_cast<long double>(p.n) * kGoldenL);
  }
  static double internal(const BandPoint& p) {
    return static_cast<double>(static_cast<long double>(p.m) +
                               static_cast<long double>(p.n) * kGoldenConjL);
  }
};

namespace detail {

inline long long floor_to_ll(const FieldScalar& x) {
  const Int f = x.floor();
  if (!f.fits_slong_p()) throw std::overflow_error("band bound does not fit in long long");
  return f.get_si();
}

}  // namespace detail

// Row-by-row exact enumeration: for each |n| <= radius the admissible m form
// an integer interval solved in field arithmetic (never by rejection), then
// clipped to the disc. (0,0) appears iff 0 lies in W; consumers of the
// pathological series exclude it themselves.
inline BandSet enumerate_band(const Window& w, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("enumerate_band: radius must be positive");
  BandSet band{w, radius, {}};
  const FieldScalar conj = golden_ratio_conjugate();
  const double r2 = radius * radius;
  const long long n_max = static_cast<long long>(std::floor(radius));
  const std::size_t rows = static_cast<std::size_t>(2 * n_max + 1);
  std::vector<std::vector<BandPoint>> buckets(rows);
  parallel_for(rows, [&](std::size_t row) {
    const long long n = -n_max + static_cast<long long>(row);
    const double rem = r2 - static_cast<double>(n) * static_cast<double>(n);
    if (rem < 0.0) return;
    long long m_circ = static_cast<long long>(std::floor(std::sqrt(rem)));
    while (static_cast<double>(m_circ) * m_circ > rem) --m_circ;
    while (static_cast<double>(m_circ + 1) * (m_circ + 1) <= rem) ++m_circ;

    const FieldScalar shift = FieldScalar(n) * conj;  // m must satisfy lo <= m + shift (<=) hi
    const FieldScalar lo_b = w.lo - shift;
    const FieldScalar hi_b = w.hi - shift;
    long long m_lo = w.closed_lo ? -detail::floor_to_ll(-lo_b)  // ceil
                                 : detail::floor_to_ll(lo_b) + 1;
    long long m_hi = w.closed_hi ? detail::floor_to_ll(hi_b)
                                 : -detail::floor_to_ll(-hi_b) - 1;  // ceil - 1
    m_lo = std::max(m_lo, -m_circ);
    m_hi = std::min(m_hi, m_circ);
    for (long long m = m_lo; m <= m_hi; ++m) buckets[row].push_back(BandPoint{m, n});
  });
  for (const auto& bucket : buckets)
    band.points.insert(band.points.end(), bucket.begin(), bucket.end());
  std::sort(band.points.begin(), band.points.end(), [](const BandPoint& a, const BandPoint& b) {
    const long double ka = static_cast<long double>(a.m) + static_cast<long double>(a.n) * kGoldenL;
    const long double kb = static_cast<long double>(b.m) + static_cast<long double>(b.n) * kGoldenL;
    if (ka != kb) return ka < kb;
    return std::pair(a.m, a.n) < std::pair(b.m, b.n);
  });
  return band;
}

// Reference enumeration for tests: scans the full disc and checks membership
// point by point in the field. Quadratic in the radius.
inline std::vector<BandPoint> enumerate_band_brute_force(const Window& w, double radius) {
  std::vector<BandPoint> out;
  const FieldScalar conj = golden_ratio_conjugate();
  const long long r = static_cast<long long>(std::floor(radius));
  const double r2 = radius * radius;
  for (long long n = -r; n <= r; ++n)
    for (long long m = -r; m <= r; ++m) {
      if (static_cast<double>(m) * m + static_cast<double>(n) * n > r2) continue;
      if (w.contains(FieldScalar(m) + FieldScalar(n) * conj)) out.push_back(BandPoint{m, n});
    }
  std::sort(out.begin(), out.end(), [](const BandPoint& a, const BandPoint& b) {
    const long double ka = static_cast<long double>(a.m) + static_cast<long double>(a.n) * kGoldenL;
    const long double kb = static_cast<long double>(b.m) + static_cast<long double>(b.n) * kGoldenL;
    if (ka != kb) return ka < kb;
    return std::pair(a.m, a.n) < std::pair(b.m, b.n);
  });
  return out;
}

struct DensityReport {
  long long min_count = 0;
  long long max_count = 0;
  double C_low = 0.0;   // min_count / L
  double C_high = 0.0;  // max_count / L
  double min_gap = 0.0;
  double covered_halfwidth = 0.0;  // sliding range was [-V, V]
  double L = 0.0;
  int trials = 0;
};

// Slides windows of length L across the physical projection Lambda and
// reports the extreme counts: the empirical constants of the Meyer-set
// density sandwich C*L <= #(Lambda cap [a, a+L]) <= C'*L. The sliding range
// is restricted to values the truncation provably covers.
inline DensityReport meyer_density_check(const BandSet& b, double L, int trials = 256) {
  if (!(L > 0.0)) throw std::invalid_argument("meyer_density_check: L must be positive");
  if (trials < 1) throw std::invalid_argument("meyer_density_check: trials must be >= 1");
  if (b.points.empty()) throw std::invalid_argument("meyer_density_check: empty band");

  const double w_abs =
      std::max(std::fabs(b.window.lo.to_double()), std::fabs(b.window.hi.to_double()));
  const double phi = static_cast<double>(kGoldenL);
  const double sqrt5 = std::sqrt(5.0);
  // Norm bound for a band point with |physical| <= v; invert against radius.
  const auto norm_bound = [&](double v) {
    const double n = (v + w_abs) / sqrt5;
    return std::hypot(v + phi * n, n);
  };
  double lo = 0.0, hi = b.radius;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (norm_bound(mid) <= b.radius ? lo : hi) = mid;
  }
  const double V = lo * 0.999 - 1.0;
  if (!(2.0 * V - L > 0.0))
    throw std::invalid_argument(
        "meyer_density_check: truncation radius too small to cover windows of this length");

  std::vector<double> phys;
  phys.reserve(b.points.size());
  for (const auto& p : b.points) phys.push_back(BandSet::physical(p));  // already sorted

  DensityReport rep;
  rep.L = L;
  rep.trials = trials;
  rep.covered_halfwidth = V;
  rep.min_count = -1;
  for (int i = 0; i < trials; ++i) {
    const double a = trials == 1 ? -V : -V + (2.0 * V - L) * i / (trials - 1);
    const auto first = std::lower_bound(phys.begin(), phys.end(), a);
    const auto last = std::lower_bound(phys.begin(), phys.end(), a + L);
    const long long count = last - first;
    rep.max_count = std::max(rep.max_count, count);
    rep.min_count = rep.min_count < 0 ? count : std::min(rep.min_count, count);
  }
  rep.C_low = static_cast<double>(rep.min_count) / L;
  rep.C_high = static_cast<double>(rep.max_count) / L;
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < phys.size(); ++i)
    rep.min_gap = std::min(rep.min_gap, phys[i] - phys[i - 1]);
  return rep;
}

struct ComparabilityBounds {
  double c_low = 0.0;   // min |m + n*phi| / sqrt(m^2 + n^2)
  double c_high = 0.0;  // max of the same ratio
};

// Empirical extremes of |m+n*phi| / |(m,n)| over the band minus the origin;
// max(c_high, 1/c_low) certifies the two-sided comparability constant on
// this truncation.
inline ComparabilityBounds golden_comparability(const BandSet& b) {
  ComparabilityBounds out{std::numeric_limits<double>::infinity(), 0.0};
  bool any = false;
  for (const auto& p : b.points) {
    if (p.m == 0 && p.n == 0) continue;
    const double ratio = std::fabs(BandSet::physical(p)) /
                         std::hypot(static_cast<double>(p.m), static_cast<double>(p.n));
    out.c_low = std::min(out.c_low, ratio);
    out.c_high = std::max(out.c_high, ratio);
    any = true;
  }
  if (!any) throw std::invalid_argument("golden_comparability: band holds no nonzero points");
  return out;
}

namespace detail {

inline CoeffMap band_coefficients(const BandSet& b, double exponent) {
  CoeffMap terms;
  for (const auto& p : b.points) {
    if (p.m == 0 && p.n == 0) continue;
    const double c = std::pow(std::fabs(BandSet::physical(p)), -exponent);
    terms.emplace(KVec{p.m, p.n}, Complex(c, 0.0));
  }
  return terms;
}

}  // namespace detail

// The smooth-but-pathological series: frequencies are the internal
// projections m + n*phi' (bounded, dense in W), coefficients decay as the
// -3/2 power of the physical value. Quasi-periodic and C^infinity on R,
// while the parent fails to be C^1 on T^2.
inline TrigPolynomial pathological_f(const BandSet& b) {
  const FrequencyMatrix p = FrequencyMatrix::row({FieldScalar(1), golden_ratio_conjugate()});
  return TrigPolynomial::make(p, detail::band_coefficients(b, 1.5));
}

inline ParentSpectrum pathological_parent(const BandSet& b) {
  return ParentSpectrum::make(2, detail::band_coefficients(b, 1.5));
}

// The tame companion g_r: same band, but frequencies are the physical Meyer
// set m + n*phi (uniformly discrete, no accumulation), coefficients
// |m+n*phi|^-r. Needs r > 1: the ordered Meyer set grows linearly, so the
// coefficient series converges exactly when r > 1.
inline TrigPolynomial g_r_function(const BandSet& b, double r) {
  if (!(r > 1.0))
    throw std::invalid_argument(
        "g_r_function: need r > 1; the Meyer frequencies grow linearly, so the coefficient "
        "series diverges for r <= 1");
  const FrequencyMatrix p = FrequencyMatrix::row({FieldScalar(1), golden_ratio()});
  return TrigPolynomial::make(p, detail::band_coefficients(b, r));
}

}  // namespace qpkit
