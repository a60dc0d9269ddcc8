#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "qpkit/trig.hpp"

namespace qpkit {

inline double frac_mod1(double u) {
  double w = u - std::floor(u);
  if (w >= 1.0) w -= 1.0;
  if (w < 0.0) w += 1.0;
  return w + 0.0;  // flush -0.0
}

// A point of T^n, coordinates reduced into [0, 1).
struct TorusPoint {
  std::vector<double> coords;

  static TorusPoint make(std::vector<double> c) {
    for (auto& u : c) u = frac_mod1(u);
    return TorusPoint{std::move(c)};
  }
  int n() const { return static_cast<int>(coords.size()); }
};

// Phi_x(y) = (y + P^T x) mod Z^n.
inline TorusPoint flow(const FrequencyMatrix& p, const TorusPoint& y, const std::vector<double>& x) {
  if (y.n() != p.cols()) throw dimension_mismatch("flow: point dimension != n");
  const std::vector<double> t = p.transpose_times(x);
  std::vector<double> out(y.coords);
  for (int j = 0; j < p.cols(); ++j) out[j] = frac_mod1(out[j] + t[j]);
  return TorusPoint{std::move(out)};
}

inline TorusPoint flow(const FrequencyMatrix& p, const TorusPoint& y, double x) {
  return flow(p, y, std::vector<double>{x});
}

// Evenly spaced points of the line orbit x -> Phi_x(y), for d = 1 (the
// Fig. 1 style irrational winding on T^n).
inline std::vector<TorusPoint> orbit_segment(const FrequencyMatrix& p, const TorusPoint& y,
                                             double x_from, double x_to, int samples) {
  if (p.rows() != 1) throw std::invalid_argument("orbit_segment: requires d = 1");
  if (samples < 2) throw std::invalid_argument("orbit_segment: need samples >= 2");
  std::vector<TorusPoint> out;
  out.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double x = x_from + (x_to - x_from) * i / (samples - 1);
    out.push_back(flow(p, y, x));
  }
  return out;
}

namespace detail {

inline double sinc(double u) { return u == 0.0 ? 1.0 : std::sin(u) / u; }

}  // namespace detail

// Continuous Weyl average A_T F(y) = (2T)^-d * Int_{[-T,T]^d} F(Phi_x(y)) dx
// in closed form: each term picks up a product of sinc factors
// sinc(2*pi*(Pk)_j*T). Frequencies are tested for zero exactly; no quadrature
// is involved for spectral input.
inline Complex weyl_average_continuous(const ParentSpectrum& F, const FrequencyMatrix& p,
                                       const TorusPoint& y, double T) {
  if (F.n != p.cols()) throw dimension_mismatch("weyl_average_continuous: F.n != P.n");
  if (y.n() != p.cols()) throw dimension_mismatch("weyl_average_continuous: y dimension != n");
  if (!(T > 0)) throw std::invalid_argument("weyl_average_continuous: T must be positive");
  KahanComplex acc;
  for (const auto& [k, c] : F.coeffs) {
    double factor = 1.0;
    for (const auto& lambda : p.frequency(k)) {
      if (lambda.is_zero()) continue;
      factor *= detail::sinc(kTwoPi * lambda.to_double() * T);
    }
    KahanSum phase;
    for (std::size_t j = 0; j < k.size(); ++j) phase.add(static_cast<double>(k[j]) * y.coords[j]);
    acc.add(c * factor * unit_phase(phase.value()));
  }
  return acc.value();
}

// Discrete Weyl average (2T+1)^-d * sum over x in [-T,T]^d cap Z^d, via the
// normalized Dirichlet kernel D_T(theta) = sin(pi(2T+1)theta) /
// ((2T+1) sin(pi theta)) with theta = (Pk)_j mod 1 (exact; the theta = 0
// branch returns 1 and changes the limit qualitatively).
inline Complex weyl_average_discrete(const ParentSpectrum& F, const FrequencyMatrix& p,
                                     const TorusPoint& y, long long T) {
  if (F.n != p.cols()) throw dimension_mismatch("weyl_average_discrete: F.n != P.n");
  if (y.n() != p.cols()) throw dimension_mismatch("weyl_average_discrete: y dimension != n");
  if (T < 1) throw std::invalid_argument("weyl_average_discrete: T must be a positive integer");
  const double width = static_cast<double>(2 * T + 1);
  KahanComplex acc;
  for (const auto& [k, c] : F.coeffs) {
    double factor = 1.0;
    for (const auto& lambda : p.frequency(k)) {
      const FieldScalar theta = lambda.mod1();
      if (theta.is_zero()) continue;
      const double td = theta.to_double();
      factor *= std::sin(M_PI * width * td) / (width * std::sin(M_PI * td));
    }
    KahanSum phase;
    for (std::size_t j = 0; j < k.size(); ++j) phase.add(static_cast<double>(k[j]) * y.coords[j]);
    acc.add(c * factor * unit_phase(phase.value()));
  }
  return acc.value();
}

// Riemann-sum fallback for a black-box parent function; approximate by
// construction (midpoint rule on grid_per_axis^d translates), unlike the
// closed forms above.
inline Complex weyl_average_riemann(const std::function<Complex(const std::vector<double>&)>& F,
                                    const FrequencyMatrix& p, const TorusPoint& y, double T,
                                    int grid_per_axis) {
  const int d = p.rows();
  if (grid_per_axis < 1) throw std::invalid_argument("weyl_average_riemann: empty grid");
  std::vector<int> idx(d, 0);
  KahanComplex acc;
  long long count = 0;
  for (;;) {
    std::vector<double> x(d);
    for (int i = 0; i < d; ++i) x[i] = -T + (idx[i] + 0.5) * (2.0 * T / grid_per_axis);
    acc.add(F(flow(p, y, x).coords));
    ++count;
    int i = d - 1;
    while (i >= 0 && idx[i] == grid_per_axis - 1) idx[i--] = 0;
    if (i < 0) break;
    ++idx[i];
  }
  return acc.value() / static_cast<double>(count);
}

struct EquidistributionRow {
  double T = 0;
  double error = 0;        // |A_T F(y) - Int F|
  double uniform_bound = 0;  // sum over k != 0 of |F_hat(k)| * prod_j min(1, 1/(2 pi |(Pk)_j| T))
};

// Decay table for the Weyl equidistribution of the flow. For a character the error
// is literally independent of y (the phase factors out with modulus one), so
// uniform_bound is attained up to the sinc oscillation.
inline std::vector<EquidistributionRow> equidistribution_table(const ParentSpectrum& F,
                                                               const FrequencyMatrix& p,
                                                               const TorusPoint& y,
                                                               const std::vector<double>& T_list) {
  std::vector<EquidistributionRow> rows;
  rows.reserve(T_list.size());
  const Complex mean = F.mean();
  const KVec zero(F.n, 0);
  for (double T : T_list) {
    EquidistributionRow row;
    row.T = T;
    row.error = std::abs(weyl_average_continuous(F, p, y, T) - mean);
    KahanSum bound;
    for (const auto& [k, c] : F.coeffs) {
      if (k == zero) continue;
      double factor = 1.0;
      for (const auto& lambda : p.frequency(k)) {
        if (lambda.is_zero()) continue;
        factor *= std::min(1.0, 1.0 / (kTwoPi * std::fabs(lambda.to_double()) * T));
      }
      bound.add(std::abs(c) * factor);
    }
    row.uniform_bound = bound.value();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qpkit
