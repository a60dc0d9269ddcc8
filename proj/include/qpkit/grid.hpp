#pragma once

#include <cmath>
#include <vector>

#include "qpkit/parallel.hpp"
#include "qpkit/trig.hpp"

namespace qpkit {

// Samples of a function on the uniform N^n torus grid {j/N}, row-major with
// axis 0 slowest. Carrier for spectral quadrature and coefficient recovery.
struct GridFunction {
  int n = 0;
  int N = 1;
  std::vector<Complex> values;

  std::size_t size() const { return values.size(); }
};

namespace detail {

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place complex transform of one line; sign = -1 forward, +1 inverse.
// Unnormalized. Radix-2 when the length allows, otherwise direct O(N^2).
inline void transform_line(std::vector<Complex>& buf, int sign) {
  const int n = static_cast<int>(buf.size());
  if (n == 1) return;
  if (is_power_of_two(n)) {
    for (int i = 1, j = 0; i < n; ++i) {  // bit reversal
      int bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(buf[i], buf[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
      const double ang = sign * kTwoPi / len;
      const Complex wl(std::cos(ang), std::sin(ang));
      for (int i = 0; i < n; i += len) {
        Complex w(1.0, 0.0);
        for (int j = 0; j < len / 2; ++j) {
          const Complex u = buf[i + j];
          const Complex v = buf[i + j + len / 2] * w;
          buf[i + j] = u + v;
          buf[i + j + len / 2] = u - v;
          w *= wl;
        }
      }
    }
    return;
  }
  std::vector<Complex> out(n, Complex(0.0, 0.0));
  std::vector<Complex> tw(n);
  for (int j = 0; j < n; ++j) {
    const double ang = sign * kTwoPi * j / n;
    tw[j] = Complex(std::cos(ang), std::sin(ang));
  }
  for (int k = 0; k < n; ++k) {
    KahanComplex acc;
    for (int j = 0; j < n; ++j) acc.add(buf[j] * tw[static_cast<long long>(j) * k % n]);
    out[k] = acc.value();
  }
  buf = std::move(out);
}

inline void transform_axes(GridFunction& g, int sign) {
  const int n = g.n, N = g.N;
  for (int axis = 0; axis < n; ++axis) {
    std::size_t stride = 1;
    for (int a = axis + 1; a < n; ++a) stride *= N;
    const std::size_t block = stride * N;
    const std::size_t lines = g.size() / N;
    parallel_for(lines, [&](std::size_t li) {
      thread_local std::vector<Complex> line;
      line.resize(N);
      const std::size_t base = (li / stride) * block + li % stride;
      for (int t = 0; t < N; ++t) line[t] = g.values[base + t * stride];
      transform_line(line, sign);
      for (int t = 0; t < N; ++t) g.values[base + t * stride] = line[t];
    });
  }
}

}  // namespace detail

// Evaluates the trigonometric series on the N^n grid by placing coefficients
// at their aliased positions and running an (unnormalized) inverse transform.
// Alias-free, i.e. exact up to rounding, whenever N >= 2*max|k_j| + 1.
inline GridFunction eval_on_grid(const CoeffMap& coeffs, int n, int N) {
  GridFunction g;
  g.n = n;
  g.N = N;
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) total *= N;
  g.values.assign(total, Complex(0.0, 0.0));
  for (const auto& [k, c] : coeffs) {
    std::size_t idx = 0;
    for (int a = 0; a < n; ++a) {
      const long long r = ((k[a] % N) + N) % N;
      idx = idx * N + static_cast<std::size_t>(r);
    }
    g.values[idx] += c;
  }
  detail::transform_axes(g, +1);
  return g;
}

inline GridFunction eval_on_grid(const ParentSpectrum& F, int N) {
  return eval_on_grid(F.coeffs, F.n, N);
}

// Forward DFT: recovers (aliased) Fourier coefficients, normalized by N^-n.
inline GridFunction forward_dft(GridFunction g) {
  detail::transform_axes(g, -1);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& v : g.values) v *= scale;
  return g;
}

// Coefficient of the transformed grid at a signed index k, |k_j| <= N/2.
inline Complex dft_coefficient(const GridFunction& g, const KVec& k) {
  std::size_t idx = 0;
  for (int a = 0; a < g.n; ++a) {
    const long long r = ((k[a] % g.N) + g.N) % g.N;
    idx = idx * g.N + static_cast<std::size_t>(r);
  }
  return g.values[idx];
}

// Uniform bound on |F(y) - F(nearest grid point)|: the mean-value estimate
// pi * sum |F_hat(k)| * |k|_1 / N.
inline double grid_slack(const CoeffMap& coeffs, int N) {
  KahanSum s;
  for (const auto& [k, c] : coeffs) {
    long long l1 = 0;
    for (long long kj : k) l1 += std::llabs(kj);
    s.add(std::abs(c) * static_cast<double>(l1));
  }
  return M_PI * s.value() / N;
}

// Smallest alias-free grid; the default rounds up to a power of two for the
// fast transform path.
inline int min_alias_free_grid(int max_abs_index) { return 2 * max_abs_index + 1; }

inline int default_grid(int max_abs_index) {
  int n = 1;
  while (n < 4 * max_abs_index + 1) n <<= 1;
  return n;
}

}  // namespace qpkit
