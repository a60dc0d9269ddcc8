#include <doctest.h>

#include <cmath>

#include "qpkit/generators.hpp"
#include "qpkit/torus.hpp"

using namespace qpkit;

namespace {

// Independent oracle: plain lattice sum for the discrete average, d = 1.
Complex direct_lattice_average(const ParentSpectrum& F, const FrequencyMatrix& p,
                               const TorusPoint& y, long long T) {
  KahanComplex acc;
  for (long long x = -T; x <= T; ++x) {
    const TorusPoint z = flow(p, y, static_cast<double>(x));
    acc.add(evaluate_parent(F, z.coords));
  }
  return acc.value() / static_cast<double>(2 * T + 1);
}

}  // namespace

TEST_CASE("flow reference values for P = (1, sqrt2)") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  const TorusPoint origin = TorusPoint::make({0.0, 0.0});

  const TorusPoint a = flow(p, origin, 1.0);
  CHECK(a.coords[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(a.coords[1] == doctest::Approx(0.4142135623730950).epsilon(1e-12));

  const TorusPoint b = flow(p, TorusPoint::make({0.25, 0.75}), 0.0);
  CHECK(b.coords[0] == 0.25);
  CHECK(b.coords[1] == 0.75);

  const TorusPoint c = flow(p, TorusPoint::make({0.5, 0.5}), 2.0);
  CHECK(c.coords[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.coords[1] == doctest::Approx(0.3284271247461903).epsilon(1e-12));
}

TEST_CASE("flow satisfies the group law") {
  Rng rng(910);
  const FrequencyMatrix p = matrix_one_sqrt2();
  for (int i = 0; i < 100; ++i) {
    const TorusPoint y = TorusPoint::make({rng.next_real(), rng.next_real()});
    const double x1 = rng.next_real(-20.0, 20.0);
    const double x2 = rng.next_real(-20.0, 20.0);
    const TorusPoint lhs = flow(p, flow(p, y, x1), x2);
    const TorusPoint rhs = flow(p, y, x1 + x2);
    for (int j = 0; j < 2; ++j) {
      double diff = std::fabs(lhs.coords[j] - rhs.coords[j]);
      diff = std::min(diff, 1.0 - diff);  // distance on the circle
      CHECK(diff <= 1e-12);
    }
  }
}

TEST_CASE("orbit segment samples the irrational line") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  const TorusPoint origin = TorusPoint::make({0.0, 0.0});

  const auto pts = orbit_segment(p, origin, 0.0, 1.0, 3);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].coords[0] == doctest::Approx(0.0));
  CHECK(pts[1].coords[0] == doctest::Approx(0.5));
  CHECK(pts[1].coords[1] == doctest::Approx(0.7071067811865476).epsilon(1e-12));
  CHECK(pts[2].coords[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pts[2].coords[1] == doctest::Approx(0.4142135623730950).epsilon(1e-12));

  const auto degenerate = orbit_segment(p, TorusPoint::make({0.3, 0.9}), 0.0, 0.0, 2);
  CHECK(degenerate[0].coords == degenerate[1].coords);

  // rational line closes up at x = 1
  const FrequencyMatrix rational =
      FrequencyMatrix::row({FieldScalar(1), FieldScalar(2)});
  const auto closed = orbit_segment(rational, origin, 0.0, 1.0, 5);
  CHECK(closed.back().coords[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(closed.back().coords[1] == doctest::Approx(0.0).epsilon(1e-12));

  const FrequencyMatrix two_rows(2, 2,
                                 {FieldScalar(1), FieldScalar(0), FieldScalar(0), FieldScalar(1)});
  CHECK_THROWS_AS(orbit_segment(two_rows, TorusPoint::make({0, 0}), 0, 1, 4),
                  std::invalid_argument);
}

TEST_CASE("continuous Weyl average: constants and the sinc factor") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  const TorusPoint y0 = TorusPoint::make({0.0, 0.0});

  const ParentSpectrum constant = ParentSpectrum::make(2, {{KVec{0, 0}, Complex(2.5, -1.0)}});
  for (double T : {0.5, 3.0, 100.0}) {
    const Complex a = weyl_average_continuous(constant, p, TorusPoint::make({0.3, 0.6}), T);
    CHECK(std::abs(a - Complex(2.5, -1.0)) <= 1e-15);
  }

  // F = e^{2 pi i y_2}: A_10 = sin(20 pi sqrt2) / (20 pi sqrt2); value frozen
  // from a 4e7-point midpoint quadrature oracle.
  const ParentSpectrum character = ParentSpectrum::make(2, {{KVec{0, 1}, Complex(1.0, 0.0)}});
  const Complex a10 = weyl_average_continuous(character, p, y0, 10.0);
  CHECK(a10.real() == doctest::Approx(0.00876679530261082).epsilon(1e-10));
  CHECK(a10.imag() == doctest::Approx(0.0).epsilon(1e-14));

  // two-character parent drifts to the space mean 0 as T grows
  const ParentSpectrum two = ParentSpectrum::make(
      2, {{KVec{1, 0}, Complex(1.0, 0.0)}, {KVec{0, 1}, Complex(2.0, 0.0)}});
  CHECK(std::abs(weyl_average_continuous(two, p, y0, 1e6)) <= 1e-5);
}

TEST_CASE("continuous Weyl average agrees with quadrature") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  const ParentSpectrum F = ParentSpectrum::make(
      2, {{KVec{1, 0}, Complex(0.7, 0.2)}, {KVec{0, 1}, Complex(-0.4, 1.1)},
          {KVec{0, 0}, Complex(0.3, 0.0)}});
  const TorusPoint y = TorusPoint::make({0.2, 0.9});
  const double T = 2.0;
  const int N = 200000;
  KahanComplex acc;
  for (int i = 0; i < N; ++i) {
    const double x = -T + (i + 0.5) * (2.0 * T / N);
    acc.add(evaluate_parent(F, flow(p, y, x).coords));
  }
  const Complex quad = acc.value() / static_cast<double>(N);
  CHECK(std::abs(weyl_average_continuous(F, p, y, T) - quad) <= 1e-8);
}

TEST_CASE("discrete Weyl average: Dirichlet kernel against the lattice sum") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  const ParentSpectrum F = ParentSpectrum::make(
      2, {{KVec{0, 1}, Complex(1.0, 0.0)}, {KVec{1, 1}, Complex(0.5, -0.5)}});
  const TorusPoint y = TorusPoint::make({0.37, 0.11});
  for (long long T : {1LL, 9LL, 57LL}) {
    const Complex direct = direct_lattice_average(F, p, y, T);
    CHECK(std::abs(weyl_average_discrete(F, p, y, T) - direct) <= 1e-10);
  }
}

TEST_CASE("discrete average of the invariant character never decays") {
  // theta = (Pk)_1 mod 1 = 0 for k = (1,0): the average equals e^{2 pi i y_1}
  // at every T, the invariant predicted by the Z-witness (1,0).
  const FrequencyMatrix p = matrix_one_sqrt2();
  const ParentSpectrum character = ParentSpectrum::make(2, {{KVec{1, 0}, Complex(1.0, 0.0)}});
  Rng rng(911);
  for (int i = 0; i < 10; ++i) {
    const TorusPoint y = TorusPoint::make({rng.next_real(), rng.next_real()});
    const Complex expected = unit_phase(y.coords[0]);
    for (long long T : {1LL, 5LL, 100LL, 1000LL})
      CHECK(std::abs(weyl_average_discrete(character, p, y, T) - expected) <= 1e-12);
  }
}

TEST_CASE("character averages obey the closed-form magnitude bound") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  Rng rng(912);
  for (int i = 0; i < 50; ++i) {
    KVec k{rng.next_int(-6, 6), rng.next_int(-6, 6)};
    if (k == KVec{0, 0}) k[1] = 1;
    const ParentSpectrum F = ParentSpectrum::make(2, {{k, Complex(1.0, 0.0)}});
    const TorusPoint y = TorusPoint::make({rng.next_real(), rng.next_real()});
    const double T = rng.next_real(1.0, 500.0);
    const double lambda = std::fabs(p.frequency(k)[0].to_double());
    const double bound = std::min(1.0, 1.0 / (kTwoPi * lambda * T));
    CHECK(std::abs(weyl_average_continuous(F, p, y, T)) <= bound + 1e-12);
  }
}

TEST_CASE("equidistribution table bounds and y-independence for characters") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  const ParentSpectrum character = ParentSpectrum::make(2, {{KVec{0, 1}, Complex(1.0, 0.0)}});
  const std::vector<double> Ts{10.0, 100.0, 1000.0};

  const auto rows = equidistribution_table(character, p, TorusPoint::make({0.0, 0.0}), Ts);
  REQUIRE(rows.size() == 3);
  const double sqrt2 = std::sqrt(2.0);
  for (const auto& row : rows) {
    CHECK(row.error <= 1.0 / (kTwoPi * sqrt2 * row.T) + 1e-15);
    CHECK(row.error <= row.uniform_bound + 1e-15);
  }

  Rng rng(913);
  for (int i = 0; i < 5; ++i) {
    const TorusPoint y = TorusPoint::make({rng.next_real(), rng.next_real()});
    const auto at_y = equidistribution_table(character, p, y, Ts);
    for (std::size_t r = 0; r < rows.size(); ++r)
      CHECK(at_y[r].error == doctest::Approx(rows[r].error).epsilon(1e-12));
  }

  const ParentSpectrum constant = ParentSpectrum::make(2, {{KVec{0, 0}, Complex(4.0, 0.0)}});
  for (const auto& row :
       equidistribution_table(constant, p, TorusPoint::make({0.1, 0.2}), Ts))
    CHECK(row.error <= 1e-15);
}

TEST_CASE("riemann fallback approximates the closed form") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  const ParentSpectrum F = ParentSpectrum::make(
      2, {{KVec{0, 0}, Complex(1.0, 0.0)}, {KVec{0, 1}, Complex(0.5, 0.5)}});
  const TorusPoint y = TorusPoint::make({0.1, 0.7});
  const auto black_box = [&](const std::vector<double>& z) { return evaluate_parent(F, z); };
  const Complex approx = weyl_average_riemann(black_box, p, y, 3.0, 30000);
  const Complex exact = weyl_average_continuous(F, p, y, 3.0);
  CHECK(std::abs(approx - exact) <= 1e-6);
}

TEST_CASE("d = 2 actions: closed forms against quadrature and lattice sums") {
  // columns p1 = (1,0), p2 = (sqrt2,1): rationally independent
  const FrequencyMatrix p(2, 2,
                          {FieldScalar(1), FieldScalar::sqrt_of(2),
                           FieldScalar(0), FieldScalar(1)});
  const ParentSpectrum F = ParentSpectrum::make(
      2, {{KVec{0, 1}, Complex(1.0, -0.5)}, {KVec{1, 0}, Complex(0.25, 0.5)}});
  const TorusPoint y = TorusPoint::make({0.15, 0.85});

  SUBCASE("continuous: 2-d midpoint quadrature") {
    const double T = 1.5;
    const int g = 600;
    KahanComplex acc;
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) {
        const std::vector<double> x{-T + (i + 0.5) * (2 * T / g), -T + (j + 0.5) * (2 * T / g)};
        acc.add(evaluate_parent(F, flow(p, y, x).coords));
      }
    const Complex quad = acc.value() / static_cast<double>(g) / static_cast<double>(g);
    CHECK(std::abs(weyl_average_continuous(F, p, y, T) - quad) <= 1e-6);
  }

  SUBCASE("discrete: direct sum over the integer box") {
    const long long T = 8;
    KahanComplex acc;
    for (long long i = -T; i <= T; ++i)
      for (long long j = -T; j <= T; ++j)
        acc.add(evaluate_parent(
            F, flow(p, y, {static_cast<double>(i), static_cast<double>(j)}).coords));
    const Complex direct = acc.value() / static_cast<double>((2 * T + 1) * (2 * T + 1));
    CHECK(std::abs(weyl_average_discrete(F, p, y, T) - direct) <= 1e-10);
  }

  SUBCASE("character factorizes across coordinates") {
    // k = (0,1): lambda = p2 = (sqrt2, 1); the second coordinate is integral,
    // so its sinc factor sits at theta = 0 in the discrete case
    const ParentSpectrum character = ParentSpectrum::make(2, {{KVec{0, 1}, Complex(1.0, 0.0)}});
    const double T = 10.25;  // keep both sinc factors away from their zeros
    const double s2 = std::sqrt(2.0);
    const double expected =
        (std::sin(kTwoPi * s2 * T) / (kTwoPi * s2 * T)) * (std::sin(kTwoPi * T) / (kTwoPi * T));
    const Complex a = weyl_average_continuous(character, p, TorusPoint::make({0, 0}), T);
    CHECK(a.real() == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("dimension guards") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  CHECK_THROWS_AS(flow(p, TorusPoint::make({0.0}), 1.0), dimension_mismatch);
  const ParentSpectrum F = ParentSpectrum::make(2, {{KVec{0, 1}, Complex(1.0, 0.0)}});
  CHECK_THROWS_AS(weyl_average_continuous(F, p, TorusPoint::make({0.0, 0.0}), -1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(weyl_average_discrete(F, p, TorusPoint::make({0.0, 0.0}), 0),
                  std::invalid_argument);
}
