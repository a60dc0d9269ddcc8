#include <doctest.h>

#include <cmath>

#include "qpkit/generators.hpp"
#include "qpkit/qp.hpp"

using namespace qpkit;

TEST_CASE("lift transports coefficients to the parent") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  const TrigPolynomial f = TrigPolynomial::make(
      p, {{KVec{1, 0}, Complex(1.0, 0.0)}, {KVec{0, 1}, Complex(2.0, 0.0)}});
  const ParentSpectrum F = lift(f);
  CHECK(F.n == 2);
  CHECK(F.at(KVec{1, 0}) == Complex(1.0, 0.0));
  CHECK(F.at(KVec{0, 1}) == Complex(2.0, 0.0));

  CHECK(lift(TrigPolynomial::make(p, {})).coeffs.empty());

  // single term at frequency 1 + sqrt2 = P (1,1)^T
  const TrigPolynomial g = TrigPolynomial::make(p, {{KVec{1, 1}, Complex(3.0, 0.0)}});
  CHECK(lift(g).at(KVec{1, 1}) == Complex(3.0, 0.0));
  CHECK(bohr_coefficient(g, FieldScalar(1) + FieldScalar::sqrt_of(2)) == Complex(3.0, 0.0));
}

TEST_CASE("lift refuses rationally dependent matrices, carrying the witness") {
  const FrequencyMatrix p = FrequencyMatrix::row({FieldScalar(1), FieldScalar(2)});
  const TrigPolynomial f = TrigPolynomial::make(p, {{KVec{1, 0}, Complex(1.0, 0.0)}});
  CHECK_THROWS_WITH_AS(lift(f), doctest::Contains("rationally dependent"), precondition_error);
  try {
    lift(f);
  } catch (const precondition_error& e) {
    CHECK(e.witness() == std::vector<long long>{2, -1});
  }
}

TEST_CASE("dependent matrices merge coinciding frequencies at construction") {
  const FrequencyMatrix p = FrequencyMatrix::row({FieldScalar(1), FieldScalar(2)});
  // frequencies: (2,0) -> 2 and (0,1) -> 2 coincide; (1,0) -> 1 stays
  const TrigPolynomial f = TrigPolynomial::make(
      p, {{KVec{2, 0}, Complex(1.0, 0.0)},
          {KVec{0, 1}, Complex(3.0, 0.0)},
          {KVec{1, 0}, Complex(-1.0, 0.0)}});
  CHECK(f.terms.size() == 2);
  CHECK(f.at(KVec{0, 1}) == Complex(4.0, 0.0));  // lex-smallest representative kept
  CHECK(f.at(KVec{1, 0}) == Complex(-1.0, 0.0));
}

TEST_CASE("project inverts lift exactly") {
  Rng rng(920);
  const FrequencyMatrix p = matrix_one_sqrt2();
  for (int i = 0; i < 200; ++i) {
    const TrigPolynomial f = random_polynomial(rng, p, 1 + i % 8, 10);
    const TrigPolynomial back = project(lift(f), p);
    CHECK(back.terms == f.terms);
    CHECK(back.P == p);
  }
}

TEST_CASE("project rejects mismatched dimensions") {
  const ParentSpectrum F = ParentSpectrum::make(2, {{KVec{0, 1}, Complex(1.0, 0.0)}});
  const FrequencyMatrix p1 = FrequencyMatrix::row({FieldScalar::sqrt_of(2)});
  CHECK_THROWS_AS(project(F, p1), dimension_mismatch);
}

TEST_CASE("project evaluation identities") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  const ParentSpectrum F = ParentSpectrum::make(
      2, {{KVec{1, 0}, Complex(1.0, 0.0)}, {KVec{0, 1}, Complex(2.0, 0.0)}});
  const TrigPolynomial f = project(F, p);
  CHECK(std::abs(evaluate(f, 0.0) - Complex(3.0, 0.0)) <= 1e-15);

  // e^{pi i sqrt2 / 2}; long-double oracle cos/sin(pi sqrt2 / 2)
  const ParentSpectrum single = ParentSpectrum::make(2, {{KVec{0, 1}, Complex(1.0, 0.0)}});
  const Complex v = evaluate(project(single, p), 0.25);
  CHECK(v.real() == doctest::Approx(-0.605699867078813).epsilon(1e-12));
  CHECK(v.imag() == doctest::Approx(0.795693201567481).epsilon(1e-12));
}

TEST_CASE("evaluate matches the parent on the orbit") {
  Rng rng(921);
  const FrequencyMatrix p = matrix_one_sqrt2();
  for (int i = 0; i < 100; ++i) {
    const TrigPolynomial f = random_polynomial(rng, p, 1 + i % 5, 8);
    const double x = rng.next_real(-2.0, 2.0);
    std::vector<double> y = p.transpose_times({x});
    for (auto& u : y) u = frac_mod1(u);
    CHECK(std::abs(evaluate(f, x) - evaluate_parent(lift(f), y)) <= 1e-12);
  }
  CHECK(evaluate(TrigPolynomial::make(p, {}), 0.77) == Complex(0.0, 0.0));
  const ParentSpectrum c = ParentSpectrum::make(2, {{KVec{1, 0}, Complex(1.0, 0.0)}});
  CHECK(std::abs(evaluate_parent(c, {0.5, 0.0}) - Complex(-1.0, 0.0)) <= 1e-15);
}

TEST_CASE("bohr coefficients are exact lookups with orthogonality") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  const TrigPolynomial f = TrigPolynomial::make(p, {{KVec{0, 1}, Complex(3.0, 0.0)}});
  CHECK(bohr_coefficient(f, FieldScalar::sqrt_of(2)) == Complex(3.0, 0.0));
  CHECK(bohr_coefficient(f, FieldScalar(1)) == Complex(0.0, 0.0));

  // finite-T cross-check: the competing character leaks at most
  // |c| / (2 pi |mu - lambda| T) into the average
  const TrigPolynomial g = TrigPolynomial::make(
      p, {{KVec{0, 1}, Complex(3.0, 0.0)}, {KVec{1, 0}, Complex(1.0, 0.0)}});
  const double T = 1000.0;
  const double sqrt2 = std::sqrt(2.0);
  const double u = kTwoPi * (1.0 - sqrt2) * T;
  const Complex finite_T = Complex(3.0, 0.0) + Complex(1.0, 0.0) * (std::sin(u) / u);
  CHECK(std::abs(finite_T - Complex(3.0, 0.0)) <= 1.0 / (kTwoPi * (sqrt2 - 1.0) * T));
  CHECK(std::abs(finite_T - Complex(3.0, 0.0)) <= 1.6e-3);
}

TEST_CASE("bohr mean is the constant coefficient") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  const TrigPolynomial f = TrigPolynomial::make(
      p, {{KVec{0, 0}, Complex(5.0, 0.0)}, {KVec{0, 1}, Complex(1.0, 0.0)}});
  CHECK(bohr_mean(f) == Complex(5.0, 0.0));
  const TrigPolynomial g = TrigPolynomial::make(
      p, {{KVec{1, 0}, Complex(1.0, 0.0)}, {KVec{0, 1}, Complex(1.0, 0.0)}});
  CHECK(bohr_mean(g) == Complex(0.0, 0.0));
  const auto rep = mean_matches_parent_integral(f);
  CHECK(rep.equal);
  CHECK(rep.bohr_mean == rep.parent_integral);
}

TEST_CASE("Fejer sums: weights and convergence") {
  const ParentSpectrum single = ParentSpectrum::make(2, {{KVec{1, 0}, Complex(1.0, 0.0)}});
  CHECK(std::abs(fejer_sum(single, 4, {0.0, 0.0}) - Complex(0.75, 0.0)) <= 1e-15);
  CHECK(std::abs(fejer_sum(single, 1, {0.3, 0.4})) <= 1e-15);  // N = 1 kills every k != 0

  const ParentSpectrum F = ParentSpectrum::make(
      2, {{KVec{0, 0}, Complex(0.5, 0.0)}, {KVec{1, 0}, Complex(1.0, 0.0)},
          {KVec{0, 2}, Complex(-0.5, 1.0)}});
  CHECK(std::abs(fejer_sum(F, 1, {0.9, 0.9}) - Complex(0.5, 0.0)) <= 1e-15);
  Rng rng(922);
  for (int N : {100, 1000}) {
    double bound = 0.0;
    for (const auto& [k, c] : F.coeffs) bound += std::abs(c) * (1.0 - fejer_weight(k, N));
    for (int i = 0; i < 5; ++i) {
      const std::vector<double> y{rng.next_real(), rng.next_real()};
      CHECK(std::abs(fejer_sum(F, N, y) - evaluate_parent(F, y)) <= bound + 1e-13);
    }
  }
}

TEST_CASE("Bochner-Fejer sums coincide with Fejer sums on the orbit") {
  Rng rng(923);
  const FrequencyMatrix p = matrix_one_sqrt2();
  for (int i = 0; i < 100; ++i) {
    const TrigPolynomial f = random_polynomial(rng, p, 1 + i % 6, 10);
    const int N = static_cast<int>(rng.next_int(1, 50));
    const double x = rng.next_real(-1.0, 1.0);
    std::vector<double> y = p.transpose_times({x});
    for (auto& u : y) u = frac_mod1(u);
    CHECK(std::abs(fejer_sum(lift(f), N, y) - bochner_fejer_sum(f, N, x)) <= 1e-12);
  }
  const TrigPolynomial f = random_polynomial(rng, p, 4, 6);
  CHECK(std::abs(bochner_fejer_sum(f, 1, 0.37) - bohr_mean(f)) <= 1e-15);
}

TEST_CASE("sup norm brackets") {
  const ParentSpectrum e1 = ParentSpectrum::make(2, {{KVec{1, 0}, Complex(1.0, 0.0)}});
  const Interval s1 = sup_norm(e1);
  CHECK(s1.lo == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s1.contains(1.0));

  const ParentSpectrum e12 = ParentSpectrum::make(
      2, {{KVec{1, 0}, Complex(1.0, 0.0)}, {KVec{0, 1}, Complex(1.0, 0.0)}});
  const Interval s2 = sup_norm(e12);
  CHECK(s2.lo == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s2.hi >= 2.0);

  CHECK_THROWS_AS(sup_norm(e12, 2), std::invalid_argument);  // below 2*max|k|+1
}

TEST_CASE("sampled qp sup norm approaches the parent sup") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  const TrigPolynomial f = TrigPolynomial::make(
      p, {{KVec{1, 0}, Complex(1.0, 0.0)}, {KVec{0, 1}, Complex(1.0, 0.0)}});
  const Interval s = sup_norm_qp(f, 1000000, 1e4);
  CHECK(s.lo >= 1.999);  // dense orbit: the lower bound crawls up to 2
  CHECK(s.lo <= 2.0 + 1e-12);
  CHECK(s.hi == doctest::Approx(2.0));  // l1 bound happens to be sharp here
}

TEST_CASE("qp sup-norm lower bounds grow into the certified parent bracket") {
  Rng rng(927);
  const FrequencyMatrix p = matrix_one_sqrt2();
  const TrigPolynomial f = random_polynomial(rng, p, 4, 3);
  const Interval parent = sup_norm(lift(f));
  double prev = 0.0;
  for (int T : {10, 100, 1000}) {  // fixed spacing 1/200, so the grids nest
    const Interval s = sup_norm_qp(f, 200 * T + 1, T);
    CHECK(s.lo >= prev - 1e-9);        // one-sided convergence, never overshooting
    CHECK(s.lo <= parent.hi + 1e-12);  // ||f||_inf = ||F||_inf
    prev = s.lo;
  }
  CHECK(prev >= 0.9 * parent.lo);  // the window is wide enough to come close
}

TEST_CASE("Besicovitch norms: Parseval and the even-q convolution route") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  const TrigPolynomial f = TrigPolynomial::make(
      p, {{KVec{1, 0}, Complex(1.0, 0.0)}, {KVec{0, 1}, Complex(2.0, 0.0)}});
  CHECK(besicovitch_norm(f, 2.0) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  CHECK(besicovitch_norm(f, 2.0, 0, NormRoute::Grid) ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));

  const TrigPolynomial unit = TrigPolynomial::make(p, {{KVec{0, 1}, Complex(1.0, 0.0)}});
  CHECK(besicovitch_norm(unit, 2.0) == doctest::Approx(1.0).epsilon(1e-14));

  // M(|f|^4) = mean of (5 + 4 cos)^2 = 33
  CHECK(besicovitch_norm(f, 4.0) == doctest::Approx(std::pow(33.0, 0.25)).epsilon(1e-13));
  CHECK(besicovitch_norm(f, 4.0, 0, NormRoute::Grid) ==
        doctest::Approx(std::pow(33.0, 0.25)).epsilon(1e-11));

  CHECK_THROWS_AS(besicovitch_norm(f, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(besicovitch_norm(f, 3.0, 0, NormRoute::Convolution), std::invalid_argument);
}

TEST_CASE("odd grids route through the direct transform and still integrate exactly") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  const TrigPolynomial f = TrigPolynomial::make(
      p, {{KVec{1, 0}, Complex(1.0, -1.0)}, {KVec{0, 2}, Complex(0.5, 2.0)}});
  double sum_sq = 0.0;
  for (const auto& [k, c] : f.terms) sum_sq += std::norm(c);
  // 45 is not a power of two but alias-free for |k| <= 2
  const double norm = besicovitch_norm(f, 2.0, 45, NormRoute::Grid);
  CHECK(norm * norm == doctest::Approx(sum_sq).epsilon(1e-12));
}

TEST_CASE("Parseval property on random polynomials, both routes") {
  Rng rng(924);
  const FrequencyMatrix p = matrix_one_sqrt2();
  for (int i = 0; i < 50; ++i) {
    const TrigPolynomial f = random_polynomial(rng, p, 1 + i % 6, 20);
    double sum_sq = 0.0;
    for (const auto& [k, c] : f.terms) sum_sq += std::norm(c);
    const double grid = besicovitch_norm(f, 2.0, 0, NormRoute::Grid);
    const double conv = besicovitch_norm(f, 2.0, 0, NormRoute::Convolution);
    CHECK(std::fabs(grid * grid - sum_sq) <= 1e-10);
    CHECK(std::fabs(conv * conv - sum_sq) <= 1e-12 * std::max(1.0, sum_sq));
  }
}

TEST_CASE("Wiener norm and the algebra product bound") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  const TrigPolynomial f = TrigPolynomial::make(
      p, {{KVec{1, 0}, Complex(1.0, 0.0)}, {KVec{0, 1}, Complex(2.0, 0.0)}});
  CHECK(wiener_norm(f) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(wiener_norm(TrigPolynomial::make(p, {})) == 0.0);

  Rng rng(925);
  for (int i = 0; i < 50; ++i) {
    const TrigPolynomial a = random_polynomial(rng, p, 1 + i % 4, 6);
    const TrigPolynomial b = random_polynomial(rng, p, 1 + (i + 2) % 4, 6);
    CHECK(wiener_norm(multiply(a, b)) <= wiener_norm(a) * wiener_norm(b) + 1e-12);
  }

  // lift is multiplicative: lift(f*g) = lift(f) * lift(g) exactly
  const TrigPolynomial a = random_polynomial(rng, p, 3, 5);
  const TrigPolynomial b = random_polynomial(rng, p, 3, 5);
  CHECK(lift(multiply(a, b)).coeffs == multiply(lift(a), lift(b)).coeffs);
}

TEST_CASE("Wiener inversion: constants and the geometric worked example") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  const TrigPolynomial two = TrigPolynomial::make(p, {{KVec{0, 0}, Complex(2.0, 0.0)}});
  const WienerInversion inv2 = wiener_inverse(two, 8);
  CHECK(inv2.inverse.at(KVec{0, 0}) == Complex(0.5, 0.0));
  CHECK(inv2.residual <= 1e-15);

  const TrigPolynomial f = TrigPolynomial::make(
      p, {{KVec{0, 0}, Complex(2.0, 0.0)}, {KVec{0, 1}, Complex(1.0, 0.0)}});
  const WienerInversion inv = wiener_inverse(f, 64, 1e-12);
  for (int j = 0; j <= 20; ++j) {
    const double expected = (j % 2 == 0 ? 1.0 : -1.0) * std::ldexp(1.0, -(j + 1));
    CHECK(std::abs(inv.inverse.at(KVec{0, j}) - expected) <= 1e-10);
  }
  CHECK(inv.residual <= 1e-9);

  // residual bound survives on a 10x finer verification grid
  CoeffMap prod = convolve(f.terms, inv.inverse.terms);
  prod[KVec{0, 0}] -= 1.0;
  const GridFunction fine = eval_on_grid(prod, 2, 640);
  double worst = 0.0;
  for (const auto& v : fine.values) worst = std::max(worst, std::abs(v));
  CHECK(worst <= 10.0 * 1e-12 + inv.residual);
  CHECK(worst <= 1e-9);
}

TEST_CASE("Wiener inversion refuses a vanishing parent") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  // parent 1 + e^{2 pi i y_1} vanishes at y_1 = 1/2
  const TrigPolynomial f = TrigPolynomial::make(
      p, {{KVec{0, 0}, Complex(1.0, 0.0)}, {KVec{1, 0}, Complex(1.0, 0.0)}});
  CHECK_THROWS_AS(wiener_inverse(f, 64), std::domain_error);
}

TEST_CASE("B^2 isometry is exact on the shared coefficients") {
  const FrequencyMatrix p = matrix_one_sqrt2();
  const ParentSpectrum F = ParentSpectrum::make(
      2, {{KVec{1, 0}, Complex(1.0, 0.0)}, {KVec{0, 1}, Complex(2.0, 0.0)}});
  const B2IsometryReport rep = b2_isometry_check(F, p);
  CHECK(rep.parent_sum_sq == 5.0);
  CHECK(rep.qp_sum_sq == 5.0);
  CHECK(rep.equal);

  CHECK(b2_isometry_check(ParentSpectrum::make(2, {}), p).parent_sum_sq == 0.0);

  Rng rng(926);
  const ParentSpectrum big = ParentSpectrum::make(2, random_terms(rng, 2, 50, 15));
  CHECK(b2_isometry_check(big, p).equal);
}
