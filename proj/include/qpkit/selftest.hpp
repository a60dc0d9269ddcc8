#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include "qpkit/analysis.hpp"
#include "qpkit/generators.hpp"
#include "qpkit/meyer.hpp"
#include "qpkit/qp.hpp"
#include "qpkit/torus.hpp"

namespace qpkit {

namespace detail {

inline std::string fmt_g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

class SelftestLog {
 public:
  explicit SelftestLog(std::ostream& os) : os_(os) {}

  void check(bool ok, const std::string& name, const std::string& detail) {
    os_ << (ok ? "[ok]   " : "[FAIL] ") << name << ": " << detail << "\n";
    all_ok_ &= ok;
  }
  bool all_ok() const { return all_ok_; }

 private:
  std::ostream& os_;
  bool all_ok_ = true;
};

}  // namespace detail

// Deterministic property suite behind `qpkit selftest`. Every check derives
// from a fixed seed; the report is byte-identical across runs with the same
// seed and build.
inline bool run_selftest(std::uint64_t seed, std::ostream& os) {
  detail::SelftestLog log(os);
  os << "qpkit selftest, seed " << seed << "\n";

  {  // exact field axioms
    Rng rng(seed ^ 0x1001);
    bool ok = true;
    for (int i = 0; i < 200 && ok; ++i) {
      const long m = (i % 3 == 0) ? 0 : (i % 3 == 1 ? 2 : 5);
      const FieldScalar x = random_field_scalar(rng, 6, m);
      const FieldScalar y = random_field_scalar(rng, 6, m);
      const FieldScalar z = random_field_scalar(rng, 6, m);
      ok &= (x + y) * z == x * z + y * z;
      ok &= (x * y) * z == x * (y * z);
      ok &= x.conjugate().conjugate() == x;
      ok &= (x * y).conjugate() == x.conjugate() * y.conjugate();
      if (!x.is_zero()) ok &= (x * x.inverse()) == FieldScalar(1);
    }
    log.check(ok, "field_axioms", "200 random triples over Q, Q(sqrt2), Q(sqrt5)");
  }

  {  // independence verdicts vs brute-force relation search
    Rng rng(seed ^ 0x1002);
    int checked = 0;
    bool ok = true;
    for (int i = 0; i < 120 && ok; ++i) {
      const int d = static_cast<int>(rng.next_int(1, 2));
      const int n = static_cast<int>(rng.next_int(1, 3));
      const long m = (i % 3 == 0) ? 0 : (i % 3 == 1 ? 2 : 5);
      const FrequencyMatrix p = random_matrix(rng, d, n, 3, m);
      const auto qv = q_independent(p);
      const auto zv = z_independent_mod_zd(p);
      long long bound = 10;
      if (qv.witness)
        for (long long w : *qv.witness) bound = std::max(bound, std::llabs(w));
      if (zv.witness)
        for (long long w : *zv.witness) bound = std::max(bound, std::llabs(w));
      ok &= qv.independent == !brute_force_q_relation(p, bound).has_value();
      ok &= zv.independent == !brute_force_z_relation(p, bound).has_value();
      if (qv.witness) ok &= witness_satisfies(p, *qv.witness, VerdictKind::QRank);
      if (zv.witness) ok &= witness_satisfies(p, *zv.witness, VerdictKind::ZModZd);
      ++checked;
    }
    log.check(ok, "independence_oracle", std::to_string(checked) + " random matrices agree");
  }

  {  // lift/project round trip and the Fejer identity on the orbit
    Rng rng(seed ^ 0x1003);
    const FrequencyMatrix p = matrix_one_sqrt2();
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 60 && ok; ++i) {
      const TrigPolynomial f = random_polynomial(rng, p, 1 + i % 6, 6);
      const TrigPolynomial back = project(lift(f), p);
      ok &= back.terms == f.terms;
      const int N = static_cast<int>(rng.next_int(1, 30));
      const double x = rng.next_real(-2.0, 2.0);
      std::vector<double> y = p.transpose_times({x});
      for (auto& u : y) u = frac_mod1(u);
      const double diff = std::abs(fejer_sum(lift(f), N, y) - bochner_fejer_sum(f, N, x));
      worst = std::max(worst, diff);
      ok &= diff <= 1e-12;
    }
    log.check(ok, "lift_project_fejer", "round trips exact, SS identity worst " + detail::fmt_g(worst));
  }

  {  // Parseval: grid quadrature against the coefficient sum
    Rng rng(seed ^ 0x1004);
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 40 && ok; ++i) {
      const TrigPolynomial f = random_polynomial(rng, matrix_one_sqrt2(), 1 + i % 5, 12);
      double sum_sq = 0.0;
      for (const auto& [k, c] : f.terms) sum_sq += std::norm(c);
      const double grid = besicovitch_norm(f, 2.0);
      const double conv = std::pow(detail::even_power_mean(f.terms, 2), 0.5);
      worst = std::max({worst, std::fabs(grid * grid - sum_sq), std::fabs(conv * conv - sum_sq)});
      ok &= worst <= 1e-10;
    }
    log.check(ok, "parseval", "both quadrature paths, worst " + detail::fmt_g(worst));
  }

  {  // Hausdorff-Young directions across q
    Rng rng(seed ^ 0x1005);
    bool ok = true;
    double worst_slack = 0.0;
    for (double q : {1.0, 4.0 / 3.0, 2.0, 3.0, 4.0})
      for (int i = 0; i < 20 && ok; ++i) {
        const TrigPolynomial f = random_polynomial(rng, matrix_one_sqrt2(), 1 + i % 4, 5);
        if (f.terms.empty()) continue;
        const HYReport rep = hausdorff_young_check(f, q);
        ok &= rep.holds;
        worst_slack = std::min(worst_slack, rep.slack);
      }
    log.check(ok, "hausdorff_young", "q in {1,4/3,2,3,4}, min slack " + detail::fmt_g(worst_slack));
  }

  {  // Weyl decay bound and the theta = 0 invariant of the discrete action
    Rng rng(seed ^ 0x1006);
    const FrequencyMatrix p = matrix_one_sqrt2();
    bool ok = true;
    for (int i = 0; i < 10 && ok; ++i) {
      CoeffMap coeffs;
      for (int t = 0; t < 2; ++t) {
        KVec k{rng.next_int(-5, 5), rng.next_int(-5, 5)};
        if (k == KVec{0, 0}) k[0] = 1;
        coeffs[k] += Complex(rng.next_real(-2.0, 2.0), rng.next_real(-2.0, 2.0));
      }
      const ParentSpectrum F = ParentSpectrum::make(2, coeffs);
      const TorusPoint y = TorusPoint::make({rng.next_real(), rng.next_real()});
      for (double T : {10.0, 100.0, 1000.0}) {
        double bound = 0.0;
        for (const auto& [k, c] : F.coeffs) {
          if (k == KVec{0, 0}) continue;
          bound += std::abs(c) / (kTwoPi * std::fabs(p.frequency(k)[0].to_double()) * T);
        }
        ok &= std::abs(weyl_average_continuous(F, p, y, T) - F.mean()) <= bound + 1e-12;
      }
      const ParentSpectrum character = ParentSpectrum::make(2, {{KVec{1, 0}, Complex(1.0, 0.0)}});
      const Complex expected = unit_phase(y.coords[0]);
      for (long long T : {1LL, 7LL, 100LL})
        ok &= std::abs(weyl_average_discrete(character, p, y, T) - expected) <= 1e-12;
    }
    log.check(ok, "weyl_averages", "sinc bound and Dirichlet theta=0 branch");
  }

  {  // Wiener inversion on the worked example 2 + e^{2 pi i sqrt2 x}
    const FrequencyMatrix p = matrix_one_sqrt2();
    const TrigPolynomial f = TrigPolynomial::make(
        p, {{KVec{0, 0}, Complex(2.0, 0.0)}, {KVec{0, 1}, Complex(1.0, 0.0)}});
    const WienerInversion inv = wiener_inverse(f, 64, 1e-12);
    bool ok = inv.residual <= 1e-9;
    double worst = 0.0;
    for (int j = 0; j <= 20; ++j) {
      const double expect = (j % 2 == 0 ? 1.0 : -1.0) * std::ldexp(1.0, -(j + 1));
      worst = std::max(worst, std::abs(inv.inverse.at(KVec{0, j}) - expect));
    }
    ok &= worst <= 1e-10;
    log.check(ok, "wiener_inverse", "geometric coefficients worst " + detail::fmt_g(worst) +
                                        ", residual " + detail::fmt_g(inv.residual));
  }

  {  // golden band: exact enumeration vs brute force, density, comparability
    const Window w = Window::make(FieldScalar(make_rat(-1, 2)), FieldScalar(make_rat(1, 2)));
    const BandSet small = enumerate_band(w, 30.0);
    const auto brute = enumerate_band_brute_force(w, 30.0);
    bool ok = small.points == brute;
    const BandSet band = enumerate_band(w, 400.0);
    const DensityReport density = meyer_density_check(band, 40.0, 64);
    ok &= density.min_count >= 1 && density.min_gap > 0.5;
    const ComparabilityBounds cb = golden_comparability(band);
    ok &= cb.c_low >= 0.4 && cb.c_high <= 1.91;
    const TrigPolynomial g2 = g_r_function(band, 2.0);
    ok &= discreteness_constant(g2) >= 1.0 / std::max(cb.c_high, 1.0 / cb.c_low) - 1e-12;
    log.check(ok, "meyer_band", "enumeration exact, gaps " + detail::fmt_g(density.min_gap) +
                                    ", ratios [" + detail::fmt_g(cb.c_low) + ", " +
                                    detail::fmt_g(cb.c_high) + "]");
  }

  os << (log.all_ok() ? "selftest: all checks passed\n" : "selftest: FAILURES above\n");
  return log.all_ok();
}

}  // namespace qpkit
