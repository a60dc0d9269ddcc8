#include <doctest.h>

#include "qpkit/generators.hpp"
#include "qpkit/independence.hpp"

using namespace qpkit;

namespace {

FrequencyMatrix rationals(std::vector<Rat> row) {
  std::vector<FieldScalar> e;
  for (auto& r : row) e.push_back(FieldScalar(std::move(r)));
  return FrequencyMatrix::row(std::move(e));
}

}  // namespace

TEST_CASE("Q-independence of (1, sqrt2)") {
  const auto v = q_independent(matrix_one_sqrt2());
  CHECK(v.independent);
  CHECK_FALSE(v.witness.has_value());
}

TEST_CASE("Q-dependence of (1, 2) with witness (2, -1)") {
  const auto v = q_independent(rationals({make_rat(1), make_rat(2)}));
  REQUIRE_FALSE(v.independent);
  REQUIRE(v.witness.has_value());
  CHECK(*v.witness == std::vector<long long>{2, -1});
}

TEST_CASE("Q-independence of the d=2 example columns (1,0), (sqrt2,1)") {
  const FrequencyMatrix p(2, 2,
                          {FieldScalar(1), FieldScalar::sqrt_of(2),
                           FieldScalar(0), FieldScalar(1)});
  CHECK(q_independent(p).independent);
  CHECK_FALSE(brute_force_q_relation(p, 6).has_value());
}

TEST_CASE("Z-dependence of (1/2) with witness (2)") {
  const auto v = z_independent_mod_zd(rationals({make_rat(1, 2)}));
  REQUIRE_FALSE(v.independent);
  CHECK(*v.witness == std::vector<long long>{2});
}

TEST_CASE("Z-independence of (sqrt2 / 2)") {
  const FrequencyMatrix p = FrequencyMatrix::row({FieldScalar(make_rat(0), make_rat(1, 2), 2)});
  CHECK(z_independent_mod_zd(p).independent);
}

TEST_CASE("Z-dependence of (1, sqrt2) with witness (1, 0)") {
  const auto v = z_independent_mod_zd(matrix_one_sqrt2());
  REQUIRE_FALSE(v.independent);
  CHECK(*v.witness == std::vector<long long>{1, 0});
  // brute-force confirmation over |a_j| <= 3
  const auto found = brute_force_z_relation(matrix_one_sqrt2(), 3);
  REQUIRE(found.has_value());
  CHECK(witness_satisfies(matrix_one_sqrt2(), *found, VerdictKind::ZModZd));
}

TEST_CASE("density criterion") {
  CHECK(module_dense_in_R(matrix_one_sqrt2()).independent);

  const auto v23 = module_dense_in_R(rationals({make_rat(2), make_rat(3)}));
  REQUIRE_FALSE(v23.independent);
  CHECK(*v23.witness == std::vector<long long>{2, 3});  // p_j = (p_1/2) * w_j, group = Z
  CHECK(witness_satisfies(rationals({make_rat(2), make_rat(3)}), *v23.witness,
                          VerdictKind::Density));

  const FrequencyMatrix s2{1, 2, {FieldScalar::sqrt_of(2),
                                  FieldScalar(make_rat(0), make_rat(2), 2)}};
  const auto vs = module_dense_in_R(s2);
  REQUIRE_FALSE(vs.independent);
  CHECK(*vs.witness == std::vector<long long>{1, 2});  // group = sqrt2 * Z

  const FrequencyMatrix two_rows(2, 1, {FieldScalar(1), FieldScalar(1)});
  CHECK_THROWS_AS(module_dense_in_R(two_rows), std::invalid_argument);
  CHECK_THROWS_AS(module_dense_in_R(rationals({make_rat(0), make_rat(1)})),
                  std::invalid_argument);
}

TEST_CASE("ergodicity report bundles both actions") {
  const auto rep = ergodicity_report(matrix_one_sqrt2());
  CHECK(rep.r_action.independent);
  CHECK_FALSE(rep.z_action.independent);
  REQUIRE(rep.invariant_character.has_value());
  CHECK(*rep.invariant_character == std::vector<long long>{1, 0});

  const FrequencyMatrix half_sqrt2 =
      FrequencyMatrix::row({FieldScalar(make_rat(0), make_rat(1, 2), 2)});
  const auto rep2 = ergodicity_report(half_sqrt2);
  CHECK(rep2.r_action.independent);
  CHECK(rep2.z_action.independent);
  CHECK_FALSE(rep2.invariant_character.has_value());

  const auto rep3 = ergodicity_report(rationals({make_rat(1), make_rat(2)}));
  CHECK_FALSE(rep3.r_action.independent);
  CHECK_FALSE(rep3.z_action.independent);
}

TEST_CASE("verdicts agree with brute-force search on random small matrices") {
  Rng rng(906);
  for (int i = 0; i < 200; ++i) {
    const int d = static_cast<int>(rng.next_int(1, 3));
    const int n = static_cast<int>(rng.next_int(1, 3));
    const long m = i % 3 == 0 ? 0 : (i % 3 == 1 ? 2 : 5);
    const FrequencyMatrix p = random_matrix(rng, d, n, 4, m);

    const auto qv = q_independent(p);
    const auto zv = z_independent_mod_zd(p);
    if (qv.witness) CHECK(witness_satisfies(p, *qv.witness, VerdictKind::QRank));
    if (zv.witness) CHECK(witness_satisfies(p, *zv.witness, VerdictKind::ZModZd));

    long long bound = 10;
    if (qv.witness)
      for (long long w : *qv.witness) bound = std::max(bound, std::llabs(w));
    if (zv.witness)
      for (long long w : *zv.witness) bound = std::max(bound, std::llabs(w));
    if (bound <= 24) {  // keep the exponential search affordable
      CHECK(qv.independent == !brute_force_q_relation(p, bound).has_value());
      CHECK(zv.independent == !brute_force_z_relation(p, bound).has_value());
    } else {
      CHECK_FALSE((brute_force_q_relation(p, 10).has_value() && qv.independent));
      CHECK_FALSE((brute_force_z_relation(p, 10).has_value() && zv.independent));
    }
  }
}

TEST_CASE("witness choice is deterministic") {
  const FrequencyMatrix p = rationals({make_rat(1), make_rat(2), make_rat(3)});
  const auto a = q_independent(p);
  const auto b = q_independent(p);
  REQUIRE(a.witness.has_value());
  CHECK(*a.witness == *b.witness);
}

TEST_CASE("purely rational matrices never have a Z-independent action") {
  Rng rng(907);
  for (int i = 0; i < 50; ++i) {
    const int d = static_cast<int>(rng.next_int(1, 3));
    const int n = static_cast<int>(rng.next_int(1, 4));
    const FrequencyMatrix p = random_matrix(rng, d, n, 5, 0);
    const auto zv = z_independent_mod_zd(p);
    CHECK_FALSE(zv.independent);
    CHECK(witness_satisfies(p, *zv.witness, VerdictKind::ZModZd));
  }
}
