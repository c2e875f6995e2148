#include "bkd/regconst.hpp"
#include "doctest.h"

using namespace bkd;

namespace {

PairedLattice orthonormal(const DModule& m) { return PairedLattice(m, RatMatrix(IntMatrix::identity(m.generators()))); }

// Ind from <sigma> to D of the sign character, on the cosets tau^i <sigma>
DModule induced_sign(int p) {
  IntMatrix t(p, p), s(p, p);
  for (int i = 0; i < p; ++i) {
    t((i + 1) % p, i) = 1;
    s((p - i) % p, i) = -1;
  }
  return DModule(p, {}, IntMatrix(p, 0), t, s);
}

}  // namespace

TEST_CASE("rational multiplicities") {
  for (int p : {3, 5, 7}) {
    CHECK(rational_multiplicities(regular_module(p)) == RatMultiplicities{1, 1, 2});
    CHECK(rational_multiplicities(reflection_permutation_module(p)) == RatMultiplicities{1, 0, 1});
    CHECK(rational_multiplicities(induced_sign(p)) == RatMultiplicities{0, 1, 1});
    CHECK(rational_multiplicities(trivial_module(p)) == RatMultiplicities{1, 0, 0});
    CHECK(rational_multiplicities(sign_module(p)) == RatMultiplicities{0, 1, 0});
    CHECK(rational_multiplicities(omega_module(p)) == RatMultiplicities{0, 0, 1});
  }
}

TEST_CASE("regulator constants of the standard lattices") {
  for (int p : {3, 5, 7}) {
    CHECK(regulator_constant(orthonormal(trivial_module(p))) == Rat(1, p));
    CHECK(regulator_constant(orthonormal(sign_module(p))) == Rat(p));
    CHECK(regulator_constant(orthonormal(regular_module(p))) == Rat(1));
  }
}

TEST_CASE("regulator constant index identity on the standard lattices") {
  for (int p : {3, 5}) {
    auto t = regulator_index_identity(orthonormal(trivial_module(p)));
    CHECK(t.exponent == 1);
    CHECK(t.index == ExtNat(Int(1)));
    CHECK(t.holds);
    auto e = regulator_index_identity(orthonormal(sign_module(p)));
    CHECK(e.exponent == -1);
    CHECK(e.holds);
    auto r = regulator_index_identity(orthonormal(regular_module(p)));
    CHECK(r.exponent == -2);
    CHECK(r.index == ExtNat(Int(p)));
    CHECK(r.holds);
  }
}

TEST_CASE("scaled fixed determinants") {
  auto reg = orthonormal(regular_module(3));
  CHECK(scaled_fixed_determinant(reg, Subgroup::full()) == 1);
  CHECK(scaled_fixed_determinant(reg, Subgroup::rotation()) == 1);
  CHECK(scaled_fixed_determinant(reg, Subgroup::reflection(0)) == 1);
  CHECK(scaled_fixed_determinant(orthonormal(sign_module(3)), Subgroup::full()) == 1);
}

TEST_CASE("paired lattices are validated") {
  auto triv = trivial_module(3);
  CHECK_THROWS_AS(PairedLattice(triv, RatMatrix(IntMatrix::from_rows({{0}}))), InputError);
  auto reg = regular_module(3);
  RatMatrix g(IntMatrix::identity(6));
  g(0, 1) = 1;
  CHECK_THROWS_AS(PairedLattice(reg, g), InputError);  // not symmetric
  g(1, 0) = 1;
  CHECK_THROWS_AS(PairedLattice(reg, g), InputError);  // symmetric but not invariant
  CHECK_THROWS_AS(PairedLattice(cyclic_module(3, 3, 1), RatMatrix(IntMatrix::identity(1))), InputError);
}

TEST_CASE("averaged pairings are invariant and independent of the choice") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GeneratorOptions o;
    o.p = seed % 2 ? 5 : 3;
    o.rank_bound = 8;
    o.constraints = {Constraint::TorsionFree};
    auto m = random_dmodule(o, seed);
    auto a = invariant_pairing_from_seed(m, seed * 2 + 1);
    auto b = invariant_pairing_from_seed(m, seed * 2 + 2);
    CHECK(regulator_constant(a) == regulator_constant(b));
    CHECK(regulator_index_identity(a).holds);
    for (auto g : m.group().elements()) {
      RatMatrix gm(m.matrix_of(g));
      CHECK(gm.transpose() * a.gram() * gm == a.gram());
    }
  }
  auto zero = DModule(3, {}, IntMatrix(0, 0), IntMatrix(0, 0), IntMatrix(0, 0));
  CHECK(average_pairing(zero, RatMatrix(0, 0)).rows() == 0);
}

TEST_CASE("lambda indices") {
  CHECK(lambda_of(regular_module(3), Subgroup::full()) == ExtNat(Int(1)));
  // Z x + Z/3 t with tau x = x + t and sigma = diag(1, -1): M^G = <3x, t>
  DModule m(3, {}, IntMatrix::from_rows({{0}, {3}}), IntMatrix::from_rows({{1, 0}, {1, 1}}),
            IntMatrix::from_rows({{1, 0}, {0, -1}}));
  CHECK(lambda_of(m, Subgroup::rotation()) == ExtNat(Int(3)));
  // 2-primary analogue: Z x + Z/2 t with sigma x = x + t
  DModule n(3, {}, IntMatrix::from_rows({{0}, {2}}), IntMatrix::identity(2), IntMatrix::from_rows({{1, 0}, {1, 1}}));
  CHECK(lambda_of(n, Subgroup::reflection(0)) == ExtNat(Int(2)));
  CHECK(lambda_of(n, Subgroup::rotation()) == ExtNat(Int(1)));
}
