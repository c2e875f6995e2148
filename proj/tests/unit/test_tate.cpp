#include "../support/brute.hpp"
#include "bkd/tate.hpp"
#include "doctest.h"

using namespace bkd;

namespace {

long order(const CohomologyGroup& g) { return g.order().value().get_si(); }
long order(const FinAbGroup& g) { return g.order().value().get_si(); }

std::vector<DModule> small_finite_modules(int p, int count, std::uint64_t base) {
  std::vector<DModule> out;
  for (std::uint64_t seed = base; out.size() < static_cast<std::size_t>(count); ++seed) {
    GeneratorOptions o;
    o.p = p;
    o.rank_bound = 6;
    o.torsion_bound = 12;
    o.constraints = {Constraint::Finite};
    auto m = random_dmodule(o, seed);
    try {
      brute::FiniteModule b(m, 1500);
    } catch (const std::runtime_error&) {
      continue;
    }
    out.push_back(m);
  }
  return out;
}

}  // namespace

TEST_CASE("cyclic Tate groups of standard modules") {
  auto triv = trivial_module(3);
  CHECK(tate_cyclic(triv, Subgroup::reflection(0), 0).structure.torsion() == IntVector{2});
  auto zp = cyclic_module(3, 3, 1);
  for (long j = -3; j <= 3; ++j) CHECK(tate_cyclic(zp, Subgroup::rotation(), j).structure.torsion() == IntVector{3});
  auto zg = reflection_permutation_module(3);
  for (long j = -2; j <= 2; ++j) CHECK(tate_cyclic(zg, Subgroup::rotation(), j).structure.is_trivial());
}

TEST_CASE("delta action signs") {
  auto zp = cyclic_module(3, 3, 1);
  CHECK(delta_action_on(zp, -1).sign == 1);
  CHECK(delta_action_on(zp, 1).sign == -1);
  CHECK(delta_fixed_points(zp, -1).structure.torsion() == IntVector{3});
  CHECK(delta_fixed_points(zp, 1).structure.is_trivial());
  auto eps = cyclic_module(3, 3, -1);
  CHECK(delta_fixed_points(eps, 0).structure.is_trivial());
  CHECK(delta_fixed_points(eps, 2).structure.torsion() == IntVector{3});
  for (long j = -2; j <= 3; ++j) CHECK(is_involution(zp, delta_action_on(zp, j)));
}

TEST_CASE("dihedral cohomology of standard modules") {
  auto zp = cyclic_module(3, 3, 1);
  CHECK(cohomology_dihedral(zp, 1).structure.is_trivial());
  CHECK(cohomology_dihedral(zp, 2).structure.is_trivial());
  CHECK(tate_dihedral(zp, -1).structure.torsion() == IntVector{3});
  CHECK(order(tate_dihedral(zp, 1)) == 1);
  CHECK(order(tate_dihedral(zp, 3)) == 3);
  CHECK(order(tate_cyclic(zp, Subgroup::rotation(), 3)) == 3);
  auto free = regular_module(3, Coefficients::local(3));
  for (long j = 1; j <= 3; ++j) CHECK(cohomology_dihedral(free, j).structure.is_trivial());
  CHECK(tate_dihedral(trivial_module(3), 0).structure.torsion() == IntVector{6});
}

TEST_CASE("cochain oracle on small cases") {
  auto triv = trivial_module(3);
  for (const auto& h : subgroups(triv.group()))
    CHECK(bar_resolution_oracle(triv, h, 0) == FinAbGroup::from_cyclic_orders({0}));
  CHECK(bar_resolution_oracle(triv, Subgroup::reflection(0), 1).is_trivial());
  CHECK(bar_resolution_oracle(triv, Subgroup::reflection(0), 2).torsion() == IntVector{2});
  auto zp = cyclic_module(3, 3, 1);
  CHECK(bar_resolution_oracle(zp, Subgroup::full(), 1).is_trivial());
  CHECK(bar_resolution_oracle(zp, Subgroup::full(), 2).is_trivial());
}

TEST_CASE("Tate groups agree with element enumeration") {
  for (int p : {3, 5}) {
    for (const auto& m : small_finite_modules(p, p == 3 ? 40 : 20, 100)) {
      brute::FiniteModule b(m, 1500);
      for (const auto& h : subgroups(m.group())) {
        if (!h.is_cyclic()) continue;
        for (long j = -1; j <= 2; ++j) CHECK(order(tate_cyclic(m, h, j)) == b.tate_order(h, j));
      }
      long h1 = b.h1_dihedral();
      CHECK(order(cohomology_dihedral(m, 1)) == h1);
      CHECK(order(bar_resolution_oracle(m, Subgroup::full(), 1)) == h1);
      // H^0 of the oracle is the invariants
      CHECK(order(bar_resolution_oracle(m, Subgroup::full(), 0)) ==
            static_cast<long>(b.invariants(Subgroup::full()).size()));
    }
  }
}

TEST_CASE("Herbrand quotient of finite modules is 1") {
  for (const auto& m : small_finite_modules(3, 30, 500))
    for (const auto& h : subgroups(m.group()))
      if (h.is_cyclic()) CHECK(order(tate_cyclic(m, h, 0)) == order(tate_cyclic(m, h, 1)));
}

TEST_CASE("dihedral Tate groups have period 4") {
  for (const auto& m : small_finite_modules(3, 20, 900))
    for (long j = -2; j <= 2; ++j) CHECK(tate_dihedral(m, j).structure == tate_dihedral(m, j + 4).structure);
}
