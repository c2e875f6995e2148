#include <algorithm>
#include <set>

#include "bkd/dihedral.hpp"
#include "doctest.h"

using namespace bkd;

TEST_CASE("group axioms and defining relations") {
  for (int p : {3, 5, 7}) {
    DihedralGroup d(p);
    auto els = d.elements();
    CHECK(els.size() == static_cast<std::size_t>(2 * p));
    GroupElement t = d.tau(), s = d.sigma();
    CHECK(d.power(t, p) == d.identity());
    CHECK(d.multiply(s, s) == d.identity());
    CHECK(d.multiply(d.multiply(s, t), s) == d.inverse(t));
    for (auto a : els) {
      CHECK(d.multiply(a, d.inverse(a)) == d.identity());
      for (auto b : els)
        for (auto c : els) CHECK(d.multiply(d.multiply(a, b), c) == d.multiply(a, d.multiply(b, c)));
    }
  }
  CHECK_THROWS_AS(DihedralGroup(4), InputError);
  CHECK_THROWS_AS(DihedralGroup(2), InputError);
}

TEST_CASE("subgroup lattice") {
  CHECK(subgroups(DihedralGroup(3)).size() == 6);
  CHECK(subgroups(DihedralGroup(5)).size() == 8);
  // all reflections are conjugate: 4 classes
  DihedralGroup d(7);
  std::set<int> reflection_classes;
  for (auto g : d.elements()) reflection_classes.insert(conjugate(d, Subgroup::reflection(0), g).j);
  CHECK(reflection_classes.size() == 7);
  CHECK(subgroup_class_representatives().size() == 4);
  for (const auto& h : subgroups(d)) {
    auto els = h.elements(d);
    CHECK(static_cast<int>(els.size()) == h.order(7));
    CHECK(subgroup_index(d, h) * h.order(7) == 14);
    for (auto a : els)
      for (auto b : els) CHECK(h.contains(d, d.multiply(a, b)));
  }
}

TEST_CASE("orbits on cosets") {
  DihedralGroup d(3);
  auto sigma = Subgroup::reflection(0);
  CHECK(orbits_on_cosets(d, sigma, sigma) == std::vector<int>{1, 2});
  CHECK(orbits_on_cosets(d, Subgroup::full(), Subgroup::rotation()) == std::vector<int>{1});
  CHECK(orbits_on_cosets(d, Subgroup::rotation(), Subgroup::rotation()) == std::vector<int>{1, 1});
  CHECK(orbits_on_cosets(d, Subgroup::trivial(), sigma) == std::vector<int>{2, 2, 2});
  for (int p : {3, 5})
    for (const auto& h : subgroups(DihedralGroup(p)))
      for (const auto& c : subgroups(DihedralGroup(p))) {
        auto o = orbits_on_cosets(DihedralGroup(p), h, c);
        int total = 0;
        for (int x : o) total += x;
        CHECK(total == subgroup_index(DihedralGroup(p), h));
      }
}

TEST_CASE("group algebra identities") {
  DihedralGroup d(5);
  // N_D = N_G (1 + sigma)
  AlgebraElement one_plus_sigma{{1, d.identity()}, {1, d.sigma()}};
  auto nd = algebra_product(d, norm_element(d, Subgroup::rotation()), one_plus_sigma);
  IntMatrix t = IntMatrix::from_rows({{1}}), s = IntMatrix::from_rows({{1}});
  CHECK(algebra_matrix(nd, t, s) == algebra_matrix(norm_element(d, Subgroup::full()), t, s));
  CHECK(algebra_matrix(norm_element(d, Subgroup::reflection(0)), t, s) == IntMatrix::from_rows({{2}}));
  CHECK(algebra_matrix(one_minus(d.tau()), t, s).is_zero());
  CHECK(algebra_matrix(norm_element(d, Subgroup::full()), t, s) == IntMatrix::from_rows({{10}}));
  // (1 - tau)(1 + sigma) = (1 - tau) + sigma (1 - tau^-1) on the regular representation
  IntMatrix rt(10, 10), rs(10, 10);
  for (auto g : d.elements()) {
    rt(d.index_of(d.multiply(d.tau(), g)), d.index_of(g)) = 1;
    rs(d.index_of(d.multiply(d.sigma(), g)), d.index_of(g)) = 1;
  }
  auto lhs = algebra_product(d, one_minus(d.tau()), one_plus_sigma);
  auto rhs = one_minus(d.tau());
  for (auto& term : algebra_product(d, {{1, d.sigma()}}, one_minus(d.inverse(d.tau())))) rhs.push_back(term);
  CHECK(algebra_matrix(lhs, rt, rs) == algebra_matrix(rhs, rt, rs));
}
