#include <map>
#include <set>

#include "bkd/harness.hpp"
#include "bkd/lemmas.hpp"
#include "doctest.h"

using namespace bkd;

namespace {

using Elem = std::vector<long>;

// Orders for the index lemma by listing every element of B = Z^n / diag(d).
struct IndexCounts {
  long b_over_c, fb_over_fc, ker_over_kc;
};

IndexCounts enumerate_index(const IndexInstance& x) {
  std::size_t n = x.relations.rows(), n2 = x.target_relations.rows();
  Elem d(n), e(n2);
  for (std::size_t i = 0; i < n; ++i) d[i] = x.relations(i, i).get_si();
  for (std::size_t i = 0; i < n2; ++i) e[i] = x.target_relations(i, i).get_si();
  auto mod = [](long a, long m) { return ((a % m) + m) % m; };
  std::vector<Elem> all{Elem(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Elem> next;
    for (const Elem& a : all)
      for (long v = 0; v < d[i]; ++v) {
        Elem b = a;
        b[i] = v;
        next.push_back(b);
      }
    all = next;
  }
  // C: all combinations of the generators
  std::set<Elem> c{Elem(n, 0)};
  bool grew = true;
  while (grew) {
    grew = false;
    for (Elem a : std::set<Elem>(c))
      for (std::size_t g = 0; g < x.c_gens.cols(); ++g) {
        Elem b(n);
        for (std::size_t i = 0; i < n; ++i) b[i] = mod(a[i] + x.c_gens(i, g).get_si(), d[i]);
        grew = c.insert(b).second || grew;
      }
  }
  auto apply = [&](const Elem& a) {
    Elem y(n2, 0);
    for (std::size_t r = 0; r < n2; ++r) {
      long s = 0;
      for (std::size_t k = 0; k < n; ++k) s += x.f(r, k).get_si() * a[k];
      y[r] = mod(s, e[r]);
    }
    return y;
  };
  std::set<Elem> fb, fc;
  long ker = 0, ker_c = 0;
  for (const Elem& a : all) {
    Elem y = apply(a);
    fb.insert(y);
    if (c.count(a)) fc.insert(y);
    if (y == Elem(n2, 0)) {
      ++ker;
      if (c.count(a)) ++ker_c;
    }
  }
  return {static_cast<long>(all.size() / c.size()), static_cast<long>(fb.size() / fc.size()), ker / ker_c};
}

long detail(const LemmaReport& r, const std::string& key) {
  for (const auto& [k, v] : r.details)
    if (k == key) return std::stol(v);
  FAIL("missing detail " << key);
  return 0;
}

DModule constrained(int p, Coefficients ring, std::vector<Constraint> cs, std::uint64_t seed) {
  GeneratorOptions o;
  o.p = p;
  o.ring = std::move(ring);
  o.rank_bound = 2 * p + 4;
  o.constraints = std::move(cs);
  return random_dmodule(o, seed);
}

}  // namespace

TEST_CASE("index lemma worked example") {
  IntMatrix b = IntMatrix::from_rows({{4}});
  auto r = verify_index_lemma(b, IntMatrix::from_rows({{2}}), IntMatrix::from_rows({{2}}), b);
  CHECK(r.pass);
  CHECK(r.lhs == "2");
  // f(B) = {0, 2}, f(C) = 0 and ker f = C
  CHECK(detail(r, "(f(B):f(C))") == 2);
  CHECK(detail(r, "(ker f:ker f cap C)") == 1);
  auto id = verify_index_lemma(b, IntMatrix::from_rows({{2}}), IntMatrix::identity(1), b);
  CHECK(id.pass);
  CHECK(id.lhs == "2");
  // x -> x from Z/4 to Z/3 is not well defined
  CHECK_THROWS_AS(verify_index_lemma(b, IntMatrix(1, 0), IntMatrix::identity(1), IntMatrix::from_rows({{3}})),
                  InputError);
}

TEST_CASE("index lemma sides agree with enumeration") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    IndexInstance x = random_index_instance(seed);
    auto r = verify_index_lemma(x.relations, x.c_gens, x.f, x.target_relations);
    auto e = enumerate_index(x);
    CHECK(r.pass);
    CHECK(std::stol(r.lhs) == e.b_over_c);
    CHECK(detail(r, "(f(B):f(C))") == e.fb_over_fc);
    CHECK(detail(r, "(ker f:ker f cap C)") == e.ker_over_kc);
  }
}

TEST_CASE("tate order ratio on the trivial module") {
  auto zp = cyclic_module(3, 3, 1, Coefficients::local(3));
  auto r = verify_tate_order_ratio(zp, 1);
  CHECK(r.pass);
  CHECK(r.lhs == "1");
  for (long j = -2; j <= 2; ++j) CHECK(verify_tate_order_ratio(zp, j).pass);
}

TEST_CASE("fixed point sequence examples") {
  auto zp = cyclic_module(3, 3, 1, Coefficients::local(3));
  auto r = verify_fixed_point_sequence(zp);
  CHECK(r.pass);
  CHECK(r.lhs == "ker=3,coker=1");
  auto reg = quotient(regular_module(3, Coefficients::local(3)), regular_module(3).whole().scaled(3));
  CHECK(verify_fixed_point_sequence(reg).pass);
  CHECK_THROWS_AS(verify_fixed_point_sequence(trivial_module(3, Coefficients::local(3))), InputError);
}

TEST_CASE("cohomology index formulas on standard modules") {
  for (int p : {3, 5}) {
    auto triv = trivial_module(p, Coefficients::local(p));
    CHECK(verify_cohomology_indices(triv).pass);
    CHECK(verify_augmentation_fixed(triv).pass);
    auto free = regular_module(p, Coefficients::local(p));
    CHECK(verify_cohomology_indices(free).pass);
    CHECK(verify_augmentation_fixed(free).pass);
  }
  // Z_(3)[G]/(N_G) + G-trivial Z/3
  auto zg = reflection_permutation_module(3, Coefficients::local(3));
  auto u =
      direct_sum(quotient(zg, norm_image(zg, Subgroup::rotation())), cyclic_module(3, 3, 1, Coefficients::local(3)));
  CHECK(verify_augmentation_fixed(u).pass);
  CHECK(verify_cohomology_indices(u).pass);
}

TEST_CASE("torsion hypothesis is enforced unless exploring") {
  // (Z/3)^2 with tau acting by a transvection
  DModule bad(3, Coefficients::local(3), IntMatrix::from_rows({{3, 0}, {0, 3}}), IntMatrix::from_rows({{1, 0}, {1, 1}}),
              IntMatrix::from_rows({{1, 0}, {0, -1}}));
  CHECK_THROWS_AS(verify_cohomology_indices(bad), InputError);
  CHECK_NOTHROW(verify_cohomology_indices(bad, false));
  CHECK_THROWS_AS(verify_augmentation_fixed(bad), InputError);
}

TEST_CASE("away from p and 2 the quintet index is trivial") {
  auto free = regular_module(3, Coefficients::local(5));
  CHECK(verify_coprime_index(free).pass);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(verify_coprime_index(constrained(3, Coefficients::local(5), {Constraint::Finite}, seed)).pass);
    CHECK(verify_coprime_index(constrained(5, Coefficients::local(3), {}, seed)).pass);
  }
  CHECK_THROWS_AS(verify_coprime_index(regular_module(3, Coefficients::local(3))), InputError);
}

TEST_CASE("u_m examples") {
  CHECK(compute_u_m(regular_module(3)).u == 3);
  CHECK(compute_u_m(regular_module(5)).u == 5);
  CHECK(compute_u_m(trivial_module(3)).u == 1);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto h = constrained(3, {}, {Constraint::TorsionFree}, seed);
    UmResult r = compute_u_m(h);
    REQUIRE(r.quintet_index.is_finite());
    CHECK(r.u == Rat(r.quintet_index.value()));
    CHECK(verify_u_m(h, seed).pass);
  }
}

TEST_CASE("regulator constant verifiers") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto m = constrained(3, {}, {Constraint::TorsionFree}, seed);
    CHECK(verify_regulator_index(invariant_pairing_from_seed(m, seed)).pass);
    CHECK(verify_pairing_independence(m, seed, seed + 100).pass);
    CHECK(verify_unit_index_lambda(m).pass);
    CHECK(verify_lambda_2part(m).pass);
  }
}

TEST_CASE("class group order consistency") {
  QuintetOrders ones{1, 1, 1, 1};
  CHECK(verify_p_part_consistency(3, ones, Rat(1), 0).pass);
  CHECK(verify_p_part_consistency(3, ones, Rat(9), 2).pass);
  CHECK(verify_p_part_consistency(3, QuintetOrders{3, 3, 1, 1}, Rat(1), 0).pass);
  CHECK_FALSE(verify_p_part_consistency(3, QuintetOrders{9, 3, 1, 1}, Rat(1), 0).pass);
  CHECK(verify_ell_part_consistency(7, ones).pass);
  CHECK(verify_ell_part_consistency(7, QuintetOrders{49, 49, 1, 1}).pass);
  auto bad = verify_ell_part_consistency(7, QuintetOrders{7, 1, 1, 1});
  CHECK_FALSE(bad.pass);
  CHECK(bad.lhs != bad.rhs);
}
