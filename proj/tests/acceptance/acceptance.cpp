// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
//   acceptance [--witness-dir DIR]

#include <cctype>
#include <chrono>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "bkd/commands.hpp"
#include "brute.hpp"

using namespace bkd;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
};

std::string witness_dir;

// True when some value in s is larger than 1, i.e. the instance exercised
// more than the trivial group on that side. Values are the whole string or
// the numbers following '=' in "key=value,..." forms.
bool nontrivial(const std::string& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != 0 && s[i - 1] != '=') continue;
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i && Int(s.substr(i, j - i), 10) > 1) return true;
  }
  return false;
}

struct Tally {
  long pass = 0, fail = 0, skipped = 0, nontrivial = 0;
};

// Per (lemma, p) tallies of a harness run.
std::map<std::pair<std::string, int>, Tally> tally(const HarnessResult& r) {
  std::map<std::pair<std::string, int>, Tally> out;
  for (const Json& line : r.lines) {
    Tally& t = out[{line["lemma"].get<std::string>(), line["p"].get<int>()}];
    std::string status = line["status"].get<std::string>();
    if (status == "pass") {
      ++t.pass;
      if (line.contains("lhs") && nontrivial(line["lhs"].get<std::string>())) ++t.nontrivial;
    } else if (status == "skip") {
      ++t.skipped;
    } else {
      ++t.fail;
    }
  }
  return out;
}

HarnessResult suite(std::vector<int> primes, long trials, std::vector<std::string> lemmas, std::uint64_t seed) {
  HarnessOptions o;
  o.primes = std::move(primes);
  o.trials = trials;
  o.lemmas = std::move(lemmas);
  o.seed = seed;
  o.witness_dir = witness_dir;
  return run_lemma_suite(o);
}

// 1. Dihedral cohomology, the cochain oracle and cyclic Tate groups agree,
// and all three agree with element enumeration where the module is small.
Outcome oracle_equivalence() {
  GeneratorOptions g;
  g.p = 3;
  g.rank_bound = 6;
  g.torsion_bound = 9;
  g.constraints = {Constraint::Finite};
  long agreed = 0, mismatches = 0, oversized = 0, enumerated = 0, nontriv = 0;
  for (std::uint64_t seed = 0; agreed < 250 && seed < 5000; ++seed) {
    DModule m = random_dmodule(g, seed);
    LemmaReport r;
    try {
      r = verify_cohomology_oracle(m);
    } catch (const SizeBoundExceeded&) {
      ++oversized;
      continue;
    }
    if (!r.pass) {
      ++mismatches;
      continue;
    }
    ++agreed;
    Int h1 = cohomology_dihedral(m, 1).structure.order().value();
    Int h2 = cohomology_dihedral(m, 2).structure.order().value();
    if (h1 > 1 || h2 > 1) ++nontriv;
    try {
      brute::FiniteModule b(m, 729);
      ++enumerated;
      if (Int(b.h1_dihedral()) != h1) ++mismatches;
      for (const Subgroup& h : subgroups(m.group())) {
        if (!h.is_cyclic()) continue;
        for (long j : {-1L, 0L, 1L, 2L})
          if (Int(b.tate_order(h, j)) != tate_cyclic(m, h, j).structure.order().value()) ++mismatches;
      }
    } catch (const std::runtime_error&) {
      // larger than the enumeration bound; covered by the cochain oracle only
    }
  }
  std::ostringstream s;
  s << agreed << " modules at p=3 (" << nontriv << " with nontrivial H^1 or H^2), " << mismatches << " mismatches, "
    << enumerated << " also checked by enumeration, " << oversized << " over the oracle size bound";
  return {agreed >= 200 && mismatches == 0 && enumerated >= 100, s.str()};
}

// 2. |H^j(D)| = |H^{j+2}(G)| / |H^{j+2}(D)| for j = -2..2.
Outcome tate_order_ratio() {
  auto t = tally(suite({3, 5}, 500, {"tate-order-ratio"}, 2));
  bool ok = true;
  std::ostringstream s;
  for (int p : {3, 5}) {
    const Tally& x = t[{"tate-order-ratio", p}];
    // five degrees per module
    ok = ok && x.fail == 0 && x.pass / 5 >= 500;
    s << "p=" << p << ": " << x.pass / 5 << " modules x 5 degrees, " << x.fail << " failures, " << x.nontrivial
      << " nontrivial; ";
  }
  return {ok, s.str()};
}

// 3. The constrained lemma suites.
Outcome lemma_suites() {
  std::vector<std::string> ids{"fixed-point-sequence", "cohomology-indices", "augmentation-fixed",
                               "coprime-index",        "unit-index-lambda",  "index"};
  auto t = tally(suite({3, 5}, 300, ids, 3));
  bool ok = true;
  long failures = 0;
  std::ostringstream s;
  for (const std::string& id : ids) {
    long pass = 0, nontriv = 0;
    for (int p : {3, 5}) {
      const Tally& x = t[{id, p}];
      ok = ok && x.fail == 0 && x.pass >= 300;
      failures += x.fail;
      pass += x.pass;
      nontriv += x.nontrivial;
    }
    // the sides of coprime-index are 1 by statement
    if (id != "coprime-index") ok = ok && nontriv > 0;
    s << id << " " << pass << " (" << nontriv << " nontrivial); ";
  }
  s << failures << " failures";
  if (failures && !witness_dir.empty()) s << ", witnesses in " << witness_dir;
  return {ok, s.str()};
}

PairedLattice standard_lattice(const DModule& m) {
  return PairedLattice(m, RatMatrix(IntMatrix::identity(m.generators())));
}

// 4. Regulator constants of the standard lattices, the identity
// C p^e idx^2 = 1 and independence of the pairing.
Outcome regulator_constants() {
  bool ok = true;
  for (int p : {3, 5}) {
    ok = ok && regulator_constant(standard_lattice(trivial_module(p))) == Rat(1, p);
    ok = ok && regulator_constant(standard_lattice(sign_module(p))) == Rat(p);
    ok = ok && regulator_constant(standard_lattice(regular_module(p))) == Rat(1);
  }
  auto t = tally(suite({3, 5}, 300, {"regulator-constant", "pairing-independence"}, 4));
  std::ostringstream s;
  s << "C = 1/p, p, 1 at p=3,5: " << (ok ? "exact" : "WRONG") << "; ";
  for (const std::string& id : {std::string("regulator-constant"), std::string("pairing-independence")}) {
    long pass = 0, fail = 0;
    for (int p : {3, 5}) {
      const Tally& x = t[{id, p}];
      ok = ok && x.fail == 0 && x.pass >= 300;
      pass += x.pass;
      fail += x.fail;
    }
    s << id << " " << pass << " pass, " << fail << " fail; ";
  }
  return {ok, s.str()};
}

// 5. Local factors cancel on the relation at every unramified finite place.
Outcome relation_triviality() {
  Rng rng(5);
  const std::vector<long> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  const std::vector<RelationVector> controls{{1, 0, 0, 0}, {1, -1, 0, 0}, {0, 1, -1, 0}, {1, -2, -1, 1}};
  long configs = 0, nonunit = 0, control_hits = 0;
  std::map<int, long> per_p;
  while (configs < 500) {
    int p = std::vector<int>{3, 5, 7}[rng.uniform(0, 2)];
    long ell = primes[rng.uniform(0, static_cast<long>(primes.size()) - 1)];
    if (ell == p) continue;
    DihedralGroup d(p);
    PlaceData v;
    v.kind = PlaceKind::Finite;
    v.ell = ell;
    v.f = rng.uniform(1, 3);
    long pick = rng.uniform(0, p + 1);  // trivial, p reflections, rotation
    v.decomposition = pick == 0   ? Subgroup::trivial()
                      : pick <= p ? Subgroup::reflection(static_cast<int>(pick - 1))
                                  : Subgroup::rotation();
    long m = rng.uniform(2, 9);
    ++configs;
    ++per_p[p];
    if (relation_product(d, v, m, RelationVector::canonical()) != 1) ++nonunit;
    if (full_relation_product(d, v, m, RelationVector::canonical()) != 1) ++nonunit;
    for (const RelationVector& c : controls)
      if (relation_product(d, v, m, c) != 1 || full_relation_product(d, v, m, c) != 1) ++control_hits;
  }
  std::ostringstream s;
  s << configs << " places (p=3: " << per_p[3] << ", p=5: " << per_p[5] << ", p=7: " << per_p[7] << "), " << nonunit
    << " relation products != 1, " << control_hits << " control products != 1";
  return {nonunit == 0 && control_hits > 0, s.str()};
}

// 6. Exhaustive archimedean configurations with at most four places of k.
Outcome sign_rank_identities() {
  long configs = 0, sign_fail = 0, pairing_fail = 0;
  for (int p : {3, 5}) {
    DihedralGroup d(p);
    std::vector<PlaceData> kinds;
    PlaceData c;
    c.kind = PlaceKind::Complex;
    kinds.push_back(c);
    PlaceData r;
    r.kind = PlaceKind::Real;
    kinds.push_back(r);
    for (int j = 0; j < p; ++j) {
      r.decomposition = Subgroup::reflection(j);
      kinds.push_back(r);
    }
    // every sequence of 1..4 place types
    std::function<void(std::vector<PlaceData>&)> visit = [&](std::vector<PlaceData>& places) {
      if (!places.empty()) {
        ++configs;
        for (long m = 1; m <= 8; ++m) {
          SignatureReport sig = signatures(d, places, m);
          if (!check_sign_cancellation(sig, RelationVector::canonical())) ++sign_fail;
          if (m >= 2 && higher_dirichlet_decomposition(d, places, m).pairing_with_relation_character() !=
                            -2 * alpha_from_signatures(sig))
            ++pairing_fail;
        }
      }
      if (places.size() == 4) return;
      for (const PlaceData& k : kinds) {
        places.push_back(k);
        visit(places);
        places.pop_back();
      }
    };
    std::vector<PlaceData> start;
    visit(start);
  }
  std::ostringstream s;
  s << configs << " configurations at p=3,5 and m=1..8: " << sign_fail << " sign failures, " << pairing_fail
    << " pairing failures (m >= 2)";
  return {sign_fail == 0 && pairing_fail == 0, s.str()};
}

// 7. The S3 bundle computed by the PARI script passes every sub-check.
Outcome s3_bundle() {
  std::ifstream in(std::string(BKD_DATA_DIR) + "/bundle_s3.json");
  std::ostringstream text;
  text << in.rdbuf();
  FieldInvariantBundle b = bundle_from_json(parse_json(text.str(), "bundle_s3.json"));
  CheckReport r = check_bundle(b, parse_decimal("1e-6"));
  std::ostringstream s;
  long passed = 0;
  for (const SubCheck& c : r.checks) {
    if (c.verdict == Verdict::Pass)
      ++passed;
    else
      s << c.name << " " << verdict_name(c.verdict) << "; ";
  }
  const std::vector<std::string> required{"w-identities", "conjugate-fields", "ell-parts", "u-p-power", "regulator"};
  bool ok = r.overall() == Verdict::Pass;
  for (const std::string& name : required) {
    bool found = false;
    for (const SubCheck& c : r.checks) found = found || (c.name == name && c.verdict == Verdict::Pass);
    ok = ok && found;
  }
  s << passed << "/" << r.checks.size() << " sub-checks pass at tolerance 1e-6, u = " << r.u.get_str()
    << ", alpha = " << r.alpha;
  return {ok, s.str()};
}

// 8. Reports depend only on the options, not on scheduling.
Outcome determinism() {
  HarnessOptions o;
  o.primes = {3, 5};
  o.trials = 20;
  o.seed = 42;
  o.threads = 1;
  std::string a = cmd_verify_lemmas(o, Format::Json).out;
  std::string b = cmd_verify_lemmas(o, Format::Json).out;
  o.threads = 4;
  std::string c = cmd_verify_lemmas(o, Format::Json).out;
  std::ostringstream s;
  s << a.size() << " bytes of reports for --seed 42; repeat " << (a == b ? "identical" : "DIFFERS") << ", 4 threads "
    << (a == c ? "identical" : "DIFFERS");
  return {!a.empty() && a == b && a == c, s.str()};
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--witness-dir") == 0) witness_dir = argv[i + 1];

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"cohomology oracle equivalence", oracle_equivalence},
      {"Tate order ratio", tate_order_ratio},
      {"constrained lemma suites", lemma_suites},
      {"regulator constants", regulator_constants},
      {"relation triviality", relation_triviality},
      {"sign and rank identities", sign_rank_identities},
      {"S3 field bundle", s3_bundle},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.summary << " ["
              << static_cast<long>(secs * 10) / 10.0 << "s]" << std::endl;
    if (!o.pass) ++failed;
  }
  return failed ? 1 : 0;
}
