#include <fstream>
#include <sstream>

#include "bkd/commands.hpp"
#include "doctest.h"

using namespace bkd;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(BKD_DATA_DIR) + "/" + name);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json load(const std::string& name) { return parse_json(slurp(name), name); }

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("decimal parsing is exact") {
  CHECK(parse_decimal("0.25") == Rat(1, 4));
  CHECK(parse_decimal("1e-6") == Rat(1, 1000000));
  CHECK(parse_decimal("-012.5") == Rat(-25, 2));
  CHECK(parse_decimal("3E2") == Rat(300));
  CHECK_THROWS_AS(parse_decimal("1.2.3"), InputError);
  CHECK_THROWS_AS(parse_decimal(""), InputError);
  CHECK(rat_from_json(Json("2/6"), "x") == Rat(1, 3));
  CHECK(rat_from_json(Json(7), "x") == Rat(7));
}

TEST_CASE("large integers round-trip as strings") {
  Int big("123456789012345678901234567890", 10);
  Json j = int_to_json(big);
  CHECK(j.is_string());
  CHECK(int_from_json(j, "x") == big);
  CHECK(int_to_json(Int(5)).is_number());
}

TEST_CASE("modules round-trip") {
  for (int p : {3, 5})
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      GeneratorOptions o;
      o.p = p;
      DModule m = random_dmodule(o, seed);
      Json j = module_to_json(m);
      DModule back = module_from_json(parse_json(j.dump(), "module"));
      CHECK(module_to_json(back) == j);
    }
  Json bad = module_to_json(regular_module(3));
  bad["T"] = module_to_json(trivial_module(3))["T"];
  CHECK_THROWS_AS(module_from_json(bad), InputError);
}

TEST_CASE("lattice fixtures") {
  for (const char* name : {"lattice_trivial_p3.json", "lattice_sign_p3.json", "lattice_regular_p3.json"}) {
    PairedLattice l = paired_lattice_from_json(load(name));
    CHECK(paired_lattice_to_json(l) == paired_lattice_to_json(paired_lattice_from_json(paired_lattice_to_json(l))));
  }
  CHECK(regulator_constant(paired_lattice_from_json(load("lattice_trivial_p3.json"))) == Rat(1, 3));
  CHECK(regulator_constant(paired_lattice_from_json(load("lattice_sign_p3.json"))) == Rat(3));
  CHECK(regulator_constant(paired_lattice_from_json(load("lattice_regular_p3.json"))) == Rat(1));
  CHECK_THROWS_AS(paired_lattice_from_json(load("lattice_nonsymmetric_p3.json")), InputError);
}

TEST_CASE("subgroups and places round-trip") {
  for (const Subgroup& h : subgroups(DihedralGroup(5))) CHECK(subgroup_from_json(subgroup_to_json(h), 5) == h);
  auto places = places_from_json(load("places_worked_p3.json"), 3);
  REQUIRE(places.size() == 2);
  for (const PlaceData& v : places) CHECK(place_to_json(place_from_json(place_to_json(v), 3)) == place_to_json(v));
  CHECK_THROWS_AS(subgroup_from_json(Json{{"type", "MIRROR"}}, 3), InputError);
}

TEST_CASE("bundles round-trip and validate") {
  for (const char* name : {"bundle_trivial.json", "bundle_s3.json", "bundle_hL_mismatch_ell7.json"}) {
    FieldInvariantBundle b = bundle_from_json(load(name));
    Json j = bundle_to_json(b);
    CHECK(bundle_to_json(bundle_from_json(j)) == j);
  }
  Json s3 = load("bundle_s3.json");
  Json w = s3;
  w["fields"]["L"]["w"] = 6;
  CHECK_THROWS_WITH_AS(bundle_from_json(w), doctest::Contains("w_L"), InputError);
  Json kp = s3;
  kp["fields"]["K'"]["h"] = 3;
  CHECK_THROWS_WITH_AS(bundle_from_json(kp), doctest::Contains("K'"), InputError);
  Json num = s3;
  num["fields"]["K"]["R"]["value"] = 0.28;
  CHECK_THROWS_AS(bundle_from_json(num), InputError);
  Json missing = s3;
  missing["fields"].erase("F");
  CHECK_THROWS_AS(bundle_from_json(missing), InputError);
}

TEST_CASE("interval verdicts") {
  Rat t(1, 10);
  CHECK(interval_verdict(Rat(1), Rat(1), Rat(1), Rat(0)) == Verdict::Pass);
  CHECK(interval_verdict(Rat(19, 20), Rat(21, 20), Rat(1), t) == Verdict::Pass);
  CHECK(interval_verdict(Rat(1, 2), Rat(3, 5), Rat(1), t) == Verdict::Fail);
  CHECK(interval_verdict(Rat(19, 20), Rat(6, 5), Rat(1), t) == Verdict::Inconclusive);
}

TEST_CASE("bundle checks") {
  CheckReport trivial = check_bundle(bundle_from_json(load("bundle_trivial.json")), Rat(1, 1000000));
  CHECK(trivial.overall() == Verdict::Pass);
  CHECK(trivial.u == Rat(1));
  CHECK(trivial.alpha == 0);
  CheckReport s3 = check_bundle(bundle_from_json(load("bundle_s3.json")), Rat(1, 1000000));
  CHECK(s3.overall() == Verdict::Pass);
  CHECK(s3.u == Rat(1, 3));
  CheckReport bad = check_bundle(bundle_from_json(load("bundle_hL_mismatch_ell7.json")), Rat(1, 1000000));
  CHECK(bad.overall() == Verdict::Fail);
  bool named = false;
  for (const SubCheck& c : bad.checks)
    if (c.verdict == Verdict::Fail) named = named || contains(c.detail, "ell=7");
  CHECK(named);
  // a regulator error larger than the tolerance leaves the verdict open
  Json loose = load("bundle_s3.json");
  loose["fields"]["L"]["R"]["error"] = "0.01";
  CHECK(check_bundle(bundle_from_json(loose), Rat(1, 1000000)).overall() == Verdict::Inconclusive);
}

TEST_CASE("commands") {
  auto rc = cmd_regconst(slurp("lattice_regular_p3.json"), Format::Text);
  CHECK(rc.code == 0);
  CHECK(contains(rc.out, "C = 1"));
  CHECK(contains(rc.out, " = 1 (holds)"));
  auto rj = cmd_regconst(slurp("lattice_trivial_p3.json"), Format::Json);
  Json j = Json::parse(rj.out);
  CHECK(j["C"] == "1/3");
  CHECK(j["identity_holds"] == true);
  std::string err;
  auto ns = guarded([&] { return cmd_regconst(slurp("lattice_nonsymmetric_p3.json"), Format::Text); }, err);
  CHECK(ns.code == 2);
  CHECK(contains(err, "not symmetric"));
  CHECK(cmd_bk_check(slurp("bundle_hL_mismatch_ell7.json"), "1e-6", Format::Text).code == 1);
  CHECK(cmd_bk_check(slurp("bundle_s3.json"), "1e-6", Format::Text).code == 0);
  auto sp = cmd_splitting(slurp("places_worked_p3.json"), 3, 2, RelationVector::canonical(), Format::Text);
  CHECK(sp.code == 0);
  auto w = cmd_wnum("5", "2", 10, 4, Format::Text);
  CHECK(w.out == "w_5 = 5\n");
}
