#include "bkd/bundle.hpp"

#include <set>

namespace bkd {

namespace {

const char* kFieldKeys[] = {"k", "F", "K", "K'", "L"};

FieldRecord& record(FieldInvariantBundle& b, int i) {
  FieldRecord* r[] = {&b.k, &b.F, &b.K, &b.Kp, &b.L};
  return *r[i];
}
const FieldRecord& record(const FieldInvariantBundle& b, int i) {
  return record(const_cast<FieldInvariantBundle&>(b), i);
}

long small(const Json& j, const std::string& where) {
  Int v = int_from_json(j, where);
  if (!v.fits_slong_p()) throw InputError(where + ": value out of range");
  return v.get_si();
}

FieldRecord record_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  for (const char* key : {"h", "w", "R", "r1", "r2", "rank"})
    if (!j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  FieldRecord r;
  r.h = int_from_json(j.at("h"), where + ".h");
  r.w = int_from_json(j.at("w"), where + ".w");
  if (r.h <= 0 || r.w <= 0) throw InputError(where + ": h and w must be positive");
  if (j.contains("h_factors")) {
    IntVector f;
    for (const Json& x : j.at("h_factors")) f.push_back(int_from_json(x, where + ".h_factors"));
    r.group = FinAbGroup::from_cyclic_orders(f);
    if (!r.group->is_finite() || r.group->torsion_order() != r.h)
      throw InputError(where + ": h_factors do not multiply to h");
  }
  const Json& reg = j.at("R");
  if (!reg.is_object() || !reg.contains("value") || !reg.at("value").is_string())
    throw InputError(where + ".R: expected {\"value\": decimal string, \"error\": decimal string}");
  r.R = reg.at("value").get<std::string>();
  r.R_value = rat_from_json(reg.at("value"), where + ".R.value");
  if (reg.contains("error")) {
    if (!reg.at("error").is_string()) throw InputError(where + ".R.error: expected a decimal string");
    r.R_error_text = reg.at("error").get<std::string>();
    r.R_error = rat_from_json(reg.at("error"), where + ".R.error");
  }
  if (r.R_value <= 0 || r.R_error < 0) throw InputError(where + ".R: value must be positive, error nonnegative");
  r.r1 = small(j.at("r1"), where + ".r1");
  r.r2 = small(j.at("r2"), where + ".r2");
  r.rank = small(j.at("rank"), where + ".rank");
  if (r.r1 < 0 || r.r2 < 0 || r.r1 + r.r2 == 0) throw InputError(where + ": invalid signature");
  return r;
}

Json record_to_json(const FieldRecord& r) {
  Json j;
  j["h"] = int_to_json(r.h);
  if (r.group) {
    Json f = Json::array();
    for (const Int& d : r.group->torsion()) f.push_back(int_to_json(d));
    j["h_factors"] = std::move(f);
  }
  j["w"] = int_to_json(r.w);
  j["R"] = {{"value", r.R}, {"error", r.R_error_text}};
  j["r1"] = r.r1;
  j["r2"] = r.r2;
  j["rank"] = r.rank;
  return j;
}

bool same_record(const FieldRecord& a, const FieldRecord& b) {
  return a.h == b.h && a.group == b.group && a.w == b.w && a.R_value == b.R_value && a.r1 == b.r1 && a.r2 == b.r2 &&
         a.rank == b.rank;
}

QuintetOrders orders_of(const FieldInvariantBundle& b) {
  return {b.L.h, b.F.h, b.K.h, b.k.h, b.L.group, b.F.group, b.K.group, b.k.group};
}

Rat pow_rat(const Rat& x, int e) {
  Rat out = 1;
  for (int i = 0; i < e; ++i) out *= x;
  return out;
}

}  // namespace

FieldInvariantBundle bundle_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("bundle: expected an object");
  for (const char* key : {"p", "m", "fields"})
    if (!j.contains(key)) throw InputError(std::string("bundle: missing field '") + key + "'");
  FieldInvariantBundle b;
  long p = small(j.at("p"), "bundle.p");
  DihedralGroup check(static_cast<int>(p));  // odd prime
  b.p = static_cast<int>(p);
  b.m = small(j.at("m"), "bundle.m");
  if (b.m < 1) throw InputError("bundle.m: weight must be positive");
  const Json& fields = j.at("fields");
  for (int i = 0; i < 5; ++i) {
    if (!fields.contains(kFieldKeys[i]))
      throw InputError(std::string("bundle.fields: missing record for ") + kFieldKeys[i]);
    record(b, i) = record_from_json(fields.at(kFieldKeys[i]), std::string("bundle.fields.") + kFieldKeys[i]);
  }
  if (b.L.w != b.F.w) throw InputError("w_L = " + b.L.w.get_str() + " differs from w_F = " + b.F.w.get_str());
  if (b.K.w != b.k.w) throw InputError("w_K = " + b.K.w.get_str() + " differs from w_k = " + b.k.w.get_str());
  if (!same_record(b.K, b.Kp)) throw InputError("records for the conjugate fields K and K' differ");
  if (j.contains("places")) b.places = places_from_json(j.at("places"), b.p);
  if (j.contains("u")) b.u = rat_from_json(j.at("u"), "bundle.u");
  if (j.contains("provenance")) {
    if (!j.at("provenance").is_string()) throw InputError("bundle.provenance: expected a string");
    b.provenance = j.at("provenance").get<std::string>();
  }
  return b;
}

Json bundle_to_json(const FieldInvariantBundle& b) {
  Json j;
  j["p"] = b.p;
  j["m"] = b.m;
  Json f;
  for (int i = 0; i < 5; ++i) f[kFieldKeys[i]] = record_to_json(record(b, i));
  j["fields"] = std::move(f);
  Json places = Json::array();
  for (const PlaceData& v : b.places) places.push_back(place_to_json(v));
  j["places"] = std::move(places);
  if (b.u) j["u"] = b.u->get_str();
  j["provenance"] = b.provenance;
  return j;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

Verdict CheckReport::overall() const {
  bool open = false;
  for (const SubCheck& c : checks) {
    if (c.verdict == Verdict::Fail) return Verdict::Fail;
    if (c.verdict == Verdict::Inconclusive) open = true;
  }
  return open ? Verdict::Inconclusive : Verdict::Pass;
}

Verdict interval_verdict(const Rat& lo, const Rat& hi, const Rat& target, const Rat& t) {
  // |target - x| <= t x  <=>  target / (1 + t) <= x <= target / (1 - t)
  if (lo <= 0) return Verdict::Inconclusive;
  Rat a = target / (1 + t);
  bool bounded = t < 1;
  Rat b = bounded ? Rat(target / (1 - t)) : Rat(0);
  bool inside = lo >= a && (!bounded || hi <= b);
  bool disjoint = hi < a || (bounded && lo > b);
  if (inside) return Verdict::Pass;
  return disjoint ? Verdict::Fail : Verdict::Inconclusive;
}

CheckReport check_bundle(const FieldInvariantBundle& b, const Rat& tolerance) {
  if (tolerance < 0) throw InputError("tolerance must be nonnegative");
  CheckReport rep;
  auto add = [&](std::string name, Verdict v, std::string detail) {
    rep.checks.push_back({std::move(name), v, std::move(detail)});
  };
  Int p = b.p;
  DihedralGroup d(b.p);

  add("w-identities", Verdict::Pass, "w_L = w_F = " + b.L.w.get_str() + ", w_K = w_k = " + b.k.w.get_str());
  add("conjugate-fields", Verdict::Pass, "K and K' records agree");

  // ranks and degrees of the archimedean data
  {
    std::string bad;
    const long degree[] = {1, 2, b.p, b.p, 2L * b.p};
    long base = b.k.r1 + 2 * b.k.r2;
    for (int i = 0; i < 5; ++i) {
      const FieldRecord& r = record(b, i);
      if (r.rank != borel_rank(r.r1, r.r2, b.m))
        bad += std::string(bad.empty() ? "" : "; ") + kFieldKeys[i] + ": rank " + std::to_string(r.rank) +
               " but signature gives " + std::to_string(borel_rank(r.r1, r.r2, b.m));
      if (r.r1 + 2 * r.r2 != degree[i] * base)
        bad += std::string(bad.empty() ? "" : "; ") + kFieldKeys[i] + ": r1 + 2 r2 is not [E:k] times that of k";
    }
    add("ranks", bad.empty() ? Verdict::Pass : Verdict::Fail, bad.empty() ? "ranks match signatures" : bad);
  }

  SignatureReport sig;
  bool have_arch = false;
  for (const PlaceData& v : b.places) have_arch = have_arch || v.kind != PlaceKind::Finite;
  if (have_arch) {
    sig = signatures(d, b.places, b.m);
    std::string bad;
    const FieldSignature* s[] = {&sig.k, &sig.F, &sig.K, &sig.K, &sig.L};
    for (int i = 0; i < 5; ++i) {
      const FieldRecord& r = record(b, i);
      if (r.r1 != s[i]->r1 || r.r2 != s[i]->r2)
        bad += std::string(bad.empty() ? "" : "; ") + kFieldKeys[i] + ": places give (" + std::to_string(s[i]->r1) +
               "," + std::to_string(s[i]->r2) + ")";
    }
    add("signatures", bad.empty() ? Verdict::Pass : Verdict::Fail, bad.empty() ? "places reproduce r1, r2" : bad);
  }

  {
    SignatureReport rec;
    rec.m = b.m;
    auto fill = [&](FieldSignature& s, const FieldRecord& r) {
      s.r1 = r.r1;
      s.r2 = r.r2;
      s.rank = r.rank;
      s.t = t_value(r.r1, r.r2, b.m);
    };
    fill(rec.k, b.k);
    fill(rec.F, b.F);
    fill(rec.K, b.K);
    fill(rec.L, b.L);
    bool ok = check_sign_cancellation(rec, RelationVector::canonical());
    add("sign-cancellation", ok ? Verdict::Pass : Verdict::Fail,
        "t_L - 2 t_K - t_F + 2 t_k = " + std::to_string(rec.L.t - 2 * rec.K.t - rec.F.t + 2 * rec.k.t));
  }

  long alpha = b.F.rank - b.k.rank;
  rep.alpha = alpha;

  if (have_arch) {
    RatMultiplicities mult = higher_dirichlet_decomposition(d, b.places, b.m);
    long dim = mult.m_triv + mult.m_sign + (b.p - 1) * mult.m_omega;
    std::string detail = "(" + std::to_string(mult.m_triv) + "," + std::to_string(mult.m_sign) + "," +
                         std::to_string(mult.m_omega) + "), dimension " + std::to_string(dim);
    bool ok = dim == b.L.rank;
    if (b.m >= 2) {
      ok = ok && mult.pairing_with_relation_character() == -2 * alpha;
      detail += ", <V, 1 - eps - omega> = " + std::to_string(mult.pairing_with_relation_character());
    }
    add("dirichlet", ok ? Verdict::Pass : Verdict::Fail, detail);
  }

  // every prime other than p dividing some h
  {
    std::set<Int> primes;
    for (int i = 0; i < 5; ++i)
      for (const Int& q : prime_divisors(record(b, i).h))
        if (q != p) primes.insert(q);
    QuintetOrders orders = orders_of(b);
    std::string bad;
    for (const Int& ell : primes) {
      LemmaReport r = verify_ell_part_consistency(ell, orders);
      if (!r.pass)
        bad += std::string(bad.empty() ? "" : "; ") + "ell=" + ell.get_str() + ": h_L h_k^2 = " + r.lhs +
               " but h_F h_K^2 = " + r.rhs;
    }
    add("ell-parts", bad.empty() ? Verdict::Pass : Verdict::Fail,
        bad.empty() ? std::to_string(primes.size()) + " primes other than p checked" : bad);
  }

  // u from the class numbers
  Rat u = rat_power(p, alpha) * Rat(b.L.h * b.k.h * b.k.h, b.F.h * b.K.h * b.K.h);
  u.canonicalize();
  rep.u = u;
  auto e = prime_power_exponent(u, p);
  add("u-p-power", e ? Verdict::Pass : Verdict::Fail,
      "u = " + u.get_str() + (e ? " = p^" + std::to_string(*e) : " is not a power of p"));
  {
    LemmaReport r = verify_p_part_consistency(b.p, orders_of(b), b.u ? *b.u : u, alpha);
    add("p-part", r.pass ? Verdict::Pass : Verdict::Fail,
        std::string(b.u ? "supplied" : "solved") + " u; |A_L|_p = " + r.lhs + ", predicted " + r.rhs);
  }

  // regulators, with the error bounds carried through as intervals
  auto lo = [](const FieldRecord& r) { return Rat(r.R_value - r.R_error); };
  auto hi = [](const FieldRecord& r) { return Rat(r.R_value + r.R_error); };
  Rat ratio = pow_rat(b.K.R_value, 2) * b.F.R_value / (pow_rat(b.k.R_value, 2) * b.L.R_value);
  bool positive = lo(b.K) > 0 && lo(b.F) > 0 && lo(b.k) > 0 && lo(b.L) > 0;
  Rat r_lo = positive ? Rat(pow_rat(lo(b.K), 2) * lo(b.F) / (pow_rat(hi(b.k), 2) * hi(b.L))) : Rat(0);
  Rat r_hi = positive ? Rat(pow_rat(hi(b.K), 2) * hi(b.F) / (pow_rat(lo(b.k), 2) * lo(b.L))) : Rat(0);
  Rat target = rat_power(p, -alpha) * u;
  {
    Verdict v = interval_verdict(r_lo, r_hi, target, tolerance);
    Rat residual = target - ratio;
    if (residual < 0) residual = -residual;
    add("regulator", v,
        "p^-alpha u = " + target.get_str() + ", regulator ratio = " + std::to_string(ratio.get_d()) +
            ", relative residual = " + std::to_string(Rat(residual / ratio).get_d()));
  }
  {
    Rat wf = Rat(b.k.w * b.k.w * b.L.w, b.K.w * b.K.w * b.F.w);
    Rat hf = Rat(b.F.h * b.K.h * b.K.h, b.k.h * b.k.h);
    Rat scale = wf * hf;
    Verdict v = interval_verdict(scale * r_lo, scale * r_hi, Rat(b.L.h), tolerance);
    Rat predicted = scale * ratio;
    add("class-number-relation", v, "h_L = " + b.L.h.get_str() + ", predicted " + std::to_string(predicted.get_d()));
  }
  return rep;
}

Json check_report_to_json(const CheckReport& r) {
  Json j;
  j["verdict"] = verdict_name(r.overall());
  j["u"] = r.u.get_str();
  j["alpha"] = r.alpha;
  Json checks = Json::array();
  for (const SubCheck& c : r.checks)
    checks.push_back({{"name", c.name}, {"verdict", verdict_name(c.verdict)}, {"detail", c.detail}});
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace bkd
