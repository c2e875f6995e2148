#include "bkd/commands.hpp"

#include <map>
#include <sstream>

namespace bkd {

namespace {

std::string join(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return 0;
    case Verdict::Fail:
      return 1;
    case Verdict::Inconclusive:
      return 3;
  }
  return 4;
}

Int parse_int(const std::string& s, const std::string& what) {
  Int v;
  if (s.empty() || v.set_str(s, 10) != 0) throw InputError(what + " must be an integer, got '" + s + "'");
  return v;
}

}  // namespace

CommandOutput cmd_verify_lemmas(const HarnessOptions& opts, Format fmt) {
  HarnessResult r = run_lemma_suite(opts);
  std::ostringstream os;
  if (fmt == Format::Json) {
    for (const Json& line : r.lines) os << line.dump() << "\n";
  } else {
    // per-lemma tallies in report order
    std::vector<std::string> order;
    std::map<std::string, std::map<std::string, long>> tally;
    for (const Json& line : r.lines) {
      std::string id = line["lemma"].get<std::string>();
      if (!tally.count(id)) order.push_back(id);
      ++tally[id][line["status"].get<std::string>()];
    }
    for (const std::string& id : order) {
      os << id;
      for (const auto& [status, n] : tally[id]) os << " " << status << "=" << n;
      os << "\n";
    }
    for (const Json& line : r.lines) {
      std::string s = line["status"].get<std::string>();
      if (s == "fail" || s == "error" || s == "violation") os << s << ": " << line.dump() << "\n";
    }
    os << "checks=" << r.checks << " failures=" << r.failures << " skipped=" << r.skipped;
    if (opts.explore_hypotheses) os << " violations=" << r.violations;
    os << "\n";
  }
  return {r.failures ? 1 : 0, os.str()};
}

CommandOutput cmd_regconst(const std::string& lattice_text, Format fmt) {
  PairedLattice m = paired_lattice_from_json(parse_json(lattice_text, "lattice file"));
  RatMultiplicities mult = rational_multiplicities(m.lattice());
  RegulatorIndexCheck b = regulator_index_identity(m);
  int p = m.lattice().p();
  Rat residual = b.index.is_finite()
                     ? Rat(b.regulator_constant * rat_power(p, b.exponent) * Rat(b.index.value() * b.index.value()))
                     : Rat(0);
  std::ostringstream os;
  if (fmt == Format::Json) {
    Json j;
    j["p"] = p;
    j["C"] = b.regulator_constant.get_str();
    j["multiplicities"] = {{"trivial", mult.m_triv}, {"sign", mult.m_sign}, {"omega", mult.m_omega}};
    j["exponent"] = b.exponent;
    j["index"] = b.index.to_string();
    j["C*p^e*index^2"] = residual.get_str();
    j["identity_holds"] = b.holds;
    os << j.dump(2) << "\n";
  } else {
    os << "C = " << b.regulator_constant.get_str() << "\n";
    os << "multiplicities (1, eps, omega) = (" << mult.m_triv << ", " << mult.m_sign << ", " << mult.m_omega << ")\n";
    os << "<M, 1 - eps - omega> = " << b.exponent << "\n";
    os << "(M : M^sigma + M^(tau^2 sigma) + M^G) = " << b.index.to_string() << "\n";
    os << "C * p^" << b.exponent << " * index^2 = " << residual.get_str() << (b.holds ? " (holds)" : " (FAILS)")
       << "\n";
  }
  return {b.holds ? 0 : 1, os.str()};
}

CommandOutput cmd_bk_check(const std::string& bundle_text, const std::string& tolerance, Format fmt) {
  FieldInvariantBundle b = bundle_from_json(parse_json(bundle_text, "bundle file"));
  Rat t = parse_decimal(tolerance);
  CheckReport r = check_bundle(b, t);
  std::ostringstream os;
  if (fmt == Format::Json) {
    os << check_report_to_json(r).dump(2) << "\n";
  } else {
    for (const SubCheck& c : r.checks) os << verdict_name(c.verdict) << "\t" << c.name << "\t" << c.detail << "\n";
    os << "u = " << r.u.get_str() << ", alpha = " << r.alpha << "\n";
    os << "verdict: " << verdict_name(r.overall()) << "\n";
  }
  return {verdict_code(r.overall()), os.str()};
}

CommandOutput cmd_splitting(const std::string& places_text, int p, long m, const RelationVector& rel, Format fmt) {
  DihedralGroup d(p);
  std::vector<PlaceData> places = places_from_json(parse_json(places_text, "place file"), p);
  std::vector<PlaceData> arch;
  Json out;
  out["p"] = p;
  out["m"] = m;
  out["relation"] = {rel.c_trivial, rel.c_reflection, rel.c_rotation, rel.c_full};
  Json rows = Json::array();
  std::ostringstream os;
  os << "p = " << p << ", m = " << m << ", relation = (" << rel.c_trivial << ", " << rel.c_reflection << ", "
     << rel.c_rotation << ", " << rel.c_full << ")\n";
  std::size_t index = 0;
  for (const PlaceData& v : places) {
    ++index;
    if (v.kind != PlaceKind::Finite) {
      arch.push_back(v);
      continue;
    }
    Json row;
    row["place"] = place_to_json(v);
    os << "place " << index << ": ell = " << v.ell.get_str() << ", f = " << v.f << ", D_v = " << v.decomposition.name()
       << "\n";
    Json fields;
    for (FieldId e : all_fields()) {
      Subgroup h = fixing_subgroup(e);
      std::vector<int> degrees = residue_degrees(d, v, h);
      Int lf = local_factor(d, v, h, m);
      fields[field_name(e)] = {{"residue_degrees", degrees}, {"local_factor", int_to_json(lf)}};
      os << "  " << field_name(e) << "\tf_w|v = " << join(degrees) << "\tlocal factor " << lf.get_str() << "\n";
    }
    row["fields"] = std::move(fields);
    Rat prod = relation_product(d, v, m, rel);
    Rat full = full_relation_product(d, v, m, rel);
    row["relation_product"] = prod.get_str();
    row["full_relation_product"] = full.get_str();
    os << "  relation product " << prod.get_str() << ", full product " << full.get_str() << "\n";
    rows.push_back(std::move(row));
  }
  out["places"] = std::move(rows);
  if (!arch.empty()) {
    SignatureReport sig = signatures(d, arch, m);
    Json sj;
    os << "signatures:\n";
    for (FieldId e : all_fields()) {
      const FieldSignature& s = sig.of(e);
      sj[field_name(e)] = {{"r1", s.r1}, {"r2", s.r2}, {"rank", s.rank}, {"t", s.t}};
      os << "  " << field_name(e) << "\tr1 = " << s.r1 << "\tr2 = " << s.r2 << "\trank = " << s.rank << "\tt = " << s.t
         << "\n";
    }
    long alpha = alpha_from_signatures(sig);
    bool cancels = check_sign_cancellation(sig, rel);
    sj["alpha"] = alpha;
    sj["sign_cancellation"] = cancels;
    os << "  alpha = " << alpha << ", sign cancellation " << (cancels ? "holds" : "fails") << "\n";
    out["signatures"] = std::move(sj);
  }
  if (fmt == Format::Json) return {0, out.dump(2) + "\n"};
  return {0, os.str()};
}

CommandOutput cmd_wnum(const std::string& ell, const std::string& kappa, long precision, long m, Format fmt) {
  Int l = parse_int(ell, "ell");
  Int k = parse_int(kappa, "kappa");
  Int w = w_number_part(l, k, precision, m);
  if (fmt == Format::Json) {
    Json j;
    j["ell"] = int_to_json(l);
    j["kappa"] = int_to_json(k);
    j["m"] = m;
    j["precision"] = precision;
    j["w_part"] = int_to_json(w);
    return {0, j.dump(2) + "\n"};
  }
  return {0, "w_" + l.get_str() + " = " + w.get_str() + "\n"};
}

}  // namespace bkd
