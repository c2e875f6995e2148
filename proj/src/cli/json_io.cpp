#include <limits>

#include "bkd/io.hpp"

namespace bkd {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

IntMatrix rows_from_json(const Json& j, std::size_t cols, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of rows");
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& r = j[i];
    if (!r.is_array() || r.size() != cols)
      bad(where, "row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    IntVector v;
    for (std::size_t c = 0; c < cols; ++c) v.push_back(int_from_json(r[c], where));
    rows.push_back(std::move(v));
  }
  return IntMatrix::from_rows(rows, cols);
}

Json rows_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) r.push_back(int_to_json(m(i, c)));
    out.push_back(std::move(r));
  }
  return out;
}

int small_int(const Json& j, const std::string& where) {
  Int v = int_from_json(j, where);
  if (!v.fits_sint_p()) bad(where, "value out of range");
  return static_cast<int>(v.get_si());
}

}  // namespace

Int int_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer())
    return j.is_number_unsigned() ? Int(std::to_string(j.get<std::uint64_t>()))
                                  : Int(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    Int v;
    if (v.set_str(j.get<std::string>(), 10) != 0) bad(where, "not an integer: '" + j.get<std::string>() + "'");
    return v;
  }
  bad(where, "expected an integer, got " + j.dump());
}

Json int_to_json(const Int& x) {
  if (x.fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

Rat parse_decimal(const std::string& s) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false, seen_point = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      digits += c;
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw InputError("not a decimal number: '" + s + "'");
  long exponent = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    std::string e = s.substr(i + 1);
    if (e.empty()) throw InputError("not a decimal number: '" + s + "'");
    try {
      std::size_t used = 0;
      exponent = std::stol(e, &used);
      if (used != e.size()) throw InputError("not a decimal number: '" + s + "'");
    } catch (const std::logic_error&) {
      throw InputError("not a decimal number: '" + s + "'");
    }
    i = s.size();
  }
  if (i != s.size()) throw InputError("not a decimal number: '" + s + "'");
  Rat q{Int(digits, 10)};
  q *= rat_power(10, exponent - scale);
  return neg ? Rat(-q) : q;
}

Rat rat_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(int_from_json(j, where));
  if (!j.is_string()) bad(where, "expected a rational string, got " + j.dump());
  std::string s = j.get<std::string>();
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    try {
      return parse_decimal(s);
    } catch (const InputError& e) {
      bad(where, e.what());
    }
  }
  Int a, b;
  if (a.set_str(s.substr(0, slash), 10) != 0 || b.set_str(s.substr(slash + 1), 10) != 0 || b == 0)
    bad(where, "not a rational: '" + s + "'");
  Rat q(a, b);
  q.canonicalize();
  return q;
}

Coefficients ring_from_string(const std::string& s) {
  if (s == "Z") return Coefficients::integers();
  if (s.size() > 4 && s.rfind("Z_(", 0) == 0 && s.back() == ')') {
    Int ell;
    if (ell.set_str(s.substr(3, s.size() - 4), 10) == 0 && ell > 1) return Coefficients::local(ell);
  }
  throw InputError("ring must be \"Z\" or \"Z_(ell)\", got '" + s + "'");
}

DModule module_from_json(const Json& j) {
  const std::string w = "module";
  int p = small_int(field(j, "p", w), w + ".p");
  const Json& ring = field(j, "ring", w);
  if (!ring.is_string()) bad(w + ".ring", "expected a string");
  auto n = static_cast<std::size_t>(small_int(field(j, "n", w), w + ".n"));
  IntMatrix t = rows_from_json(field(j, "T", w), n, w + ".T");
  IntMatrix s = rows_from_json(field(j, "S", w), n, w + ".S");
  if (t.rows() != n || s.rows() != n) bad(w, "T and S must be " + std::to_string(n) + "x" + std::to_string(n));
  IntMatrix rel = rows_from_json(field(j, "relations", w), n, w + ".relations").transpose();
  if (rel.rows() != n) rel = IntMatrix(n, 0);
  return DModule(p, ring_from_string(ring.get<std::string>()), rel, t, s);
}

Json module_to_json(const DModule& m) {
  Json j;
  j["p"] = m.p();
  j["ring"] = m.ring().name();
  j["n"] = m.generators();
  j["relations"] = rows_to_json(m.relations().basis().transpose());
  j["T"] = rows_to_json(m.T());
  j["S"] = rows_to_json(m.S());
  return j;
}

PairedLattice paired_lattice_from_json(const Json& j) {
  DModule m = module_from_json(j);
  std::size_t n = m.generators();
  const Json& g = field(j, "gram", "lattice");
  if (!g.is_array() || g.size() != n) bad("lattice.gram", "must have " + std::to_string(n) + " rows");
  RatMatrix gram(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!g[r].is_array() || g[r].size() != n) bad("lattice.gram", "row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < n; ++c) gram(r, c) = rat_from_json(g[r][c], "lattice.gram");
  }
  return PairedLattice(std::move(m), std::move(gram));
}

Json paired_lattice_to_json(const PairedLattice& m) {
  Json j = module_to_json(m.lattice());
  Json g = Json::array();
  for (std::size_t r = 0; r < m.gram().rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.gram().cols(); ++c) row.push_back(m.gram()(r, c).get_str());
    g.push_back(std::move(row));
  }
  j["gram"] = std::move(g);
  return j;
}

Subgroup subgroup_from_json(const Json& j, int p) {
  const std::string w = "decomposition";
  const Json& t = field(j, "type", w);
  if (!t.is_string()) bad(w + ".type", "expected a string");
  std::string type = t.get<std::string>();
  if (type == "TRIVIAL") return Subgroup::trivial();
  if (type == "ROTATION") return Subgroup::rotation();
  if (type == "FULL") return Subgroup::full();
  if (type == "REFLECTION") {
    int jj = j.contains("j") ? small_int(j.at("j"), w + ".j") : 0;
    return Subgroup::reflection(((jj % p) + p) % p);
  }
  bad(w + ".type", "unknown subgroup type '" + type + "'");
}

Json subgroup_to_json(const Subgroup& h) {
  static const char* names[] = {"TRIVIAL", "REFLECTION", "ROTATION", "FULL"};
  Json j;
  j["type"] = names[static_cast<int>(h.kind)];
  if (h.kind == SubgroupKind::Reflection) j["j"] = h.j;
  return j;
}

PlaceData place_from_json(const Json& j, int p) {
  const std::string w = "place";
  PlaceData v;
  const Json& kind = field(j, "kind", w);
  std::string k = kind.is_string() ? kind.get<std::string>() : "";
  if (k == "real") {
    v.kind = PlaceKind::Real;
  } else if (k == "complex") {
    v.kind = PlaceKind::Complex;
  } else if (k == "finite") {
    v.kind = PlaceKind::Finite;
    v.ell = int_from_json(field(j, "ell", w), w + ".ell");
    v.f = j.contains("f") ? small_int(j.at("f"), w + ".f") : 1;
  } else {
    bad(w + ".kind", "must be real, complex or finite");
  }
  v.decomposition = j.contains("decomposition") ? subgroup_from_json(j.at("decomposition"), p) : Subgroup::trivial();
  if (j.contains("ramified")) {
    if (!j.at("ramified").is_boolean()) bad(w + ".ramified", "expected a boolean");
    v.ramified = j.at("ramified").get<bool>();
  }
  v.validate(p);
  return v;
}

Json place_to_json(const PlaceData& v) {
  Json j;
  j["kind"] = place_kind_name(v.kind);
  if (v.kind == PlaceKind::Finite) {
    j["ell"] = int_to_json(v.ell);
    j["f"] = v.f;
  }
  j["decomposition"] = subgroup_to_json(v.decomposition);
  if (v.ramified) j["ramified"] = true;
  return j;
}

std::vector<PlaceData> places_from_json(const Json& j, int p) {
  const Json& list = j.is_object() ? field(j, "places", "place file") : j;
  if (!list.is_array()) bad("places", "expected an array");
  std::vector<PlaceData> out;
  for (const Json& v : list) out.push_back(place_from_json(v, p));
  return out;
}

Json report_to_json(const LemmaReport& r) {
  Json j;
  j["lemma"] = r.lemma;
  j["pass"] = r.pass;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  Json d = Json::object();
  for (const auto& [k, v] : r.details) d[k] = v;
  j["details"] = std::move(d);
  return j;
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(what + ": invalid JSON (" + e.what() + ")");
  }
}

}  // namespace bkd
