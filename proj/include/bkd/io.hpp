#pragma once

// JSON readers and canonical writers for modules, paired lattices, places
// and lemma reports. Integers that fit in 64 bits are written as numbers,
// larger ones as decimal strings; rationals are always strings "a/b".

#include <string>
#include <vector>

#include "bkd/arith.hpp"
#include "bkd/lemmas.hpp"
#include "json.hpp"

namespace bkd {

using Json = nlohmann::ordered_json;

Int int_from_json(const Json& j, const std::string& where);
Json int_to_json(const Int& x);
/// Accepts integers, "a/b" strings and exact decimals ("0.25", "1e-6").
Rat rat_from_json(const Json& j, const std::string& where);
/// Exact value of a decimal string with optional exponent.
Rat parse_decimal(const std::string& s);

Coefficients ring_from_string(const std::string& s);

/// {p, ring, n, relations: [[...]] (one relation vector per entry), T, S}
/// with T and S row-major.
DModule module_from_json(const Json& j);
Json module_to_json(const DModule& m);

/// Module fields plus "gram": [[rational]].
PairedLattice paired_lattice_from_json(const Json& j);
Json paired_lattice_to_json(const PairedLattice& m);

/// {type: "TRIVIAL"|"REFLECTION"|"ROTATION"|"FULL", j}
Subgroup subgroup_from_json(const Json& j, int p);
Json subgroup_to_json(const Subgroup& h);

/// {kind: "real"|"complex"|"finite", ell, f, decomposition, ramified}
PlaceData place_from_json(const Json& j, int p);
Json place_to_json(const PlaceData& v);
std::vector<PlaceData> places_from_json(const Json& j, int p);

Json report_to_json(const LemmaReport& r);

/// Parses text, mapping parse errors to InputError.
Json parse_json(const std::string& text, const std::string& what);

}  // namespace bkd
