#pragma once

// Field-invariant bundles for a dihedral quintet and the checker that tests
// the ingested class numbers, w-numbers and regulators against each other.

#include <optional>
#include <string>
#include <vector>

#include "bkd/io.hpp"

namespace bkd {

struct FieldRecord {
  Int h;                            // order of H^2 (class number for m = 1)
  std::optional<FinAbGroup> group;  // invariant factors of H^2, when supplied
  Int w;
  std::string R;  // regulator as ingested
  Rat R_value;    // exact value of the decimal string
  Rat R_error;    // absolute error bound
  std::string R_error_text = "0";
  long r1 = 0;
  long r2 = 0;
  long rank = 0;
};

struct FieldInvariantBundle {
  int p = 3;
  long m = 1;
  FieldRecord k, F, K, Kp, L;
  std::vector<PlaceData> places;
  std::optional<Rat> u;  // optional externally computed u_m
  std::string provenance;
};

/// Parses and validates; violations of w_L = w_F, w_K = w_k or K = K' are
/// InputErrors.
FieldInvariantBundle bundle_from_json(const Json& j);
Json bundle_to_json(const FieldInvariantBundle& b);

enum class Verdict { Pass, Fail, Inconclusive };
std::string verdict_name(Verdict v);

struct SubCheck {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::string detail;
};

struct CheckReport {
  std::vector<SubCheck> checks;
  Rat u;
  long alpha = 0;
  Verdict overall() const;
};

/// Verdict of "x lies within relative tolerance t of target" for every x in
/// [lo, hi]: Pass if all do, Fail if none does, Inconclusive otherwise.
Verdict interval_verdict(const Rat& lo, const Rat& hi, const Rat& target, const Rat& t);

CheckReport check_bundle(const FieldInvariantBundle& b, const Rat& tolerance);
Json check_report_to_json(const CheckReport& r);

}  // namespace bkd
