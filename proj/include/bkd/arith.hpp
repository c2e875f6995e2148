#pragma once

// Arithmetic bookkeeping from combinatorial data: splitting of places in the
// subfields of a dihedral extension, local factors and their behaviour on
// D-relations, archimedean signatures and ranks, sign bookkeeping, and
// torsion orders from cyclotomic character values.

#include <string>
#include <vector>

#include "bkd/dihedral.hpp"
#include "bkd/regconst.hpp"

namespace bkd {

enum class PlaceKind { Real, Complex, Finite };

struct PlaceData {
  PlaceKind kind = PlaceKind::Finite;
  Int ell = 0;  // residue characteristic (finite places)
  long f = 1;   // |k_v| = ell^f
  Subgroup decomposition;
  bool ramified = false;

  /// Checks the place-level invariants; throws InputError.
  void validate(int p) const;
};

std::string place_kind_name(PlaceKind k);

/// The four subfield classes of the quintet and their fixing subgroups.
enum class FieldId { k, F, K, L };
Subgroup fixing_subgroup(FieldId e);
std::string field_name(FieldId e);
const std::vector<FieldId>& all_fields();

/// Residue degrees f_{w|v} of the places w of L^H above v (unramified v).
std::vector<int> residue_degrees(const DihedralGroup& d, const PlaceData& v, const Subgroup& h);

/// prod over w | v in L^H of p^{v_p(ell^{f_w (m-1)} - 1)}, f_w = f_v f_{w|v}.
Int local_factor(const DihedralGroup& d, const PlaceData& v, const Subgroup& h, long m);
/// prod over w | v in L^H of (ell^{f_w (m-1)} - 1).
Int full_local_factor(const DihedralGroup& d, const PlaceData& v, const Subgroup& h, long m);

/// prod over subgroup classes of factor^coefficient, with the reflection
/// class represented by <sigma>.
Rat relation_product(const DihedralGroup& d, const PlaceData& v, long m, const RelationVector& rel);
Rat full_relation_product(const DihedralGroup& d, const PlaceData& v, long m, const RelationVector& rel);

struct FieldSignature {
  long r1 = 0;
  long r2 = 0;
  long rank = 0;  // Z-rank of H^1 at weight m
  long t = 0;     // sign exponent t_{E,m}
};

struct SignatureReport {
  long m = 0;
  FieldSignature k, F, K, L;
  long r_F_over_k = 0;  // real places of k that become complex in F
  const FieldSignature& of(FieldId e) const;
};

/// Rank of H^1 at weight m: r1 + r2 for m odd, r2 for m even; m = 1 is the
/// classical unit rank r1 + r2 - 1.
long borel_rank(long r1, long r2, long m);
/// 1, r1 + r2, r1, r2 for m = 1, 2, 3, 0 mod 4.
long t_value(long r1, long r2, long m);

SignatureReport signatures(const DihedralGroup& d, const std::vector<PlaceData>& arch_places, long m);

/// True when the relation-weighted sum of the t-values is even.
bool check_sign_cancellation(const SignatureReport& sig, const RelationVector& rel);

/// alpha_m = rank(F) - rank(k).
long alpha_from_signatures(const SignatureReport& sig);

/// Multiplicities of 1, eps, omega in H^1_L tensor Q from the archimedean
/// places (weight m >= 2; for m = 1 the trivial summand of the unit theorem
/// is removed).
RatMultiplicities higher_dirichlet_decomposition(const DihedralGroup& d, const std::vector<PlaceData>& arch_places,
                                                 long m);

/// ell^{v_ell(kappa^m - 1)} computed modulo ell^precision; throws InputError
/// "increase precision" when kappa^m = 1 at that precision.
Int w_number_part(const Int& ell, const Int& kappa, long precision, long m);

}  // namespace bkd
