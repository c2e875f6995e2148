#pragma once

// Verifiers for the algebraic index and cohomology identities of dihedral
// modules. Each verifier computes both sides along separate code paths and
// returns a report; none of them throws on a failed identity.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bkd/regconst.hpp"
#include "bkd/tate.hpp"

namespace bkd {

struct LemmaReport {
  std::string lemma;
  std::string lhs;
  std::string rhs;
  bool pass = false;
  // intermediate quantities, in computation order
  std::vector<std::pair<std::string, std::string>> details;

  void note(std::string key, std::string value) { details.emplace_back(std::move(key), std::move(value)); }
};

/// The fields of the quintet as submodules of M: U_F = M^G, U_k = M^D,
/// U_K = M^<sigma>, U_K' = M^<tau^2 sigma>.
struct FieldLattices {
  Lattice F, k, K, Kp;
};
FieldLattices field_lattices(const DModule& m);

/// Equality of two submodules; for a localized ring only up to the ell-part.
bool same_submodule(const DModule& m, const Lattice& a, const Lattice& b);

/// Kills the torsion prime to ell and returns M over Z_(ell).
DModule localize(const DModule& m, const Int& ell);

/// (B : C) = (f(B) : f(C)) (ker f : ker f cap C) for B = Z^n / R, C given by
/// generators (columns) and f : B -> Z^n' / R' given by a matrix. Throws
/// InputError when f is not well defined or (B : C) is infinite.
LemmaReport verify_index_lemma(const IntMatrix& relations, const IntMatrix& c_gens, const IntMatrix& f,
                               const IntMatrix& target_relations);

/// |H^j-hat(D)| = |H^{j+2}-hat(G)| / |H^{j+2}-hat(D)| for finite M.
LemmaReport verify_tate_order_ratio(const DModule& m, long j);

/// M^<sigma> + M^<tau^2 sigma> = sum_{j < p-1} tau^j M^<sigma>, and
/// I_G M is contained in it.
LemmaReport verify_reflection_span(const DModule& m);

/// M^D cap p M^G = p M^D.
LemmaReport verify_fixed_pth_powers(const DModule& m);

/// Orders in 0 -> A^D -> A_K + A_K' -> A -> A_G / (A_G)^Delta -> 0 for
/// finite A.
LemmaReport verify_fixed_point_sequence(const DModule& a);

/// Both index formulas for |H^1(D, U)| and |H^2(D, U)|. Requires G to act
/// trivially on the torsion of U (InputError otherwise, unless the
/// hypothesis check is switched off for exploration).
LemmaReport verify_cohomology_indices(const DModule& u, bool check_hypothesis = true);

/// I_G U cap U_F = I_G U cap U_F[p] (same for U_k), |I_G U cap U_F| =
/// (Ubar^G : Ubar_F) and (I_G U cap U_F : I_G U cap U_k) = (Ubar^D : Ubar_k).
LemmaReport verify_augmentation_fixed(const DModule& u, bool check_hypothesis = true);

/// (V : V_K V_K' V_F) = 1 and Vbar^G = Vbar_F over Z_(ell), ell not in {2, p}.
LemmaReport verify_coprime_index(const DModule& v);

/// H^j(D, M) = H^j(<sigma>, M) for a 2-primary module, from the cochain
/// oracle, j in {1, 2}.
LemmaReport verify_restriction(const DModule& m);

/// cohomology_dihedral against the cochain oracle, and tate_cyclic on every
/// cyclic subgroup, for j in {1, 2}.
LemmaReport verify_cohomology_oracle(const DModule& m);

struct UmResult {
  Rat u;
  long exponent = 0;     // u = p^exponent
  ExtNat quintet_index;  // (H_L : H_K H_K' H_F)
  ExtNat delta_index;    // ((Hbar_F)^Delta : Hbar_k)
  ExtNat fixed_index;    // ((Hbar_L)^D : Hbar_k)
  Rat p_local;           // (U_L : U_K U_K' U_F) / ((Ubar_L)^D : Ubar_k)
};
/// u_m from a Z-module; throws InputError naming an infinite index and
/// std::logic_error if u is not a power of p or differs from the p-local value.
UmResult compute_u_m(const DModule& h);

/// compute_u_m on h and on a presentation of h changed by a random
/// unimodular matrix.
LemmaReport verify_u_m(const DModule& h, std::uint64_t seed);

/// C(M) p^e idx^2 = 1.
LemmaReport verify_regulator_index(const PairedLattice& m);
/// Two pairings give the same regulator constant.
LemmaReport verify_pairing_independence(const DModule& m, std::uint64_t seed_a, std::uint64_t seed_b);

/// 2-part of lambda_k equals lambda_K.
LemmaReport verify_lambda_2part(const DModule& m);

/// (Hbar : Hbar^sigma Hbar^(tau^2 sigma) Hbar^G) lF lK^2 / lk^2 =
/// (H : H_K H_K' H_F) lK / lk for a Z-module whose torsion is fixed by G
/// with cyclic p-part (InputError otherwise, unless the hypothesis check is
/// switched off for exploration).
LemmaReport verify_unit_index_lambda(const DModule& u, bool check_hypothesis = true);

/// Orders of the class-group analogues, one prime's worth of data.
struct QuintetOrders {
  Int L, F, K, k;
  // invariant factors, when known
  std::optional<FinAbGroup> L_group, F_group, K_group, k_group;
};

/// |A_L| = p^-alpha |A_F| |A_K|^2 / |A_k|^2 u on p-parts.
LemmaReport verify_p_part_consistency(int p, const QuintetOrders& orders, const Rat& u, long alpha);
/// |A_L| |A_k|^2 = |A_F| |A_K|^2 on ell-parts; group-level when factors given.
LemmaReport verify_ell_part_consistency(const Int& ell, const QuintetOrders& orders);

}  // namespace bkd
