#pragma once

// Finitely generated modules with an action of D_2p, presented as Z^n / R
// with matrices T, S for tau and sigma. Submodules are lattices L with
// R <= L <= Z^n.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bkd/dihedral.hpp"
#include "bkd/exactalg.hpp"

namespace bkd {

/// Z, or Z localized at the prime ell.
struct Coefficients {
  std::optional<Int> ell;

  static Coefficients integers() { return {}; }
  static Coefficients local(const Int& ell) { return {ell}; }
  bool is_local() const { return ell.has_value(); }
  std::string name() const;
  friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

class DModule {
 public:
  /// Validates the action and the coefficient ring; throws InputError naming
  /// the failed condition.
  DModule(int p, Coefficients ring, const IntMatrix& relations, IntMatrix t, IntMatrix s);

  int p() const { return group_.p(); }
  const DihedralGroup& group() const { return group_; }
  const Coefficients& ring() const { return ring_; }
  std::size_t generators() const { return t_.rows(); }
  const IntMatrix& T() const { return t_; }
  const IntMatrix& S() const { return s_; }
  const Lattice& relations() const { return relations_; }
  Lattice whole() const { return Lattice::full(generators()); }

  IntMatrix matrix_of(GroupElement g) const { return element_matrix(g, t_, s_); }
  IntMatrix matrix_of(const AlgebraElement& x) const { return algebra_matrix(x, t_, s_); }

  bool is_finite() const { return relations_.rank() == generators(); }
  std::string to_string() const;

 private:
  DihedralGroup group_;
  Coefficients ring_;
  IntMatrix t_;
  IntMatrix s_;
  Lattice relations_;
};

/// M^H
Lattice invariants(const DModule& m, const Subgroup& h);
/// I_H M
Lattice augmentation(const DModule& m, const Subgroup& h);
/// N_H M
Lattice norm_image(const DModule& m, const Subgroup& h);
/// M[N_H]
Lattice norm_kernel(const DModule& m, const Subgroup& h);
/// f(L) + R for an endomorphism f.
Lattice endo_image(const DModule& m, const IntMatrix& f, const Lattice& l);
/// k L + R
Lattice multiple(const DModule& m, const Lattice& l, const Int& k);
/// {x in L : k x = 0 in M}
Lattice killed_by(const DModule& m, const Lattice& l, const Int& k);
/// Preimage in Z^n of the torsion of M.
Lattice torsion_lattice(const DModule& m);
/// Smallest D-stable submodule containing the given columns (plus R).
Lattice generated_submodule(const DModule& m, const IntMatrix& gens);
bool is_stable(const DModule& m, const Lattice& l);

FinAbGroup torsion_part(const DModule& m);
/// Structure of M/I_H M.
FinAbGroup coinvariants(const DModule& m, const Subgroup& h);
/// Structure of top/bottom; for a localized ring only the ell-part is kept.
FinAbGroup subquotient_structure(const DModule& m, const Lattice& top, const Lattice& bottom);
/// (sup : sub); for a localized ring the ell-part of the index.
ExtNat index_in(const DModule& m, const Lattice& sup, const Lattice& sub);
/// Structure of M itself.
FinAbGroup structure(const DModule& m);

struct FreeQuotient {
  DModule module;
  IntMatrix projection;  // Z^n -> Z^r, kills the torsion preimage
};
/// M / tor(M) with the induced action.
FreeQuotient free_quotient(const DModule& m);
/// Image of a lattice of M under the projection to M/tor.
Lattice project(const FreeQuotient& q, const Lattice& l);

/// M / N for a D-stable N containing R.
DModule quotient(const DModule& m, const Lattice& n);
/// The D-stable submodule L/R as a module in its own right, on the basis of L.
DModule submodule_as_module(const DModule& m, const Lattice& l);
/// M with generators changed by the unimodular matrix u (x = u y).
DModule change_of_basis(const DModule& m, const IntMatrix& u);
DModule direct_sum(const DModule& a, const DModule& b);

/// Multiplication by the inverse of 2 on a module whose torsion has odd
/// exponent e: x -> ((e + 1) / 2) x. Returns the matrix; requires finite M.
Int halving_factor(const DModule& m);

// Standard modules.
DModule trivial_module(int p, Coefficients ring = {});
DModule sign_module(int p, Coefficients ring = {});
DModule regular_module(int p, Coefficients ring = {});
/// Z[D / <sigma>], a permutation module of rank p.
DModule reflection_permutation_module(int p, Coefficients ring = {});
/// Z[D / G], a permutation module of rank 2.
DModule rotation_permutation_module(int p, Coefficients ring = {});
/// Z[zeta_p] with sigma acting by complex conjugation (rank p - 1).
DModule omega_module(int p, Coefficients ring = {});
/// Cyclic module Z/n with tau trivial and sigma = sign.
DModule cyclic_module(int p, const Int& n, int sigma_sign, Coefficients ring = {});

/// Deterministic generator (splitmix64 seeded xoshiro256**).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform in [lo, hi].
  long uniform(long lo, long hi);
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::uint64_t s_[4];
};

enum class Constraint { Finite, TorsionGTrivial, TorsionFree, TorsionCyclic };

struct GeneratorOptions {
  int p = 3;
  Coefficients ring;
  std::size_t rank_bound = 10;  // generators before relations
  long torsion_bound = 27;      // bound on torsion exponent
  std::vector<Constraint> constraints;
};

DModule random_dmodule(const GeneratorOptions& opts, std::uint64_t seed);

}  // namespace bkd
