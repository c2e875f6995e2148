#pragma once

// Rational representations of D_2p, regulator constants of lattices with an
// invariant pairing, and the lambda indices comparing fixed points before and
// after dividing out torsion.

#include <cstdint>

#include "bkd/dmodule.hpp"

namespace bkd {

/// A torsion-free D-lattice (no relations) with a D-invariant, symmetric,
/// nondegenerate rational Gram matrix on its basis.
class PairedLattice {
 public:
  /// Throws InputError naming the violated condition.
  PairedLattice(DModule lattice, RatMatrix gram);

  const DModule& lattice() const { return lattice_; }
  const RatMatrix& gram() const { return gram_; }

 private:
  DModule lattice_;
  RatMatrix gram_;
};

/// Multiplicities of the trivial, sign and (p-1)-dimensional irreducible
/// rational representations.
struct RatMultiplicities {
  long m_triv = 0;
  long m_sign = 0;
  long m_omega = 0;

  /// <V, 1 - eps - omega> for the orthonormal basis {1, eps, omega}.
  long pairing_with_relation_character() const { return m_triv - m_sign - m_omega; }
  friend bool operator==(const RatMultiplicities&, const RatMultiplicities&) = default;
};

/// Multiplicities of M tensor Q; throws InputError("not a rational
/// representation of D") when the character averages are not integral.
RatMultiplicities rational_multiplicities(const DModule& m);

/// C(M) = det(<,>) det(<,>/2p | M^D)^2 / (det(<,>/p | M^G) det(<,>/2 | M^sigma)^2).
Rat regulator_constant(const PairedLattice& m);

/// det((1/|H|) <,> restricted to M^H); the empty determinant is 1.
Rat scaled_fixed_determinant(const PairedLattice& m, const Subgroup& h);

struct RegulatorIndexCheck {
  Rat regulator_constant;
  long exponent = 0;   // <M tensor Q, 1 - eps - omega>
  ExtNat index;        // (M : M^sigma + M^(tau^2 sigma) + M^G)
  bool holds = false;  // C * p^exponent * index^2 == 1
};
RegulatorIndexCheck regulator_index_identity(const PairedLattice& m);

/// sum over g in D of g^T B0 g.
RatMatrix average_pairing(const DModule& m, const RatMatrix& b0);
/// Invariant positive-definite pairing from a random positive-definite B0.
PairedLattice invariant_pairing_from_seed(const DModule& m, std::uint64_t seed);

/// (Mbar^H : image of M^H) where Mbar = M / tor(M). This is the order of the
/// cokernel of the map from the torsion-free quotient of M^H into Mbar^H.
ExtNat lambda_of(const DModule& m, const Subgroup& h);

}  // namespace bkd
