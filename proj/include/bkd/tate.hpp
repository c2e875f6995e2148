#pragma once

// Tate cohomology of D_2p-modules: cyclic subgroups via norm/augmentation
// subquotients, the whole group via Sylow assembly with the Delta twist,
// and an independent inhomogeneous-cochain oracle.

#include <stdexcept>

#include "bkd/dmodule.hpp"

namespace bkd {

struct CohomologyGroup {
  FinAbGroup structure;
  Lattice top;  // representatives live in top / bottom
  Lattice bottom;
  long degree = 0;
  Subgroup subgroup;

  ExtNat order() const { return structure.order(); }
};

/// Thrown when a Tate group that must be finite is not.
class InfiniteTateGroup : public std::runtime_error {
 public:
  InfiniteTateGroup() : std::runtime_error("infinite Tate group") {}
};

/// H^j-hat(H, M) for a cyclic H: even degrees M^H / N_H M, odd degrees
/// M[N_H] / I_H M.
CohomologyGroup tate_cyclic(const DModule& m, const Subgroup& h, long j);

/// The involution induced by sigma on H^j-hat(G, M), as a subquotient
/// endomorphism: x -> sign * S x with sign = (-1)^k where j = 2k or 2k - 1.
struct DeltaAction {
  CohomologyGroup group;
  int sign = 1;
  IntMatrix matrix;  // sign * S on representatives
};
DeltaAction delta_action_on(const DModule& m, long j);

/// Order-2 check of a delta action on its subquotient (should always hold).
bool is_involution(const DModule& m, const DeltaAction& a);

/// Fixed points of the delta action, as a subquotient of H^j-hat(G, M).
CohomologyGroup delta_fixed_points(const DModule& m, long j);

/// H^j(D, M) for j >= 1: (H^j(G,M))^Delta + H^j(<sigma>, M).
CohomologyGroup cohomology_dihedral(const DModule& m, long j);

/// H^j-hat(D, M) for any j, via degrees 0 and -1 directly and the rest by
/// period 4. Throws InfiniteTateGroup for infinite results.
CohomologyGroup tate_dihedral(const DModule& m, long j);

/// Thrown by the cochain oracle for inputs that are too large.
class SizeBoundExceeded : public std::runtime_error {
 public:
  SizeBoundExceeded() : std::runtime_error("size bound exceeded") {}
};

/// H^j(H, M) from the inhomogeneous cochain complex, 0 <= j <= 3. Finite
/// modules use modular elimination over Z/q^a per prime q; modules with a
/// free part use integer lattices with a tighter size bound.
FinAbGroup bar_resolution_oracle(const DModule& m, const Subgroup& h, int j);

}  // namespace bkd
