#include "bkd/tate.hpp"

namespace bkd {

namespace {

long floor_mod(long a, long m) { return ((a % m) + m) % m; }

CohomologyGroup make_group(const DModule& m, Lattice top, Lattice bottom, long j, const Subgroup& h) {
  FinAbGroup s = subquotient_structure(m, top, bottom);
  return {std::move(s), std::move(top), std::move(bottom), j, h};
}

}  // namespace

CohomologyGroup tate_cyclic(const DModule& m, const Subgroup& h, long j) {
  if (!h.is_cyclic()) throw InputError("tate_cyclic needs a cyclic subgroup, got " + h.name());
  if (floor_mod(j, 2) == 0) return make_group(m, invariants(m, h), norm_image(m, h), j, h);
  return make_group(m, norm_kernel(m, h), augmentation(m, h), j, h);
}

DeltaAction delta_action_on(const DModule& m, long j) {
  CohomologyGroup g = tate_cyclic(m, Subgroup::rotation(), j);
  long k = floor_mod(j, 2) == 0 ? j / 2 : (j + 1) / 2;
  int sign = floor_mod(k, 2) == 0 ? 1 : -1;
  return {std::move(g), sign, m.S().scaled(sign)};
}

bool is_involution(const DModule& m, const DeltaAction& a) {
  (void)m;
  const Lattice& top = a.group.top;
  IntMatrix sq = a.matrix * a.matrix;
  for (std::size_t c = 0; c < top.rank(); ++c) {
    IntVector x = top.basis().column(c);
    IntVector y = sq * x;
    for (std::size_t i = 0; i < x.size(); ++i) y[i] -= x[i];
    if (!a.group.bottom.contains(y)) return false;
  }
  return true;
}

CohomologyGroup delta_fixed_points(const DModule& m, long j) {
  DeltaAction a = delta_action_on(m, j);
  IntMatrix shift = a.matrix - IntMatrix::identity(m.generators());
  Lattice fixed = intersect(a.group.top, preimage(shift, a.group.bottom));
  return make_group(m, std::move(fixed), a.group.bottom, j, Subgroup::rotation());
}

CohomologyGroup cohomology_dihedral(const DModule& m, long j) {
  if (j < 1) throw InputError("cohomology_dihedral needs j >= 1");
  CohomologyGroup p_part = delta_fixed_points(m, j);
  CohomologyGroup two_part = tate_cyclic(m, Subgroup::reflection(0), j);
  // The sum has no single subquotient; representatives are those of the p-part.
  CohomologyGroup out = p_part;
  out.structure = direct_sum(p_part.structure, two_part.structure);
  out.subgroup = Subgroup::full();
  return out;
}

CohomologyGroup tate_dihedral(const DModule& m, long j) {
  long r = floor_mod(j, 4);
  CohomologyGroup out;
  if (r == 0) {
    out = make_group(m, invariants(m, Subgroup::full()), norm_image(m, Subgroup::full()), j, Subgroup::full());
  } else if (r == 3) {
    out = make_group(m, norm_kernel(m, Subgroup::full()), augmentation(m, Subgroup::full()), j, Subgroup::full());
  } else {
    out = cohomology_dihedral(m, r);
    out.degree = j;
  }
  if (!out.structure.is_finite()) throw InfiniteTateGroup();
  if (j >= 3 && (r == 0 || r == 3)) {
    CohomologyGroup assembled = cohomology_dihedral(m, r == 3 ? 3 : 4);
    if (!(assembled.structure == out.structure))
      throw std::logic_error("Tate cohomology of D disagrees between degree " + std::to_string(j) +
                             " and its Sylow assembly");
  }
  return out;
}

}  // namespace bkd
