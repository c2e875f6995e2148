#include "bkd/regconst.hpp"

namespace bkd {

namespace {

RatMatrix rat_transpose_product(const IntMatrix& g, const RatMatrix& b) {
  RatMatrix rg(g);
  return rg.transpose() * b * rg;
}

}  // namespace

PairedLattice::PairedLattice(DModule lattice, RatMatrix gram) : lattice_(std::move(lattice)), gram_(std::move(gram)) {
  std::size_t n = lattice_.generators();
  if (lattice_.relations().rank() != 0) throw InputError("a paired lattice must be torsion-free with no relations");
  if (gram_.rows() != n || gram_.cols() != n)
    throw InputError("gram matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  if (!gram_.is_symmetric()) throw InputError("gram matrix is not symmetric");
  if (!(rat_transpose_product(lattice_.T(), gram_) == gram_))
    throw InputError("gram matrix is not invariant under T (T' G T != G)");
  if (!(rat_transpose_product(lattice_.S(), gram_) == gram_))
    throw InputError("gram matrix is not invariant under S (S' G S != G)");
  if (n && determinant(gram_) == 0) throw InputError("gram matrix is degenerate");
}

RatMultiplicities rational_multiplicities(const DModule& m) {
  const DModule* lat = &m;
  std::optional<DModule> fq;
  if (m.relations().rank()) {
    fq.emplace(free_quotient(m).module);
    lat = &*fq;
  }
  int p = m.p();
  long rank = static_cast<long>(lat->generators());
  Int sum_triv = 0, sum_sign = 0;
  for (auto g : lat->group().elements()) {
    IntMatrix a = lat->matrix_of(g);
    Int tr = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) tr += a(i, i);
    sum_triv += tr;
    sum_sign += g.flip ? -tr : tr;
  }
  auto fail = [] { return InputError("not a rational representation of D"); };
  if (sum_triv % (2 * p) != 0 || sum_sign % (2 * p) != 0) throw fail();
  RatMultiplicities r;
  r.m_triv = Int(sum_triv / (2 * p)).get_si();
  r.m_sign = Int(sum_sign / (2 * p)).get_si();
  long rest = rank - r.m_triv - r.m_sign;
  if (r.m_triv < 0 || r.m_sign < 0 || rest < 0 || rest % (p - 1) != 0) throw fail();
  r.m_omega = rest / (p - 1);
  // the trace of tau is m_triv + m_sign - m_omega on a rational representation
  Int tr_tau = 0;
  for (std::size_t i = 0; i < lat->generators(); ++i) tr_tau += lat->T()(i, i);
  if (tr_tau != r.m_triv + r.m_sign - r.m_omega) throw fail();
  return r;
}

Rat scaled_fixed_determinant(const PairedLattice& m, const Subgroup& h) {
  Lattice fixed = invariants(m.lattice(), h);
  Rat det = gram_determinant(fixed.basis(), m.gram());
  if (det == 0) throw InputError("pairing is degenerate on the fixed sublattice M^" + h.name());
  return det / rat_power(Int(h.order(m.lattice().p())), static_cast<long>(fixed.rank()));
}

Rat regulator_constant(const PairedLattice& m) {
  Rat full = m.lattice().generators() ? determinant(m.gram()) : Rat(1);
  Rat d = scaled_fixed_determinant(m, Subgroup::full());
  Rat g = scaled_fixed_determinant(m, Subgroup::rotation());
  Rat s = scaled_fixed_determinant(m, Subgroup::reflection(0));
  return full * d * d / (g * s * s);
}

RegulatorIndexCheck regulator_index_identity(const PairedLattice& m) {
  const DModule& lat = m.lattice();
  RegulatorIndexCheck out;
  out.regulator_constant = regulator_constant(m);
  out.exponent = rational_multiplicities(lat).pairing_with_relation_character();
  Lattice sum = invariants(lat, Subgroup::reflection(0)) + invariants(lat, Subgroup::reflection(2 % lat.p())) +
                invariants(lat, Subgroup::rotation());
  out.index = lattice_index(lat.whole(), sum);
  if (out.index.is_finite()) {
    Rat lhs =
        out.regulator_constant * rat_power(Int(lat.p()), out.exponent) * Rat(out.index.value() * out.index.value());
    out.holds = lhs == 1;
  }
  return out;
}

RatMatrix average_pairing(const DModule& m, const RatMatrix& b0) {
  std::size_t n = m.generators();
  RatMatrix sum(n, n);
  for (auto g : m.group().elements()) {
    RatMatrix term = rat_transpose_product(m.matrix_of(g), b0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sum(i, j) += term(i, j);
  }
  return sum;
}

PairedLattice invariant_pairing_from_seed(const DModule& m, std::uint64_t seed) {
  std::size_t n = m.generators();
  Rng rng(seed);
  // B0 = A^T A + I is positive definite.
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform(-2, 2);
  IntMatrix b0 = a.transpose() * a + IntMatrix::identity(n);
  return PairedLattice(m, average_pairing(m, RatMatrix(b0)));
}

ExtNat lambda_of(const DModule& m, const Subgroup& h) {
  FreeQuotient q = free_quotient(m);
  Lattice image = project(q, invariants(m, h));
  Lattice fixed = invariants(q.module, h);
  return index_in(q.module, fixed, image);
}

}  // namespace bkd
