#include "bkd/dmodule.hpp"

#include <sstream>

namespace bkd {

std::string Coefficients::name() const { return ell ? "Z_(" + ell->get_str() + ")" : "Z"; }

namespace {

// First column of m that is not in l, or -1.
long first_outside(const Lattice& l, const IntMatrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!l.contains(m.column(j))) return static_cast<long>(j);
  return -1;
}

}  // namespace

DModule::DModule(int p, Coefficients ring, const IntMatrix& relations, IntMatrix t, IntMatrix s)
    : group_(p), ring_(std::move(ring)), t_(std::move(t)), s_(std::move(s)) {
  std::size_t n = t_.rows();
  if (!t_.is_square() || s_.rows() != n || s_.cols() != n)
    throw InputError("T and S must be square matrices of the same size");
  if (relations.rows() != n) throw InputError("relations must have " + std::to_string(n) + " rows");
  relations_ = Lattice::span(relations);
  if (ring_.ell && (*ring_.ell < 2 || !is_prime(*ring_.ell)))
    throw InputError("localization prime " + ring_.ell->get_str() + " is not prime");

  IntMatrix id = IntMatrix::identity(n);
  const IntMatrix& rb = relations_.basis();
  if (rb.cols()) {
    if (first_outside(relations_, t_ * rb) >= 0)
      throw InputError("T does not preserve the relation lattice (T R not contained in R)");
    if (first_outside(relations_, s_ * rb) >= 0)
      throw InputError("S does not preserve the relation lattice (S R not contained in R)");
  }
  IntMatrix tp1 = matrix_power(t_, static_cast<unsigned>(p - 1));
  auto check = [&](const IntMatrix& diff, const std::string& what) {
    long j = first_outside(relations_, diff);
    if (j >= 0) throw InputError("action violates " + what + " modulo relations (generator " + std::to_string(j) + ")");
  };
  check(tp1 * t_ - id, "T^p = I");
  check(s_ * s_ - id, "S^2 = I");
  check(s_ * t_ * s_ - tp1, "S T S = T^(p-1)");

  if (ring_.ell) {
    FinAbGroup tor = torsion_part(*this);
    for (const auto& d : tor.torsion())
      if (prime_part(d, *ring_.ell) != d)
        throw InputError("torsion " + tor.to_string() + " is not an " + ring_.ell->get_str() +
                         "-group, as required over " + ring_.name());
  }
}

std::string DModule::to_string() const {
  std::ostringstream os;
  os << "DModule(p=" << p() << ", ring=" << ring_.name() << ", n=" << generators()
     << ", relations=" << relations_.basis().to_string() << ", T=" << t_.to_string() << ", S=" << s_.to_string() << ")";
  return os.str();
}

// ---- functors --------------------------------------------------------------

namespace {

Lattice stacked_preimage(const DModule& m, const std::vector<IntMatrix>& maps) {
  std::size_t n = m.generators();
  if (maps.empty()) return Lattice::full(n);
  IntMatrix stack(0, n);
  for (const auto& f : maps) stack = vstack(stack, f);
  Lattice target = Lattice::span(block_diagonal(m.relations().basis(), maps.size()));
  return preimage(stack, target);
}

}  // namespace

Lattice invariants(const DModule& m, const Subgroup& h) {
  std::vector<IntMatrix> maps;
  IntMatrix id = IntMatrix::identity(m.generators());
  for (auto g : h.generators(m.group())) maps.push_back(m.matrix_of(g) - id);
  return stacked_preimage(m, maps);
}

Lattice augmentation(const DModule& m, const Subgroup& h) {
  IntMatrix id = IntMatrix::identity(m.generators());
  IntMatrix gens = m.relations().basis();
  for (auto g : h.elements(m.group()))
    if (!(g == m.group().identity())) gens = hstack(gens, m.matrix_of(g) - id);
  return Lattice::span(gens);
}

Lattice norm_image(const DModule& m, const Subgroup& h) {
  return Lattice::span(hstack(m.relations().basis(), m.matrix_of(norm_element(m.group(), h))));
}

Lattice norm_kernel(const DModule& m, const Subgroup& h) {
  return preimage(m.matrix_of(norm_element(m.group(), h)), m.relations());
}

Lattice endo_image(const DModule& m, const IntMatrix& f, const Lattice& l) {
  return Lattice::span(hstack(m.relations().basis(), f * l.basis()));
}

Lattice multiple(const DModule& m, const Lattice& l, const Int& k) {
  return Lattice::span(hstack(m.relations().basis(), l.basis().scaled(k)));
}

Lattice killed_by(const DModule& m, const Lattice& l, const Int& k) {
  // x = B c with k B c in R
  Lattice coeffs = preimage(l.basis().scaled(k), m.relations());
  return Lattice::span(hstack(m.relations().basis(), l.basis() * coeffs.basis()));
}

Lattice torsion_lattice(const DModule& m) { return saturation(m.relations()); }

Lattice generated_submodule(const DModule& m, const IntMatrix& gens) {
  Lattice l = Lattice::span(hstack(m.relations().basis(), gens));
  for (;;) {
    Lattice next = l + Lattice::span(hstack(m.T() * l.basis(), m.S() * l.basis()));
    if (next == l) return l;
    l = std::move(next);
  }
}

bool is_stable(const DModule& m, const Lattice& l) {
  return l.contains(Lattice::span(m.T() * l.basis())) && l.contains(Lattice::span(m.S() * l.basis()));
}

FinAbGroup subquotient_structure(const DModule& m, const Lattice& top, const Lattice& bottom) {
  FinAbGroup g = Subquotient(top, bottom).structure();
  return m.ring().ell ? g.local_part(*m.ring().ell) : g;
}

ExtNat index_in(const DModule& m, const Lattice& sup, const Lattice& sub) {
  ExtNat idx = lattice_index(sup, sub);
  if (idx.is_infinite() || !m.ring().ell) return idx;
  return ExtNat(prime_part(idx.value(), *m.ring().ell));
}

FinAbGroup torsion_part(const DModule& m) {
  FinAbGroup g = Subquotient(torsion_lattice(m), m.relations()).structure();
  return m.ring().ell ? g.local_part(*m.ring().ell) : g;
}

FinAbGroup coinvariants(const DModule& m, const Subgroup& h) {
  return subquotient_structure(m, m.whole(), augmentation(m, h));
}

FinAbGroup structure(const DModule& m) { return subquotient_structure(m, m.whole(), m.relations()); }

FreeQuotient free_quotient(const DModule& m) {
  std::size_t n = m.generators();
  Lattice tor = torsion_lattice(m);
  std::size_t r = tor.rank();
  IntMatrix u, uinv;
  if (r == 0) {
    u = uinv = IntMatrix::identity(n);
  } else {
    // tor is saturated, so its Smith form is [I_r; 0] and U moves it onto
    // the first r coordinates.
    SmithForm s = smith_normal_form(tor.basis());
    u = s.U;
    uinv = s.Uinv;
  }
  IntMatrix proj = u.block(r, 0, n - r, n);
  IntMatrix lift = uinv.block(0, r, n, n - r);
  IntMatrix t = proj * m.T() * lift;
  IntMatrix s = proj * m.S() * lift;
  return {DModule(m.p(), m.ring(), IntMatrix(n - r, 0), t, s), proj};
}

Lattice project(const FreeQuotient& q, const Lattice& l) { return Lattice::span(q.projection * l.basis()); }

DModule quotient(const DModule& m, const Lattice& n) {
  if (!n.contains(m.relations())) throw std::logic_error("quotient by a lattice not containing the relations");
  return DModule(m.p(), m.ring(), n.basis(), m.T(), m.S());
}

DModule submodule_as_module(const DModule& m, const Lattice& l) {
  if (!l.contains(m.relations())) throw std::logic_error("submodule lattice must contain the relations");
  const IntMatrix& b = l.basis();
  IntMatrix rel = m.relations().rank() ? l.coordinates(m.relations().basis()) : IntMatrix(l.rank(), 0);
  return DModule(m.p(), m.ring(), rel, l.coordinates(m.T() * b), l.coordinates(m.S() * b));
}

DModule change_of_basis(const DModule& m, const IntMatrix& u) {
  IntMatrix inv = unimodular_inverse(u);
  IntMatrix rel = inv * m.relations().basis();
  return DModule(m.p(), m.ring(), rel, inv * m.T() * u, inv * m.S() * u);
}

DModule direct_sum(const DModule& a, const DModule& b) {
  if (a.p() != b.p() || !(a.ring() == b.ring())) throw std::invalid_argument("direct sum of incompatible modules");
  std::size_t na = a.generators(), nb = b.generators();
  auto diag = [&](const IntMatrix& x, const IntMatrix& y) {
    IntMatrix out(na + nb, x.cols() + y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = x(i, j);
    for (std::size_t i = 0; i < y.rows(); ++i)
      for (std::size_t j = 0; j < y.cols(); ++j) out(na + i, x.cols() + j) = y(i, j);
    return out;
  };
  return DModule(a.p(), a.ring(), diag(a.relations().basis(), b.relations().basis()), diag(a.T(), b.T()),
                 diag(a.S(), b.S()));
}

Int halving_factor(const DModule& m) {
  if (!m.is_finite()) throw std::invalid_argument("halving needs a finite module");
  FinAbGroup g = structure(m);
  Int e = g.torsion().empty() ? Int(1) : g.torsion().back();
  if (e % 2 == 0) throw std::invalid_argument("halving needs a module of odd order");
  return (e + 1) / 2;
}

// ---- standard modules --------------------------------------------------------

DModule trivial_module(int p, Coefficients ring) {
  return DModule(p, ring, IntMatrix(1, 0), IntMatrix::identity(1), IntMatrix::identity(1));
}

DModule sign_module(int p, Coefficients ring) {
  return DModule(p, ring, IntMatrix(1, 0), IntMatrix::identity(1), IntMatrix::from_rows({{-1}}));
}

DModule regular_module(int p, Coefficients ring) {
  DihedralGroup d(p);
  std::size_t n = static_cast<std::size_t>(2 * p);
  IntMatrix t(n, n), s(n, n);
  for (auto g : d.elements()) {
    auto col = static_cast<std::size_t>(d.index_of(g));
    t(static_cast<std::size_t>(d.index_of(d.multiply(d.tau(), g))), col) = 1;
    s(static_cast<std::size_t>(d.index_of(d.multiply(d.sigma(), g))), col) = 1;
  }
  return DModule(p, ring, IntMatrix(n, 0), t, s);
}

DModule reflection_permutation_module(int p, Coefficients ring) {
  std::size_t n = static_cast<std::size_t>(p);
  IntMatrix t(n, n), s(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    t((i + 1) % n, i) = 1;
    s((n - i) % n, i) = 1;
  }
  return DModule(p, ring, IntMatrix(n, 0), t, s);
}

DModule rotation_permutation_module(int p, Coefficients ring) {
  return DModule(p, ring, IntMatrix(2, 0), IntMatrix::identity(2), IntMatrix::from_rows({{0, 1}, {1, 0}}));
}

DModule omega_module(int p, Coefficients ring) {
  // basis 1, z, ..., z^(p-2) of Z[z], z^(p-1) = -(1 + z + ... + z^(p-2))
  std::size_t n = static_cast<std::size_t>(p - 1);
  auto power_column = [&](std::size_t k) {
    IntVector v(n);
    k %= static_cast<std::size_t>(p);
    if (k < n)
      v[k] = 1;
    else
      for (auto& x : v) x = -1;
    return v;
  };
  IntMatrix t(n, n), s(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    t.set_column(i, power_column(i + 1));
    s.set_column(i, power_column(static_cast<std::size_t>(p) - i));
  }
  return DModule(p, ring, IntMatrix(n, 0), t, s);
}

DModule cyclic_module(int p, const Int& n, int sigma_sign, Coefficients ring) {
  IntMatrix rel(1, 1);
  rel(0, 0) = n;
  return DModule(p, ring, rel, IntMatrix::identity(1), IntMatrix::from_rows({{sigma_sign < 0 ? -1L : 1L}}));
}

}  // namespace bkd
