#include <utility>

#include "bkd/exactalg.hpp"

namespace bkd {

Lattice::Lattice(std::size_t ambient_dim) : dim_(ambient_dim), basis_(ambient_dim, 0) {}

Lattice Lattice::span(const IntMatrix& generators) {
  Lattice l(generators.rows());
  if (generators.cols() == 0) return l;
  ColumnHermite ch = column_hermite(generators, false);
  l.basis_ = std::move(ch.H);
  l.pivots_ = std::move(ch.pivots);
  return l;
}

Lattice Lattice::full(std::size_t ambient_dim) { return span(IntMatrix::identity(ambient_dim)); }

std::optional<IntVector> Lattice::coordinates(const IntVector& x) const {
  if (x.size() != dim_) throw std::invalid_argument("vector dimension does not match lattice");
  IntVector rest = x;
  IntVector coeff(rank());
  for (std::size_t k = 0; k < rank(); ++k) {
    std::size_t p = pivots_[k];
    const Int& piv = basis_(p, k);
    if (!mpz_divisible_p(rest[p].get_mpz_t(), piv.get_mpz_t())) return std::nullopt;
    Int c;
    mpz_divexact(c.get_mpz_t(), rest[p].get_mpz_t(), piv.get_mpz_t());
    coeff[k] = c;
    if (c != 0)
      for (std::size_t i = p; i < dim_; ++i)
        if (basis_(i, k) != 0) rest[i] -= c * basis_(i, k);
  }
  for (const auto& v : rest)
    if (v != 0) return std::nullopt;
  return coeff;
}

IntMatrix Lattice::coordinates(const IntMatrix& m) const {
  IntMatrix out(rank(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    auto c = coordinates(m.column(j));
    if (!c) throw std::logic_error("vector not in lattice");
    out.set_column(j, *c);
  }
  return out;
}

bool Lattice::contains(const IntVector& x) const { return coordinates(x).has_value(); }

bool Lattice::contains(const Lattice& other) const {
  if (other.dim_ != dim_) return false;
  for (std::size_t j = 0; j < other.rank(); ++j)
    if (!contains(other.basis_.column(j))) return false;
  return true;
}

Lattice Lattice::scaled(const Int& c) const { return span(basis_.scaled(c)); }

Lattice operator+(const Lattice& a, const Lattice& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("lattice sum dimension mismatch");
  return Lattice::span(hstack(a.basis_, b.basis_));
}

Lattice intersect(const Lattice& a, const Lattice& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("lattice intersection dimension mismatch");
  if (a.rank() == 0 || b.rank() == 0) return Lattice(a.ambient_dim());
  IntMatrix k = integer_kernel(hstack(a.basis(), b.basis().scaled(-1)));
  return Lattice::span(a.basis() * k.block(0, 0, a.rank(), k.cols()));
}

Lattice preimage(const IntMatrix& f, const Lattice& target) {
  if (f.rows() != target.ambient_dim()) throw std::invalid_argument("preimage dimension mismatch");
  IntMatrix k = integer_kernel(hstack(f, target.basis().scaled(-1)));
  return Lattice::span(k.block(0, 0, f.cols(), k.cols()));
}

Lattice image(const IntMatrix& f, const Lattice& source) {
  if (f.cols() != source.ambient_dim()) throw std::invalid_argument("image dimension mismatch");
  Lattice out(f.rows());
  if (source.rank() == 0) return out;
  return Lattice::span(f * source.basis());
}

Lattice saturation(const Lattice& l) {
  std::size_t n = l.ambient_dim();
  if (l.rank() == 0) return Lattice(n);
  if (l.rank() == n) return Lattice::full(n);
  IntMatrix orth = integer_kernel(l.basis().transpose());
  return Lattice::span(integer_kernel(orth.transpose()));
}

ExtNat lattice_index(const Lattice& sup, const Lattice& sub) {
  if (!sup.contains(sub)) throw std::logic_error("lattice_index: sub is not contained in sup");
  if (sup.rank() != sub.rank()) return ExtNat::infinite();
  if (sup.rank() == 0) return ExtNat(Int(1));
  return ExtNat(abs(determinant(sup.coordinates(sub.basis()))));
}

Subquotient::Subquotient(Lattice top, Lattice bottom) : top_(std::move(top)), bottom_(std::move(bottom)) {
  if (!top_.contains(bottom_)) throw std::logic_error("subquotient: bottom is not contained in top");
  std::size_t r = top_.rank();
  IntMatrix rel = top_.coordinates(bottom_.basis());
  SmithForm s = smith_normal_form(rel.cols() ? rel : IntMatrix(r, 0));
  IntVector diag = s.diagonal();
  std::vector<std::size_t> keep;
  IntVector all_orders;
  for (std::size_t i = 0; i < r; ++i) {
    Int d = i < diag.size() ? diag[i] : Int(0);
    if (d == 1) continue;
    keep.push_back(i);
    orders_.push_back(d);
  }
  generators_ = IntMatrix(top_.ambient_dim(), keep.size());
  to_generator_coords_ = IntMatrix(keep.size(), r);
  IntMatrix gens = r ? top_.basis() * s.Uinv : IntMatrix(top_.ambient_dim(), 0);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    generators_.set_column(k, gens.column(keep[k]));
    for (std::size_t j = 0; j < r; ++j) to_generator_coords_(k, j) = s.U(keep[k], j);
  }
  structure_ = FinAbGroup::from_cyclic_orders(orders_);
}

IntVector Subquotient::coordinates(const IntVector& x) const {
  auto c = top_.coordinates(x);
  if (!c) throw std::invalid_argument("element is outside the subquotient");
  IntVector out = to_generator_coords_ * *c;
  for (std::size_t k = 0; k < out.size(); ++k)
    if (orders_[k] != 0) mpz_fdiv_r(out[k].get_mpz_t(), out[k].get_mpz_t(), orders_[k].get_mpz_t());
  return out;
}

ExtNat subgroup_index(const IntMatrix& ambient_gens, const IntMatrix& relations, const IntMatrix& sub_gens) {
  std::size_t n = ambient_gens.rows();
  if (relations.rows() != n || sub_gens.rows() != n) throw InputError("generator dimensions do not agree");
  Lattice ambient = Lattice::span(hstack(ambient_gens, relations));
  Lattice sub = Lattice::span(hstack(sub_gens, relations));
  if (!ambient.contains(sub)) throw InputError("element outside ambient group");
  return lattice_index(ambient, sub);
}

Rat gram_determinant(const IntMatrix& basis, const RatMatrix& pairing) {
  if (pairing.rows() != pairing.cols() || pairing.rows() != basis.rows())
    throw InputError("pairing dimension does not match the lattice");
  if (!pairing.is_symmetric()) throw InputError("pairing is not symmetric");
  if (basis.cols() == 0) return 1;
  RatMatrix b(basis);
  return determinant(b.transpose() * pairing * b);
}

}  // namespace bkd
