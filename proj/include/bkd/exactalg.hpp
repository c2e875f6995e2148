#pragma once

// Exact integer and rational linear algebra: matrices over Z and Q, Smith
// normal form, lattices in Z^n with Hermite bases, subquotients, and
// finitely generated abelian groups in invariant-factor form.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bkd {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;

/// Raised for malformed caller input (bad files, violated preconditions that
/// the caller controls). Internal invariant failures use std::logic_error.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);
  static IntMatrix diagonal(const IntVector& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector column(std::size_t j) const;
  IntVector row(std::size_t i) const;
  void set_column(std::size_t j, const IntVector& v);

  IntMatrix transpose() const;
  IntMatrix columns(std::size_t first, std::size_t count) const;
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& factor);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, const IntVector& v);
  IntMatrix scaled(const Int& c) const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
/// Block-diagonal matrix with `copies` copies of `block`.
IntMatrix block_diagonal(const IntMatrix& block, std::size_t copies);
IntMatrix matrix_power(const IntMatrix& m, unsigned exponent);
/// Fraction-free (Bareiss) determinant.
Int determinant(const IntMatrix& m);

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  explicit RatMatrix(const IntMatrix& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatMatrix transpose() const;
  bool is_symmetric() const;
  friend bool operator==(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

Rat determinant(const RatMatrix& m);

/// A nonnegative integer or INFINITE.
class ExtNat {
 public:
  ExtNat() : value_(Int(1)) {}
  explicit ExtNat(Int v) : value_(std::move(v)) {}
  static ExtNat infinite() { return ExtNat(std::nullopt); }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  /// Throws std::logic_error when infinite.
  const Int& value() const;

  std::string to_string() const;
  friend bool operator==(const ExtNat& a, const ExtNat& b) { return a.value_ == b.value_; }

 private:
  explicit ExtNat(std::nullopt_t) : value_(std::nullopt) {}
  std::optional<Int> value_;
};

/// Finitely generated abelian group Z^r + Z/d1 + ... + Z/dt with d1 | d2 | ... and di >= 2.
class FinAbGroup {
 public:
  FinAbGroup() = default;
  /// Normalizes an arbitrary list of cyclic orders (0 = infinite cyclic, 1 dropped).
  static FinAbGroup from_cyclic_orders(const IntVector& orders);
  static FinAbGroup trivial() { return FinAbGroup(); }

  std::size_t free_rank() const { return free_rank_; }
  const IntVector& torsion() const { return torsion_; }
  bool is_finite() const { return free_rank_ == 0; }
  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
  ExtNat order() const;
  Int torsion_order() const;
  /// The ell-primary part (free rank kept).
  FinAbGroup local_part(const Int& ell) const;

  std::string to_string() const;
  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) = default;
  friend FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b);

 private:
  std::size_t free_rank_ = 0;
  IntVector torsion_;
};

/// U * M * V = D with U, V unimodular and D diagonal with d1 | d2 | ...
/// Uinv is the inverse of U (kept because cokernel generators need it).
struct SmithForm {
  IntMatrix U;
  IntMatrix Uinv;
  IntMatrix D;
  IntMatrix V;
  std::size_t rank = 0;
  IntVector diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);
/// Inverse of a unimodular matrix; throws std::invalid_argument otherwise.
IntMatrix unimodular_inverse(const IntMatrix& u);
/// Diagonal of the Smith form only (cheaper; no transforms).
IntVector smith_invariants(const IntMatrix& m);

/// Structure of Z^rows / (column span of m).
FinAbGroup cokernel_structure(const IntMatrix& m);

/// Column-style Hermite form: m * Q = [H | 0] with Q unimodular.
struct ColumnHermite {
  IntMatrix H;  // rows x rank, canonical basis of the column lattice
  IntMatrix Q;  // cols x cols
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};
ColumnHermite column_hermite(const IntMatrix& m, bool want_transform);

/// Basis (columns) of {x : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

/// Sublattice of Z^n stored by its canonical Hermite basis.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(std::size_t ambient_dim);  // zero lattice
  static Lattice span(const IntMatrix& generators);
  static Lattice full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return basis_.cols(); }
  const IntMatrix& basis() const { return basis_; }

  bool contains(const IntVector& x) const;
  bool contains(const Lattice& other) const;
  std::optional<IntVector> coordinates(const IntVector& x) const;
  /// Coordinates of every column of `m` (all must lie in the lattice).
  IntMatrix coordinates(const IntMatrix& m) const;

  Lattice scaled(const Int& c) const;
  friend Lattice operator+(const Lattice& a, const Lattice& b);
  friend bool operator==(const Lattice& a, const Lattice& b) = default;

 private:
  std::size_t dim_ = 0;
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

Lattice intersect(const Lattice& a, const Lattice& b);
/// {x : f x in target}.
Lattice preimage(const IntMatrix& f, const Lattice& target);
/// f(source).
Lattice image(const IntMatrix& f, const Lattice& source);
/// (source tensor Q) intersected with Z^n.
Lattice saturation(const Lattice& l);
/// (sup : sub); sub must be contained in sup.
ExtNat lattice_index(const Lattice& sup, const Lattice& sub);

/// Z/B for lattices B inside Z, with explicit cyclic generators.
class Subquotient {
 public:
  Subquotient(Lattice top, Lattice bottom);

  const FinAbGroup& structure() const { return structure_; }
  /// Cyclic orders of the generators, in order (0 = infinite).
  const IntVector& orders() const { return orders_; }
  /// Representatives in Z^n of the generators (columns).
  const IntMatrix& generators() const { return generators_; }
  /// Coordinates of x in terms of the generators, reduced modulo the orders.
  IntVector coordinates(const IntVector& x) const;
  const Lattice& top() const { return top_; }
  const Lattice& bottom() const { return bottom_; }

 private:
  Lattice top_;
  Lattice bottom_;
  FinAbGroup structure_;
  IntVector orders_;
  IntMatrix generators_;
  IntMatrix to_generator_coords_;  // (kept rows of U) * top-coordinates
};

/// |(ambient_gens + R) / (sub_gens + R)| where R is the column span of
/// `relations`; throws InputError("element outside ambient group") when a
/// generator of `sub` is not in the ambient group.
ExtNat subgroup_index(const IntMatrix& ambient_gens, const IntMatrix& relations, const IntMatrix& sub_gens);

/// det(B^T P B) for basis columns B; 1 for an empty basis.
Rat gram_determinant(const IntMatrix& basis, const RatMatrix& pairing);

// Small number-theory helpers shared across modules.
unsigned valuation(const Int& value, const Int& prime);  // value != 0
Int prime_part(const Int& value, const Int& prime);      // largest prime power dividing value
Int prime_to_part(const Int& value, const Int& prime);
bool is_prime(const Int& n);
/// If q = prime^k for some k in Z (q a nonzero rational), returns k.
std::optional<long> prime_power_exponent(const Rat& q, const Int& prime);
Rat rat_power(const Int& base, long exponent);
std::vector<Int> prime_divisors(Int n);  // trial division; n > 0

}  // namespace bkd
