#pragma once

// The dihedral group D_2p = <tau, sigma | tau^p = sigma^2 = 1, sigma tau sigma = tau^-1>,
// its subgroups, group-algebra elements and coset combinatorics.

#include <string>
#include <utility>
#include <vector>

#include "bkd/exactalg.hpp"

namespace bkd {

/// tau^rotation * sigma^flip
struct GroupElement {
  int rotation = 0;
  int flip = 0;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

class DihedralGroup {
 public:
  /// Throws InputError unless p is an odd prime.
  explicit DihedralGroup(int p);

  int p() const { return p_; }
  int order() const { return 2 * p_; }

  GroupElement identity() const { return {0, 0}; }
  GroupElement tau() const { return {1, 0}; }
  GroupElement sigma() const { return {0, 1}; }
  GroupElement multiply(GroupElement a, GroupElement b) const;
  GroupElement inverse(GroupElement a) const;
  GroupElement power(GroupElement a, long k) const;

  /// All 2p elements: index 2*i + s for tau^i sigma^s.
  std::vector<GroupElement> elements() const;
  int index_of(GroupElement g) const { return 2 * g.rotation + g.flip; }

 private:
  int p_;
};

enum class SubgroupKind { Trivial, Reflection, Rotation, Full };

struct Subgroup {
  SubgroupKind kind = SubgroupKind::Trivial;
  int j = 0;  // for Reflection: the subgroup <tau^j sigma>

  static Subgroup trivial() { return {SubgroupKind::Trivial, 0}; }
  static Subgroup reflection(int j) { return {SubgroupKind::Reflection, j}; }
  static Subgroup rotation() { return {SubgroupKind::Rotation, 0}; }
  static Subgroup full() { return {SubgroupKind::Full, 0}; }

  int order(int p) const;
  bool is_cyclic() const { return kind != SubgroupKind::Full; }
  std::vector<GroupElement> elements(const DihedralGroup& d) const;
  /// A generating set (empty for the trivial group).
  std::vector<GroupElement> generators(const DihedralGroup& d) const;
  bool contains(const DihedralGroup& d, GroupElement g) const;
  std::string name() const;

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

/// All p + 3 subgroups: trivial, the p reflections, rotation, full.
std::vector<Subgroup> subgroups(const DihedralGroup& d);
/// Conjugacy class representatives: trivial, reflection(0), rotation, full.
std::vector<Subgroup> subgroup_class_representatives();

/// g H g^-1
Subgroup conjugate(const DihedralGroup& d, const Subgroup& h, GroupElement g);

/// Sizes of the orbits of C (acting by right multiplication) on the right
/// cosets H\D, sorted ascending.
std::vector<int> orbits_on_cosets(const DihedralGroup& d, const Subgroup& h, const Subgroup& c);

/// Index [D : H].
int subgroup_index(const DihedralGroup& d, const Subgroup& h);

/// Integer coefficients on the four subgroup classes (trivial, reflection,
/// rotation, full).
struct RelationVector {
  long c_trivial = 0;
  long c_reflection = 0;
  long c_rotation = 0;
  long c_full = 0;

  /// {1} - 2<sigma> - G + 2D
  static RelationVector canonical() { return {1, -2, -1, 2}; }
  long coefficient(SubgroupKind kind) const;
  friend bool operator==(const RelationVector&, const RelationVector&) = default;
};

/// A formal Z-combination of group elements.
using AlgebraElement = std::vector<std::pair<Int, GroupElement>>;

AlgebraElement norm_element(const DihedralGroup& d, const Subgroup& h);
/// 1 - g
AlgebraElement one_minus(GroupElement g);
AlgebraElement algebra_product(const DihedralGroup& d, const AlgebraElement& a, const AlgebraElement& b);

/// Matrix of tau^i sigma^s given the matrices T, S of tau and sigma.
IntMatrix element_matrix(GroupElement g, const IntMatrix& t, const IntMatrix& s);
IntMatrix algebra_matrix(const AlgebraElement& x, const IntMatrix& t, const IntMatrix& s);

}  // namespace bkd
