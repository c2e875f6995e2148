#include "bkd/dihedral.hpp"

#include <algorithm>

namespace bkd {

namespace {

int mod(long a, int p) {
  long r = a % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

}  // namespace

DihedralGroup::DihedralGroup(int p) : p_(p) {
  if (p < 3 || !is_prime(Int(p))) throw InputError("p must be an odd prime, got " + std::to_string(p));
}

GroupElement DihedralGroup::multiply(GroupElement a, GroupElement b) const {
  int j = a.flip ? -b.rotation : b.rotation;
  return {mod(a.rotation + j, p_), a.flip ^ b.flip};
}

GroupElement DihedralGroup::inverse(GroupElement a) const {
  if (a.flip) return a;  // reflections are involutions
  return {mod(-a.rotation, p_), 0};
}

GroupElement DihedralGroup::power(GroupElement a, long k) const {
  if (k < 0) {
    a = inverse(a);
    k = -k;
  }
  GroupElement r = identity();
  for (long i = 0; i < k; ++i) r = multiply(r, a);
  return r;
}

std::vector<GroupElement> DihedralGroup::elements() const {
  std::vector<GroupElement> out;
  for (int i = 0; i < p_; ++i)
    for (int s = 0; s < 2; ++s) out.push_back({i, s});
  return out;
}

int Subgroup::order(int p) const {
  switch (kind) {
    case SubgroupKind::Trivial:
      return 1;
    case SubgroupKind::Reflection:
      return 2;
    case SubgroupKind::Rotation:
      return p;
    case SubgroupKind::Full:
      return 2 * p;
  }
  return 0;
}

std::vector<GroupElement> Subgroup::elements(const DihedralGroup& d) const {
  int p = d.p();
  switch (kind) {
    case SubgroupKind::Trivial:
      return {d.identity()};
    case SubgroupKind::Reflection:
      return {d.identity(), {mod(j, p), 1}};
    case SubgroupKind::Rotation: {
      std::vector<GroupElement> out;
      for (int i = 0; i < p; ++i) out.push_back({i, 0});
      return out;
    }
    case SubgroupKind::Full:
      return d.elements();
  }
  return {};
}

std::vector<GroupElement> Subgroup::generators(const DihedralGroup& d) const {
  switch (kind) {
    case SubgroupKind::Trivial:
      return {};
    case SubgroupKind::Reflection:
      return {{mod(j, d.p()), 1}};
    case SubgroupKind::Rotation:
      return {d.tau()};
    case SubgroupKind::Full:
      return {d.tau(), d.sigma()};
  }
  return {};
}

bool Subgroup::contains(const DihedralGroup& d, GroupElement g) const {
  auto els = elements(d);
  return std::find(els.begin(), els.end(), g) != els.end();
}

std::string Subgroup::name() const {
  switch (kind) {
    case SubgroupKind::Trivial:
      return "TRIVIAL";
    case SubgroupKind::Reflection:
      return "REFLECTION(" + std::to_string(j) + ")";
    case SubgroupKind::Rotation:
      return "ROTATION";
    case SubgroupKind::Full:
      return "FULL";
  }
  return "?";
}

std::vector<Subgroup> subgroups(const DihedralGroup& d) {
  std::vector<Subgroup> out{Subgroup::trivial()};
  for (int j = 0; j < d.p(); ++j) out.push_back(Subgroup::reflection(j));
  out.push_back(Subgroup::rotation());
  out.push_back(Subgroup::full());
  return out;
}

std::vector<Subgroup> subgroup_class_representatives() {
  return {Subgroup::trivial(), Subgroup::reflection(0), Subgroup::rotation(), Subgroup::full()};
}

Subgroup conjugate(const DihedralGroup& d, const Subgroup& h, GroupElement g) {
  if (h.kind != SubgroupKind::Reflection) return h;
  GroupElement r = d.multiply(d.multiply(g, {mod(h.j, d.p()), 1}), d.inverse(g));
  return Subgroup::reflection(r.rotation);
}

std::vector<int> orbits_on_cosets(const DihedralGroup& d, const Subgroup& h, const Subgroup& c) {
  auto all = d.elements();
  auto h_elems = h.elements(d);
  // coset label of g: smallest index among H g
  auto label = [&](GroupElement g) {
    int best = d.order();
    for (auto x : h_elems) best = std::min(best, d.index_of(d.multiply(x, g)));
    return best;
  };
  std::vector<int> cosets;
  for (auto g : all) {
    int l = label(g);
    if (std::find(cosets.begin(), cosets.end(), l) == cosets.end()) cosets.push_back(l);
  }
  auto c_elems = c.elements(d);
  std::vector<int> seen;
  std::vector<int> sizes;
  for (int l : cosets) {
    if (std::find(seen.begin(), seen.end(), l) != seen.end()) continue;
    GroupElement rep = all[static_cast<std::size_t>(l)];
    std::vector<int> orbit;
    for (auto x : c_elems) {
      int m = label(d.multiply(rep, x));
      if (std::find(orbit.begin(), orbit.end(), m) == orbit.end()) orbit.push_back(m);
    }
    seen.insert(seen.end(), orbit.begin(), orbit.end());
    sizes.push_back(static_cast<int>(orbit.size()));
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

int subgroup_index(const DihedralGroup& d, const Subgroup& h) { return d.order() / h.order(d.p()); }

long RelationVector::coefficient(SubgroupKind kind) const {
  switch (kind) {
    case SubgroupKind::Trivial:
      return c_trivial;
    case SubgroupKind::Reflection:
      return c_reflection;
    case SubgroupKind::Rotation:
      return c_rotation;
    case SubgroupKind::Full:
      return c_full;
  }
  return 0;
}

AlgebraElement norm_element(const DihedralGroup& d, const Subgroup& h) {
  AlgebraElement x;
  for (auto g : h.elements(d)) x.emplace_back(Int(1), g);
  return x;
}

AlgebraElement one_minus(GroupElement g) { return {{Int(1), GroupElement{0, 0}}, {Int(-1), g}}; }

AlgebraElement algebra_product(const DihedralGroup& d, const AlgebraElement& a, const AlgebraElement& b) {
  std::vector<Int> coeff(static_cast<std::size_t>(d.order()));
  for (const auto& [x, g] : a)
    for (const auto& [y, h] : b) coeff[static_cast<std::size_t>(d.index_of(d.multiply(g, h)))] += x * y;
  AlgebraElement out;
  auto els = d.elements();
  for (std::size_t i = 0; i < els.size(); ++i)
    if (coeff[i] != 0) out.emplace_back(coeff[i], els[i]);
  return out;
}

IntMatrix element_matrix(GroupElement g, const IntMatrix& t, const IntMatrix& s) {
  IntMatrix m = matrix_power(t, static_cast<unsigned>(g.rotation));
  return g.flip ? m * s : m;
}

IntMatrix algebra_matrix(const AlgebraElement& x, const IntMatrix& t, const IntMatrix& s) {
  IntMatrix out(t.rows(), t.cols());
  for (const auto& [c, g] : x) out = out + element_matrix(g, t, s).scaled(c);
  return out;
}

}  // namespace bkd
