#pragma once

// Element-by-element computations on small finite D-modules. Everything
// here uses plain modular arithmetic on coset representatives, with its own
// triangular reduction, so it shares no code with the Smith/Hermite
// machinery it is used to check.

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "bkd/dmodule.hpp"

namespace brute {

using bkd::Int;
using Vec = std::vector<long>;

class FiniteModule {
 public:
  // Throws std::runtime_error when M is infinite or larger than max_order.
  explicit FiniteModule(const bkd::DModule& m, long max_order = 4096) : n_(m.generators()), p_(m.p()) {
    // columns of a lower-triangular basis of R, one per coordinate
    std::vector<std::vector<Int>> cols;
    const bkd::IntMatrix& r = m.relations().basis();
    for (std::size_t c = 0; c < r.cols(); ++c) cols.push_back(r.column(c));
    basis_.assign(n_, std::vector<Int>(n_, 0));
    for (std::size_t i = 0; i < n_; ++i) {
      // gcd-combine all remaining columns on coordinate i
      std::vector<std::vector<Int>> rest;
      std::vector<Int> pivot(n_, 0);
      for (auto& c : cols) {
        while (c[i] != 0) {
          if (pivot[i] == 0) {
            std::swap(pivot, c);
            continue;
          }
          Int q = c[i] / pivot[i];
          for (std::size_t k = 0; k < n_; ++k) c[k] -= q * pivot[k];
          if (c[i] != 0) std::swap(pivot, c);
        }
        rest.push_back(c);
      }
      if (pivot[i] == 0) throw std::runtime_error("infinite module");
      if (pivot[i] < 0)
        for (auto& x : pivot) x = -x;
      basis_[i] = pivot;
      cols = rest;
    }
    long order = 1;
    for (std::size_t i = 0; i < n_; ++i) {
      if (basis_[i][i] > max_order) throw std::runtime_error("module too large");
      order *= basis_[i][i].get_si();
      if (order > max_order) throw std::runtime_error("module too large");
    }
    // enumerate representatives 0 <= x_i < d_i
    Vec x(n_, 0);
    for (long e = 0; e < order; ++e) {
      index_[x] = static_cast<long>(elements_.size());
      elements_.push_back(x);
      for (std::size_t i = 0; i < n_; ++i) {
        if (++x[i] < basis_[i][i].get_si()) break;
        x[i] = 0;
      }
    }
    for (const auto& g : m.group().elements()) actions_.push_back(table(m.matrix_of(g)));
  }

  long order() const { return static_cast<long>(elements_.size()); }
  int p() const { return p_; }
  long zero() const { return 0; }

  long add(long a, long b) const {
    Vec s(n_);
    for (std::size_t i = 0; i < n_; ++i) s[i] = elements_[a][i] + elements_[b][i];
    return reduce(s);
  }
  long neg(long a) const {
    Vec s(n_);
    for (std::size_t i = 0; i < n_; ++i) s[i] = -elements_[a][i];
    return reduce(s);
  }
  long scale(long a, long k) const {
    Vec s(n_);
    for (std::size_t i = 0; i < n_; ++i) s[i] = k * elements_[a][i];
    return reduce(s);
  }
  // the element tau^i sigma^s acting on x
  long act(const bkd::GroupElement& g, long x) const { return actions_[2 * g.rotation + g.flip][x]; }

  std::vector<bkd::GroupElement> group(const bkd::Subgroup& h) const {
    bkd::DihedralGroup d(p_);
    return h.elements(d);
  }

  long norm(const bkd::Subgroup& h, long x) const {
    long s = 0;
    for (const auto& g : group(h)) s = add(s, act(g, x));
    return s;
  }

  std::set<long> invariants(const bkd::Subgroup& h) const {
    std::set<long> out;
    for (long x = 0; x < order(); ++x) {
      bool fixed = true;
      for (const auto& g : group(h)) fixed = fixed && act(g, x) == x;
      if (fixed) out.insert(x);
    }
    return out;
  }
  std::set<long> norm_image(const bkd::Subgroup& h) const {
    std::set<long> out;
    for (long x = 0; x < order(); ++x) out.insert(norm(h, x));
    return out;
  }
  std::set<long> norm_kernel(const bkd::Subgroup& h) const {
    std::set<long> out;
    for (long x = 0; x < order(); ++x)
      if (norm(h, x) == 0) out.insert(x);
    return out;
  }
  std::set<long> augmentation(const bkd::Subgroup& h) const {
    std::vector<long> gens;
    for (long x = 0; x < order(); ++x)
      for (const auto& g : group(h)) gens.push_back(add(act(g, x), neg(x)));
    return span(gens);
  }
  // subgroup generated by the given elements
  std::set<long> span(const std::vector<long>& gens) const {
    std::set<long> out{0};
    std::vector<long> frontier{0};
    while (!frontier.empty()) {
      std::vector<long> next;
      for (long a : frontier)
        for (long g : gens) {
          long b = add(a, g);
          if (out.insert(b).second) next.push_back(b);
        }
      frontier = std::move(next);
    }
    return out;
  }

  // |H^j-hat(H, M)| for cyclic H from the defining quotients.
  long tate_order(const bkd::Subgroup& h, long j) const {
    if (j % 2 == 0) return static_cast<long>(invariants(h).size() / norm_image(h).size());
    return static_cast<long>(norm_kernel(h).size() / augmentation(h).size());
  }

  // |H^1(D, M)| from crossed homomorphisms, determined by a = f(tau) and
  // b = f(sigma) subject to the defining relations of D.
  long h1_dihedral() const {
    bkd::DihedralGroup d(p_);
    bkd::GroupElement tau = d.tau(), sigma = d.sigma();
    long cocycles = 0;
    for (long a = 0; a < order(); ++a) {
      // f(tau^p) = (1 + tau + ... + tau^{p-1}) a = 0
      long s = 0, t = a;
      for (int i = 0; i < p_; ++i) {
        s = add(s, t);
        t = act(tau, t);
      }
      if (s != 0) continue;
      for (long b = 0; b < order(); ++b) {
        if (add(b, act(sigma, b)) != 0) continue;  // f(sigma^2) = 0
        // f(sigma tau) = b + sigma a must equal f(tau^-1 sigma) = -tau^-1 a + tau^-1 b
        bkd::GroupElement tinv = d.inverse(tau);
        long lhs = add(b, act(sigma, a));
        long rhs = add(neg(act(tinv, a)), act(tinv, b));
        if (lhs == rhs) ++cocycles;
      }
    }
    std::set<std::pair<long, long>> coboundaries;
    for (long x = 0; x < order(); ++x) coboundaries.insert({add(act(tau, x), neg(x)), add(act(sigma, x), neg(x))});
    return cocycles / static_cast<long>(coboundaries.size());
  }

 private:
  long reduce(Vec x) const {
    for (std::size_t i = 0; i < n_; ++i) {
      long d = basis_[i][i].get_si();
      long q = x[i] >= 0 ? x[i] / d : -((-x[i] + d - 1) / d);
      if (q != 0)
        for (std::size_t k = i; k < n_; ++k) x[k] -= q * basis_[i][k].get_si();
    }
    return index_.at(x);
  }
  std::vector<long> table(const bkd::IntMatrix& a) const {
    std::vector<long> out;
    for (const Vec& x : elements_) {
      Vec y(n_, 0);
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) y[i] += a(i, k).get_si() * x[k];
      out.push_back(reduce(y));
    }
    return out;
  }

  std::size_t n_;
  int p_;
  std::vector<std::vector<Int>> basis_;  // basis_[i]: pivot column for coordinate i
  std::vector<Vec> elements_;
  std::map<Vec, long> index_;
  std::vector<std::vector<long>> actions_;
};

inline long prime_part(long n, long q) {
  long out = 1;
  while (n % q == 0) {
    n /= q;
    out *= q;
  }
  return out;
}

}  // namespace brute
