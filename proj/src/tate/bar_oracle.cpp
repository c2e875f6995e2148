// Group cohomology from inhomogeneous cochains. Deliberately shares no code
// with the norm/augmentation route in tate.cpp beyond the module presentation.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "bkd/tate.hpp"

namespace bkd {

namespace {

using i64 = std::int64_t;

constexpr std::size_t kMaxCochainRank = 20000;
constexpr std::size_t kMaxEntries = 60'000'000;
constexpr std::size_t kMaxLatticeRank = 400;

i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>((static_cast<__int128>(a) * b) % m); }
i64 norm(i64 a, i64 m) { return ((a % m) + m) % m; }

i64 inverse_mod(i64 a, i64 m) {
  Int r;
  if (!mpz_invert(r.get_mpz_t(), Int(static_cast<long>(a)).get_mpz_t(), Int(static_cast<long>(m)).get_mpz_t()))
    throw std::logic_error("bar oracle: non-unit pivot");
  return r.get_si();
}

struct DenseMod {
  std::size_t rows = 0, cols = 0;
  std::vector<i64> a;
  DenseMod(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  i64& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  i64 at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// Valuation at q of a nonzero residue modulo q^a (returns a for zero).
int val(i64 x, i64 q, int a) {
  if (x == 0) return a;
  int v = 0;
  while (x % q == 0) {
    x /= q;
    ++v;
  }
  return v;
}

// Diagonalizes A over Z/q^a with row operations (untracked) and column
// operations tracked in Qinv (Q itself is not needed). Returns the pivot
// valuation of each column position after the column permutation; columns
// without a pivot get valuation a.
std::vector<int> chain_ring_eliminate(DenseMod& A, DenseMod* qinv, i64 q, int a, i64 mod) {
  std::size_t m = A.rows, n = A.cols;
  std::vector<int> vals(n, a);
  std::size_t limit = std::min(m, n);
  for (std::size_t t = 0; t < limit; ++t) {
    int best = a;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = t; i < m && best > 0; ++i)
      for (std::size_t j = t; j < n; ++j) {
        i64 x = A.at(i, j);
        if (x == 0) continue;
        int v = val(x, q, a);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    if (best == a) break;
    if (bi != t)
      for (std::size_t j = 0; j < n; ++j) std::swap(A.at(t, j), A.at(bi, j));
    if (bj != t) {
      for (std::size_t i = 0; i < m; ++i) std::swap(A.at(i, t), A.at(i, bj));
      if (qinv)
        for (std::size_t j = 0; j < qinv->cols; ++j) std::swap(qinv->at(t, j), qinv->at(bj, j));
    }
    i64 qv = 1;
    for (int k = 0; k < best; ++k) qv *= q;
    i64 uinv = inverse_mod(A.at(t, t) / qv, mod);
    for (std::size_t i = t + 1; i < m; ++i) {
      i64 e = A.at(i, t);
      if (e == 0) continue;
      i64 f = mulmod(e / qv, uinv, mod);
      for (std::size_t j = t; j < n; ++j)
        if (A.at(t, j)) A.at(i, j) = norm(A.at(i, j) - mulmod(f, A.at(t, j), mod), mod);
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      i64 e = A.at(t, j);
      if (e == 0) continue;
      i64 f = mulmod(e / qv, uinv, mod);
      A.at(t, j) = 0;  // column t is zero below row t
      if (qinv)
        for (std::size_t c = 0; c < qinv->cols; ++c)
          if (qinv->at(j, c)) qinv->at(t, c) = norm(qinv->at(t, c) + mulmod(f, qinv->at(j, c), mod), mod);
    }
    vals[t] = best;
  }
  return vals;
}

i64 ipow(i64 q, int e) {
  i64 r = 1;
  for (int i = 0; i < e; ++i) r *= q;
  return r;
}

// Walks the terms of d^j : C^j -> C^{j+1}. For each output tuple it calls
// emit(out_tuple, in_tuple, g, sign, act): act = true means "apply element g",
// otherwise add sign times the identity.
template <typename Emit>
void differential(std::size_t h, int j, const std::vector<std::vector<std::size_t>>& mult, const Emit& emit) {
  std::size_t out_tuples = 1;
  for (int i = 0; i <= j; ++i) out_tuples *= h;
  std::vector<std::size_t> g(static_cast<std::size_t>(j + 1));
  for (std::size_t t = 0; t < out_tuples; ++t) {
    std::size_t rest = t;
    for (int i = j; i >= 0; --i) {
      g[static_cast<std::size_t>(i)] = rest % h;
      rest /= h;
    }
    auto encode = [&](const std::vector<std::size_t>& v) {
      std::size_t code = 0;
      for (auto x : v) code = code * h + x;
      return code;
    };
    // g1 . f(g2, ..., g_{j+1})
    std::vector<std::size_t> tail(g.begin() + 1, g.end());
    emit(t, encode(tail), g[0], 0L, true);
    // (-1)^i f(..., g_i g_{i+1}, ...)
    for (int i = 1; i <= j; ++i) {
      std::vector<std::size_t> merged;
      for (int k = 0; k <= j; ++k) {
        if (k == i) continue;
        if (k == i - 1)
          merged.push_back(mult[g[static_cast<std::size_t>(k)]][g[static_cast<std::size_t>(k + 1)]]);
        else
          merged.push_back(g[static_cast<std::size_t>(k)]);
      }
      emit(t, encode(merged), 0, (i % 2) ? -1L : 1L, false);
    }
    // (-1)^{j+1} f(g1, ..., g_j)
    std::vector<std::size_t> head(g.begin(), g.end() - 1);
    emit(t, encode(head), 0, ((j + 1) % 2) ? -1L : 1L, false);
  }
}

struct PrimaryPiece {
  i64 q;
  int a;                              // exponent of q^a, the largest order
  std::vector<int> b;                 // orders q^b_k of the factors
  std::vector<std::vector<i64>> act;  // per group element, dim x dim row-major
};

// Cochain coefficient matrix of d^j on the q-primary part (rows reduced
// modulo the order of the row's factor).
DenseMod primary_differential(const PrimaryPiece& pc, const std::vector<std::vector<std::size_t>>& mult, std::size_t h,
                              int j) {
  std::size_t dim = pc.b.size();
  std::size_t in_tuples = 1;
  for (int i = 0; i < j; ++i) in_tuples *= h;
  std::size_t out_rows = in_tuples * h * dim;
  if (out_rows > kMaxCochainRank || out_rows * in_tuples * dim > kMaxEntries) throw SizeBoundExceeded();
  DenseMod d(out_rows, in_tuples * dim);
  i64 mod = ipow(pc.q, pc.a);
  differential(h, j, mult, [&](std::size_t out, std::size_t in, std::size_t g, long sign, bool act) {
    for (std::size_t r = 0; r < dim; ++r) {
      if (act) {
        for (std::size_t k = 0; k < dim; ++k) {
          i64 c = pc.act[g][r * dim + k];
          if (c) {
            i64& e = d.at(out * dim + r, in * dim + k);
            e = norm(e + c, mod);
          }
        }
      } else {
        i64& e = d.at(out * dim + r, in * dim + r);
        e = norm(e + sign, mod);
      }
    }
  });
  for (std::size_t row = 0; row < d.rows; ++row) {
    i64 m = ipow(pc.q, pc.b[row % dim]);
    for (std::size_t c = 0; c < d.cols; ++c) d.at(row, c) %= m;
  }
  return d;
}

std::vector<Int> primary_cohomology(const PrimaryPiece& pc, const std::vector<std::vector<std::size_t>>& mult,
                                    std::size_t h, int j) {
  std::size_t dim = pc.b.size();
  i64 mod = ipow(pc.q, pc.a);
  std::size_t n = dim;
  for (int i = 0; i < j; ++i) n *= h;

  // Kernel of d^j: scale row r by q^(a - b_r) so the condition is mod q^a.
  DenseMod A = primary_differential(pc, mult, h, j);
  for (std::size_t row = 0; row < A.rows; ++row) {
    i64 s = ipow(pc.q, pc.a - pc.b[row % dim]);
    for (std::size_t c = 0; c < A.cols; ++c) A.at(row, c) = mulmod(A.at(row, c), s, mod);
  }
  DenseMod qinv(n, n);
  for (std::size_t i = 0; i < n; ++i) qinv.at(i, i) = 1;
  std::vector<int> v = chain_ring_eliminate(A, &qinv, pc.q, pc.a, mod);
  std::vector<int> c(n);  // kernel = Q (+) q^c_i Z/q^a
  for (std::size_t i = 0; i < n; ++i) c[i] = pc.a - v[i];

  // Generators of the coboundaries plus the factor orders, in kernel coordinates.
  std::vector<std::vector<i64>> gens;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<i64> e(n, 0);
    e[k] = ipow(pc.q, pc.b[k % dim]) % mod;
    gens.push_back(std::move(e));
  }
  if (j >= 1) {
    DenseMod prev = primary_differential(pc, mult, h, j - 1);
    for (std::size_t col = 0; col < prev.cols; ++col) {
      std::vector<i64> e(n);
      for (std::size_t r = 0; r < n; ++r) e[r] = prev.at(r, col);
      gens.push_back(std::move(e));
    }
  }
  std::size_t extra = n;  // the diagonal q^(a - c_i) relations
  DenseMod W(n, gens.size() + extra);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    for (std::size_t i = 0; i < n; ++i) {
      i64 y = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (qinv.at(i, k) && gens[g][k]) y = norm(y + mulmod(qinv.at(i, k), gens[g][k], mod), mod);
      i64 qc = ipow(pc.q, c[i]);
      if (y % qc != 0) throw std::logic_error("bar oracle: coboundary outside the cocycles");
      W.at(i, g) = y / qc;
    }
  }
  for (std::size_t i = 0; i < n; ++i) W.at(i, gens.size() + i) = ipow(pc.q, pc.a - c[i]) % mod;
  std::vector<int> w = chain_ring_eliminate(W, nullptr, pc.q, pc.a, mod);
  std::vector<Int> orders;
  for (std::size_t i = 0; i < n; ++i) {
    int e = i < w.size() ? w[i] : pc.a;
    if (e > 0) orders.push_back(Int(static_cast<long>(ipow(pc.q, e))));
  }
  return orders;
}

std::vector<std::vector<std::size_t>> multiplication_table(const DihedralGroup& d,
                                                           const std::vector<GroupElement>& els) {
  std::vector<std::vector<std::size_t>> mult(els.size(), std::vector<std::size_t>(els.size()));
  for (std::size_t x = 0; x < els.size(); ++x)
    for (std::size_t y = 0; y < els.size(); ++y) {
      GroupElement z = d.multiply(els[x], els[y]);
      for (std::size_t k = 0; k < els.size(); ++k)
        if (els[k] == z) mult[x][y] = k;
    }
  return mult;
}

FinAbGroup finite_oracle(const DModule& m, const std::vector<GroupElement>& els,
                         const std::vector<std::vector<std::size_t>>& mult, int j) {
  SmithForm s = smith_normal_form(m.relations().basis());
  IntVector diag = s.diagonal();
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < diag.size(); ++i)
    if (diag[i] != 1) keep.push_back(i);
  if (keep.empty()) return FinAbGroup::trivial();
  std::vector<IntMatrix> acts;
  for (auto g : els) acts.push_back(s.U * m.matrix_of(g) * s.Uinv);

  std::vector<Int> orders;
  for (const Int& qz : prime_divisors(diag[keep.back()])) {
    PrimaryPiece pc;
    if (qz > 1000) throw SizeBoundExceeded();
    pc.q = qz.get_si();
    std::vector<std::size_t> idx;
    std::vector<Int> cof;
    for (auto i : keep) {
      int b = static_cast<int>(valuation(diag[i], qz));
      if (b == 0) continue;
      idx.push_back(i);
      pc.b.push_back(b);
      cof.push_back(diag[i] / prime_part(diag[i], qz));
    }
    pc.a = *std::max_element(pc.b.begin(), pc.b.end());
    Int modz = prime_part(diag[keep.back()], qz);
    if (modz > Int(1L << 30)) throw SizeBoundExceeded();
    std::size_t dim = idx.size();
    for (const auto& act : acts) {
      std::vector<i64> mat(dim * dim);
      for (std::size_t r = 0; r < dim; ++r) {
        Int qr;
        mpz_pow_ui(qr.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(pc.b[r]));
        Int inv;
        mpz_invert(inv.get_mpz_t(), cof[r].get_mpz_t(), qr.get_mpz_t());
        for (std::size_t k = 0; k < dim; ++k) {
          Int gamma = act(idx[r], idx[k]) * cof[k] * inv;
          mpz_fdiv_r(gamma.get_mpz_t(), gamma.get_mpz_t(), qr.get_mpz_t());
          mat[r * dim + k] = gamma.get_si();
        }
      }
      pc.act.push_back(std::move(mat));
    }
    auto part = primary_cohomology(pc, mult, els.size(), j);
    orders.insert(orders.end(), part.begin(), part.end());
  }
  return FinAbGroup::from_cyclic_orders(orders);
}

FinAbGroup lattice_oracle(const DModule& m, const std::vector<GroupElement>& els,
                          const std::vector<std::vector<std::size_t>>& mult, int j) {
  std::size_t n = m.generators();
  std::size_t h = els.size();
  auto cochain_dim = [&](int k) {
    std::size_t t = n;
    for (int i = 0; i < k; ++i) t *= h;
    return t;
  };
  if (cochain_dim(j + 1) > kMaxLatticeRank) throw SizeBoundExceeded();
  std::vector<IntMatrix> acts;
  for (auto g : els) acts.push_back(m.matrix_of(g));
  auto build = [&](int k) {
    IntMatrix d(cochain_dim(k + 1), cochain_dim(k));
    differential(h, k, mult, [&](std::size_t out, std::size_t in, std::size_t g, long sign, bool act) {
      for (std::size_t r = 0; r < n; ++r) {
        if (act)
          for (std::size_t c = 0; c < n; ++c) d(out * n + r, in * n + c) += acts[g](r, c);
        else
          d(out * n + r, in * n + r) += sign;
      }
    });
    return d;
  };
  auto relation_block = [&](int k) { return Lattice::span(block_diagonal(m.relations().basis(), cochain_dim(k) / n)); };
  Lattice cocycles = preimage(build(j), relation_block(j + 1));
  Lattice coboundaries = relation_block(j);
  if (j >= 1) coboundaries = coboundaries + Lattice::span(build(j - 1));
  FinAbGroup g = Subquotient(cocycles, coboundaries).structure();
  return m.ring().ell ? g.local_part(*m.ring().ell) : g;
}

}  // namespace

FinAbGroup bar_resolution_oracle(const DModule& m, const Subgroup& h, int j) {
  if (j < 0 || j > 3) throw InputError("bar_resolution_oracle supports 0 <= j <= 3");
  auto els = h.elements(m.group());
  auto mult = multiplication_table(m.group(), els);
  if (m.is_finite()) {
    FinAbGroup g = finite_oracle(m, els, mult, j);
    return m.ring().ell ? g.local_part(*m.ring().ell) : g;
  }
  return lattice_oracle(m, els, mult, j);
}

}  // namespace bkd
