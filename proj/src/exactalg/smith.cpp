#include <utility>

#include "bkd/exactalg.hpp"

namespace bkd {

namespace {

// Rounded quotient so that |a - q*b| <= |b|/2; keeps entries small.
Int rounded_quotient(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  // floor division leaves r with the sign of b, so r - b is the other candidate
  if (2 * abs(r) > abs(b)) q += 1;
  return q;
}

struct SmithWork {
  IntMatrix D;
  IntMatrix U;
  IntMatrix Uinv;
  IntMatrix V;
  bool track;

  void swap_rows(std::size_t a, std::size_t b) {
    D.swap_rows(a, b);
    if (track) {
      U.swap_rows(a, b);
      Uinv.swap_cols(a, b);
    }
  }
  void swap_cols(std::size_t a, std::size_t b) {
    D.swap_cols(a, b);
    if (track) V.swap_cols(a, b);
  }
  // row[dst] += f * row[src]; U' = E U with E = I + f e_dst e_src^T, so
  // U'^{-1} = U^{-1} E^{-1}: col[src] of Uinv -= f * col[dst].
  void add_row(std::size_t dst, std::size_t src, const Int& f) {
    D.add_row_multiple(dst, src, f);
    if (track) {
      U.add_row_multiple(dst, src, f);
      Uinv.add_col_multiple(src, dst, -f);
    }
  }
  void add_col(std::size_t dst, std::size_t src, const Int& f) {
    D.add_col_multiple(dst, src, f);
    if (track) V.add_col_multiple(dst, src, f);
  }
  void negate_row(std::size_t i) {
    D.negate_row(i);
    if (track) {
      U.negate_row(i);
      Uinv.negate_col(i);
    }
  }
};

// Smallest nonzero |entry| in the trailing block, ties broken row-major.
bool find_pivot(const IntMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Int best;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      const Int& x = d(i, j);
      if (x == 0) continue;
      if (!found || abs(x) < best) {
        best = abs(x);
        pi = i;
        pj = j;
        found = true;
      }
    }
  return found;
}

void run_smith(SmithWork& w) {
  IntMatrix& d = w.D;
  std::size_t limit = std::min(d.rows(), d.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    std::size_t pi = 0, pj = 0;
    if (!find_pivot(d, t, pi, pj)) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        w.add_row(i, t, -rounded_quotient(d(i, t), d(t, t)));
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        w.add_col(j, t, -rounded_quotient(d(t, j), d(t, t)));
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survived; move the smallest
        // entry of the pivot row/column into place and repeat.
        std::size_t bi = t, bj = t;
        Int best = abs(d(t, t));
        for (std::size_t i = t + 1; i < d.rows(); ++i)
          if (d(i, t) != 0 && abs(d(i, t)) < best) {
            best = abs(d(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (d(t, j) != 0 && abs(d(t, j)) < best) {
            best = abs(d(t, j));
            bi = t;
            bj = j;
          }
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        continue;
      }
      // Divisibility: pivot must divide the whole trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < d.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (d(i, j) != 0 && !mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            w.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) w.negate_row(t);
  }
}

}  // namespace

IntVector SmithForm::diagonal() const {
  std::size_t limit = std::min(D.rows(), D.cols());
  IntVector v(limit);
  for (std::size_t i = 0; i < limit; ++i) v[i] = D(i, i);
  return v;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), true};
  run_smith(w);
  SmithForm s{std::move(w.U), std::move(w.Uinv), std::move(w.D), std::move(w.V), 0};
  for (std::size_t i = 0; i < std::min(s.D.rows(), s.D.cols()); ++i)
    if (s.D(i, i) != 0) ++s.rank;
  return s;
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
  if (!u.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
  SmithForm s = smith_normal_form(u);
  if (s.D != IntMatrix::identity(u.rows())) throw std::invalid_argument("matrix is not unimodular");
  return s.V * s.U;
}

IntVector smith_invariants(const IntMatrix& m) {
  SmithWork w{m, {}, {}, {}, false};
  run_smith(w);
  IntVector v(std::min(m.rows(), m.cols()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = w.D(i, i);
  return v;
}

FinAbGroup cokernel_structure(const IntMatrix& m) {
  IntVector diag = smith_invariants(m);
  IntVector orders(m.rows(), Int(0));
  for (std::size_t i = 0; i < diag.size(); ++i) orders[i] = diag[i];
  return FinAbGroup::from_cyclic_orders(orders);
}

ColumnHermite column_hermite(const IntMatrix& m, bool want_transform) {
  IntMatrix h = m;
  IntMatrix q = want_transform ? IntMatrix::identity(m.cols()) : IntMatrix();
  auto add_col = [&](std::size_t dst, std::size_t src, const Int& f) {
    h.add_col_multiple(dst, src, f);
    if (want_transform) q.add_col_multiple(dst, src, f);
  };
  auto swap_col = [&](std::size_t a, std::size_t b) {
    h.swap_cols(a, b);
    if (want_transform) q.swap_cols(a, b);
  };
  auto negate_col = [&](std::size_t j) {
    h.negate_col(j);
    if (want_transform) q.negate_col(j);
  };

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t i = 0; i < h.rows() && r < h.cols(); ++i) {
    for (;;) {
      std::size_t best = h.cols();
      for (std::size_t j = r; j < h.cols(); ++j)
        if (h(i, j) != 0 && (best == h.cols() || abs(h(i, j)) < abs(h(i, best)))) best = j;
      if (best == h.cols()) break;
      swap_col(r, best);
      bool others = false;
      for (std::size_t j = r + 1; j < h.cols(); ++j) {
        if (h(i, j) == 0) continue;
        add_col(j, r, -rounded_quotient(h(i, j), h(i, r)));
        if (h(i, j) != 0) others = true;
      }
      if (!others) break;
    }
    if (h(i, r) == 0) continue;
    if (h(i, r) < 0) negate_col(r);
    for (std::size_t j = 0; j < r; ++j) {
      Int f;
      mpz_fdiv_q(f.get_mpz_t(), h(i, j).get_mpz_t(), h(i, r).get_mpz_t());
      if (f != 0) add_col(j, r, -f);
    }
    pivots.push_back(i);
    ++r;
  }
  ColumnHermite out;
  out.rank = r;
  out.pivots = std::move(pivots);
  out.H = h.columns(0, r);
  out.Q = std::move(q);
  return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  ColumnHermite ch = column_hermite(m, true);
  return ch.Q.columns(ch.rank, m.cols() - ch.rank);
}

}  // namespace bkd
