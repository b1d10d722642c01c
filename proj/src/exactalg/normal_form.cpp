#include "weil/exactalg/normal_form.hpp"

#include <algorithm>

namespace weil::exactalg {

namespace {

// Replaces rows (r, i) of both matrices by the unimodular combination
//   row_r <- s*row_r + t*row_i,   row_i <- (a/g)*row_i - (b/g)*row_r
// which puts gcd(a, b) at (r, c) and zero at (i, c).
void gcd_combine_rows(IntMatrix& m, IntMatrix& u, std::size_t r, std::size_t i,
                      std::size_t c) {
  Integer g, s, t;
  const Integer a = m(r, c);
  const Integer b = m(i, c);
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  const Integer ag = a / g;
  const Integer bg = b / g;
  auto apply = [&](IntMatrix& x) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      Integer xr = x(r, j);
      Integer xi = x(i, j);
      x(r, j) = s * xr + t * xi;
      x(i, j) = ag * xi - bg * xr;
    }
  };
  apply(m);
  apply(u);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer trunc_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteForm hnf(const IntMatrix& a) {
  HermiteForm out{a, IntMatrix::identity(a.rows()), 0};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (std::size_t i = r + 1; i < h.rows(); ++i)
      if (h(i, c) != 0) gcd_combine_rows(h, u, r, i, c);
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    const Integer pivot = h(r, c);
    for (std::size_t k = 0; k < r; ++k) {
      if (h(k, c) == 0) continue;
      Integer q = floor_div(h(k, c), pivot);
      if (q == 0) continue;
      h.add_row_multiple(k, r, Integer(-q));
      u.add_row_multiple(k, r, Integer(-q));
    }
    ++r;
  }
  out.rank = r;
  return out;
}

SmithForm snf(const IntMatrix& a) {
  SmithForm out{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols())};
  IntMatrix& d = out.d;
  IntMatrix& u = out.u;
  IntMatrix& v = out.v;
  const std::size_t n = std::min(d.rows(), d.cols());

  for (std::size_t k = 0; k < n; ++k) {
    for (;;) {
      // Pivot: smallest |entry| in the trailing block, first in row-major
      // order among ties.
      std::size_t pr = d.rows(), pc = d.cols();
      for (std::size_t i = k; i < d.rows(); ++i)
        for (std::size_t j = k; j < d.cols(); ++j) {
          if (d(i, j) == 0) continue;
          if (pr == d.rows() || abs(d(i, j)) < abs(d(pr, pc))) {
            pr = i;
            pc = j;
          }
        }
      if (pr == d.rows()) return out;  // trailing block is zero
      d.swap_rows(k, pr);
      u.swap_rows(k, pr);
      d.swap_cols(k, pc);
      v.swap_cols(k, pc);

      const Integer pivot = d(k, k);
      bool residue = false;
      for (std::size_t i = k + 1; i < d.rows(); ++i) {
        if (d(i, k) == 0) continue;
        Integer q = trunc_div(d(i, k), pivot);
        d.add_row_multiple(i, k, Integer(-q));
        u.add_row_multiple(i, k, Integer(-q));
        if (d(i, k) != 0) residue = true;
      }
      for (std::size_t j = k + 1; j < d.cols(); ++j) {
        if (d(k, j) == 0) continue;
        Integer q = trunc_div(d(k, j), pivot);
        d.add_col_multiple(j, k, Integer(-q));
        v.add_col_multiple(j, k, Integer(-q));
        if (d(k, j) != 0) residue = true;
      }
      if (residue) continue;

      // Row and column cleared; enforce divisibility of the trailing block.
      std::size_t bad_row = d.rows();
      for (std::size_t i = k + 1; i < d.rows() && bad_row == d.rows(); ++i)
        for (std::size_t j = k + 1; j < d.cols(); ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), pivot.get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (bad_row == d.rows()) break;
      d.add_row_multiple(k, bad_row, Integer(1));
      u.add_row_multiple(k, bad_row, Integer(1));
    }
    if (d(k, k) < 0) {
      d.negate_row(k);
      u.negate_row(k);
    }
  }
  return out;
}

IntVector smith_diagonal(const SmithForm& s) {
  const std::size_t n = std::min(s.d.rows(), s.d.cols());
  IntVector diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = s.d(i, i);
  return diag;
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw InvalidInput("solve_integer: shape mismatch");
  // u * a^T = h, so a * u^T = h^T and x = u^T y with h^T y = b.
  const HermiteForm hf = hnf(a.transpose());
  const IntMatrix& h = hf.h;
  IntVector y(h.rows());
  IntVector residual = b;
  std::size_t col = 0;
  for (std::size_t k = 0; k < hf.rank; ++k) {
    while (h(k, col) == 0) {
      if (residual[col] != 0) return std::nullopt;
      ++col;
    }
    if (!mpz_divisible_p(residual[col].get_mpz_t(), h(k, col).get_mpz_t()))
      return std::nullopt;
    y[k] = residual[col] / h(k, col);
    for (std::size_t j = col; j < h.cols(); ++j) residual[j] -= y[k] * h(k, j);
    ++col;
  }
  for (const auto& r : residual)
    if (r != 0) return std::nullopt;
  return hf.u.transpose() * y;
}

std::optional<IntMatrix> solve_integer(const IntMatrix& a, const IntMatrix& b) {
  std::vector<IntVector> cols;
  cols.reserve(b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    auto x = solve_integer(a, b.column(j));
    if (!x) return std::nullopt;
    cols.push_back(std::move(*x));
  }
  return IntMatrix::from_columns(cols, a.cols());
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const HermiteForm hf = hnf(a.transpose());
  std::vector<IntVector> cols;
  for (std::size_t k = hf.rank; k < hf.u.rows(); ++k) cols.push_back(hf.u.row(k));
  return IntMatrix::from_columns(cols, a.cols());
}

IntMatrix lattice_basis(const IntMatrix& generators) {
  const HermiteForm hf = hnf(generators.transpose());
  std::vector<IntVector> cols;
  for (std::size_t k = 0; k < hf.rank; ++k) cols.push_back(hf.h.row(k));
  return IntMatrix::from_columns(cols, generators.rows());
}

}  // namespace weil::exactalg
