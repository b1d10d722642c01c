#pragma once

#include <optional>

#include "weil/exactalg/matrix.hpp"

namespace weil::exactalg {

struct HermiteForm {
  IntMatrix h;  ///< row Hermite normal form
  IntMatrix u;  ///< unimodular, u * a == h
  std::size_t rank = 0;
};

/// Row Hermite normal form: row echelon, positive pivots, entries above a
/// pivot reduced into [0, pivot).
HermiteForm hnf(const IntMatrix& a);

struct SmithForm {
  IntMatrix d;  ///< diagonal, d_1 | d_2 | ..., all entries >= 0
  IntMatrix u;  ///< unimodular row transform
  IntMatrix v;  ///< unimodular column transform, u * a * v == d
};

/// Smith normal form. The pivot at each stage is the entry of smallest
/// nonzero absolute value, ties broken by lowest row, then lowest column.
SmithForm snf(const IntMatrix& a);

/// Diagonal of a Smith form, padded to min(rows, cols).
IntVector smith_diagonal(const SmithForm& s);

/// Integer solution x of a * x == b, or nullopt when none exists.
/// Back-substitution through the Hermite form of a^T.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

/// Solves a * X == b column by column; nullopt if any column is unsolvable.
std::optional<IntMatrix> solve_integer(const IntMatrix& a, const IntMatrix& b);

/// Basis (as columns) of the lattice {x in Z^cols : a * x == 0}.
IntMatrix integer_kernel(const IntMatrix& a);

/// Basis (as columns) of the lattice spanned by the columns of `generators`.
IntMatrix lattice_basis(const IntMatrix& generators);

}  // namespace weil::exactalg
