#pragma once

// Random generators and brute-force oracles shared by the unit tests. Nothing
// here calls into the normal-form code it is used to check.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "weil/exactalg/fp_group.hpp"
#include "weil/exactalg/matrix.hpp"

namespace weil::testing {

using exactalg::FpGroup;
using exactalg::Integer;
using exactalg::IntMatrix;
using exactalg::IntVector;

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                               std::size_t cols, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

/// Cofactor-expansion determinant; exponential, only for tiny matrices.
inline Integer brute_determinant(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k) {
        if (k == j) continue;
        minor(i - 1, c++) = m(i, k);
      }
    Integer term = m(0, j) * brute_determinant(minor);
    det += (j % 2 == 0) ? term : Integer(-term);
  }
  return det;
}

inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i + (k - pos) <= n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

/// Determinantal divisors: gcd of all k x k minors, for k = 1..min(r, c).
/// The Smith diagonal satisfies d_1 ... d_k == result[k-1].
inline IntVector determinantal_divisors(const IntMatrix& m) {
  const std::size_t n = std::min(m.rows(), m.cols());
  IntVector out;
  for (std::size_t k = 1; k <= n; ++k) {
    Integer g = 0;
    for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& rs) {
      for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& cs) {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rs[i], cs[j]);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), brute_determinant(sub).get_mpz_t());
      });
    });
    out.push_back(g);
  }
  return out;
}

/// A finite group of order <= max_order given by a random square relation
/// matrix (deliberately not in Smith form).
inline FpGroup random_finite_group(std::mt19937_64& rng, std::size_t max_gens,
                                   long max_order) {
  std::uniform_int_distribution<std::size_t> gens(1, max_gens);
  for (;;) {
    const std::size_t g = gens(rng);
    IntMatrix rel = random_matrix(rng, g, g, 6);
    Integer det = abs(brute_determinant(rel));
    if (det == 0 || det > max_order) continue;
    return FpGroup(rel);
  }
}

/// A matrix that is a well-defined homomorphism source -> target, built in
/// Smith coordinates (entry (i,j) a multiple of b_i / gcd(a_j, b_i)).
inline IntMatrix random_compatible_matrix(std::mt19937_64& rng, const FpGroup& source,
                                          const FpGroup& target) {
  const auto& a = source.invariant_factors();
  const auto& b = target.invariant_factors();
  std::uniform_int_distribution<long> dist(-20, 20);
  IntMatrix ms(b.size(), a.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      Integer g;
      mpz_gcd(g.get_mpz_t(), a[j].get_mpz_t(), b[i].get_mpz_t());
      Integer step = (b[i] == 0) ? (a[j] == 0 ? Integer(1) : Integer(0)) : Integer(b[i] / g);
      ms(i, j) = step * dist(rng);
    }
  return target.from_smith() * ms * source.to_smith();
}

/// Every element of a finite group, as generator-coordinate vectors
/// (one representative per element).
inline std::vector<IntVector> enumerate_elements(const FpGroup& g) {
  std::vector<IntVector> smith_coords{IntVector{}};
  for (const auto& d : g.invariant_factors()) {
    std::vector<IntVector> next;
    for (const auto& prefix : smith_coords)
      for (Integer x = 0; x < d; ++x) {
        IntVector v = prefix;
        v.push_back(x);
        next.push_back(std::move(v));
      }
    smith_coords = std::move(next);
  }
  std::vector<IntVector> out;
  out.reserve(smith_coords.size());
  for (const auto& y : smith_coords) out.push_back(g.from_smith() * y);
  return out;
}

}  // namespace weil::testing
