#pragma once

// Level-m model of the two-term complex computing the derived pushforward
// at a point: a level element is an m-tuple of module elements indexed by
// Z/m, every index i represented by its residue in [0, m-1].

#include <cstddef>
#include <vector>

#include "weil/chainlab/modules.hpp"

namespace weil::chainlab {

template <class E>
struct LevelElement {
  std::vector<E> entries;

  std::size_t level() const noexcept { return entries.size(); }
  const E& operator[](std::size_t i) const { return entries[i]; }
  E& operator[](std::size_t i) { return entries[i]; }
};

/// Representative of i in Z/m lying in [0, m-1].
inline std::size_t residue(long i, std::size_t m) {
  const long mm = static_cast<long>(m);
  long r = i % mm;
  return static_cast<std::size_t>(r < 0 ? r + mm : r);
}

template <CoefficientModule M>
using LevelOf = LevelElement<typename M::element_type>;

template <CoefficientModule M>
bool level_equal(const M& mod, const LevelOf<M>& f, const LevelOf<M>& g) {
  if (f.level() != g.level()) return false;
  for (std::size_t i = 0; i < f.level(); ++i)
    if (!mod.equal(f[i], g[i])) return false;
  return true;
}

template <CoefficientModule M>
LevelOf<M> level_zero(const M& mod, std::size_t m) {
  return {std::vector<typename M::element_type>(m, mod.zero())};
}

template <CoefficientModule M>
LevelOf<M> level_sub(const M& mod, const LevelOf<M>& f, const LevelOf<M>& g) {
  LevelOf<M> out = f;
  for (std::size_t i = 0; i < f.level(); ++i) out[i] = mod.sub(f[i], g[i]);
  return out;
}

template <CoefficientModule M>
LevelOf<M> level_add(const M& mod, const LevelOf<M>& f, const LevelOf<M>& g) {
  LevelOf<M> out = f;
  for (std::size_t i = 0; i < f.level(); ++i) out[i] = mod.add(f[i], g[i]);
  return out;
}

/// (t f)^(i) = phi f^(i-1)
template <CoefficientModule M>
LevelOf<M> t_twisted(const M& mod, const LevelOf<M>& f) {
  const std::size_t m = f.level();
  LevelOf<M> out = f;
  for (std::size_t i = 0; i < m; ++i)
    out[i] = mod.phi_power(f[residue(static_cast<long>(i) - 1, m)], 1);
  return out;
}

/// (t f)^(i) = f^(i-1), the untwisted cyclic permutation.
template <class E>
LevelElement<E> t_plain(const LevelElement<E>& f) {
  const std::size_t m = f.level();
  LevelElement<E> out = f;
  for (std::size_t i = 0; i < m; ++i) out[i] = f[residue(static_cast<long>(i) - 1, m)];
  return out;
}

/// (tau_a f)^(i) = f^(i+a)
template <class E>
LevelElement<E> tau(const LevelElement<E>& f, long a) {
  const std::size_t m = f.level();
  LevelElement<E> out = f;
  for (std::size_t i = 0; i < m; ++i) out[i] = f[residue(static_cast<long>(i) + a, m)];
  return out;
}

/// Action of phi^a on a level element whose coefficients carry their own
/// action: the shift tau_a combined with phi^a on every entry. This is the
/// action on the untwisted side of nu.
template <CoefficientModule M>
LevelOf<M> tau_diagonal(const M& mod, const LevelOf<M>& f, long a) {
  LevelOf<M> out = tau(f, a);
  for (auto& e : out.entries) e = mod.phi_power(e, a);
  return out;
}

/// delta_m^n: level m -> level mn, entry j is f^(j mod m).
template <class E>
LevelElement<E> delta(const LevelElement<E>& f, std::size_t n) {
  if (n == 0) throw InvalidInput("delta needs n >= 1");
  const std::size_t m = f.level();
  LevelElement<E> out;
  out.entries.reserve(m * n);
  for (std::size_t j = 0; j < m * n; ++j) out.entries.push_back(f[j % m]);
  return out;
}

/// N_m^n(c) = sum_{l=0}^{n-1} phi^{-lm} c
template <CoefficientModule M>
typename M::element_type norm(const M& mod, const typename M::element_type& c,
                              std::size_t m, std::size_t n) {
  auto acc = mod.zero();
  for (std::size_t l = 0; l < n; ++l)
    acc = mod.add(acc, mod.phi_power(c, -static_cast<long>(l * m)));
  return acc;
}

template <CoefficientModule M>
bool is_fixed(const M& mod, const typename M::element_type& c, std::size_t m) {
  return mod.equal(mod.phi_power(c, static_cast<long>(m)), c);
}

/// Delta_m(c)^(i) = phi^i c for c fixed by phi^m; throws NotFixed otherwise.
template <CoefficientModule M>
LevelOf<M> big_delta(const M& mod, const typename M::element_type& c, std::size_t m) {
  if (m == 0) throw InvalidInput("level must be >= 1");
  if (!is_fixed(mod, c, m)) throw NotFixed("Delta_m needs an element fixed by phi^m");
  LevelOf<M> out;
  out.entries.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.entries.push_back(mod.phi_power(c, static_cast<long>(i)));
  return out;
}

/// S_m(f) = sum_i phi^{-i} f^(i)
template <CoefficientModule M>
typename M::element_type big_s(const M& mod, const LevelOf<M>& f) {
  auto acc = mod.zero();
  for (std::size_t i = 0; i < f.level(); ++i)
    acc = mod.add(acc, mod.phi_power(f[i], -static_cast<long>(i)));
  return acc;
}

/// R_j(c)^(l) = phi^{l-j} c for l < j and 0 otherwise; (t-1) R_j(c) has c at
/// index j and -phi^{-j} c at index 0 (j != 0).
template <CoefficientModule M>
LevelOf<M> r_witness(const M& mod, const typename M::element_type& c, std::size_t j,
                     std::size_t m) {
  if (j >= m) throw IndexOutOfRange("R_j needs 0 <= j < m");
  LevelOf<M> out = level_zero(mod, m);
  for (std::size_t l = 0; l < j; ++l)
    out[l] = mod.phi_power(c, static_cast<long>(l) - static_cast<long>(j));
  return out;
}

/// (t - 1) f with the twisted shift.
template <CoefficientModule M>
LevelOf<M> t_minus_one(const M& mod, const LevelOf<M>& f) {
  return level_sub(mod, t_twisted(mod, f), f);
}

/// nu(f)^(i) = phi^i f^(i), defined on tuples whose entries are fixed by
/// phi^m; intertwines t_plain with t_twisted.
template <CoefficientModule M>
LevelOf<M> nu(const M& mod, const LevelOf<M>& f) {
  const std::size_t m = f.level();
  LevelOf<M> out = f;
  for (std::size_t i = 0; i < m; ++i) {
    if (!is_fixed(mod, f[i], m)) throw NotFixed("nu needs entries fixed by phi^m");
    out[i] = mod.phi_power(f[i], static_cast<long>(i));
  }
  return out;
}

/// Sum of phi^{mk} c over one period of phi^m; the result is fixed by phi^m.
template <CoefficientModule M>
typename M::element_type average_to_fixed(const M& mod, const typename M::element_type& c,
                                          std::size_t m, unsigned long period) {
  auto acc = mod.zero();
  for (unsigned long k = 0; k < period; ++k)
    acc = mod.add(acc, mod.phi_power(c, static_cast<long>(m * k)));
  return acc;
}

struct CupeHomotopyReport {
  std::size_t samples = 0;
  std::size_t failures = 0;
  bool holds() const { return failures == 0; }
};

/// The chain maps "identity in degree 0" and "t in degree 0" from the level
/// complex to its shift differ by d h + h d with h the identity in degree 0
/// and zero in degree 1. Checked on each sample.
template <CoefficientModule M>
CupeHomotopyReport cupe_homotopy_check(const M& mod, std::size_t m,
                                       const std::vector<LevelOf<M>>& samples) {
  CupeHomotopyReport report;
  for (const auto& f : samples) {
    if (f.level() != m) throw InvalidInput("sample at the wrong level");
    ++report.samples;
    const LevelOf<M> difference = level_sub(mod, t_twisted(mod, f), f);
    const LevelOf<M> dh = t_minus_one(mod, f);  // d(h(f)), h = id
    const LevelOf<M> hd = level_zero(mod, m);   // h vanishes in degree 1
    if (!level_equal(mod, difference, level_add(mod, dh, hd))) ++report.failures;
  }
  return report;
}

/// Matrix of t - 1 on the level-m complex, acting on the concatenation of
/// the m entries.
IntMatrix level_differential(const IntMatrix& phi, std::size_t m);
RatMatrix level_differential(const RatMatrix& phi, std::size_t m);


struct LevelCohomology {
  FpGroup h0;  ///< ker(phi^m - 1)
  FpGroup h1;  ///< coker(1 - phi^{-m})
  FpGroup complex_h0;  ///< ker(t - 1) on the level complex
  FpGroup complex_h1;  ///< coker(t - 1) on the level complex
  bool consistent() const {
    return h0.isomorphic(complex_h0) && h1.isomorphic(complex_h1);
  }
};

/// Degree 0 and 1 cohomology of the level-m complex of a Finite or Lattice
/// module, computed directly and through the complex. Throws
/// UnsupportedVariant for Rational modules.
LevelCohomology level_cohomology(const CoefModule& module, std::size_t m);

struct RationalLevelCohomology {
  std::size_t h0 = 0, h1 = 0;
  std::size_t complex_h0 = 0, complex_h1 = 0;
  bool consistent() const { return h0 == complex_h0 && h1 == complex_h1; }
};

RationalLevelCohomology rational_level_cohomology(const RationalModule& module, std::size_t m);

struct SplittingReport {
  std::size_t fixed_dimension = 0;  ///< dim ker(phi^m - 1)
  bool identity_verified = false;   ///< S' Delta_m = id on that kernel
};

/// Checks that (1/m) S_m is a left inverse of Delta_m on ker(phi^m - 1).
SplittingReport splitting_check(const RationalModule& module, std::size_t m);

/// Image of x at level m in colim Z = Q, i.e. x / m.
Rational norm_colimit_value(const Integer& x, std::size_t m);

/// Element of M = Q/Z + Q: first coordinate kept in [0, 1).
class KahnM {
 public:
  KahnM() = default;
  KahnM(Rational first, Rational second);
  const Rational& first() const noexcept { return first_; }
  const Rational& second() const noexcept { return second_; }
  /// a . (x, y) = (x + a y mod 1, y)
  KahnM act(long a) const;
  friend bool operator==(const KahnM&, const KahnM&) = default;
  friend KahnM operator+(const KahnM& a, const KahnM& b);

 private:
  Rational first_ = 0;
  Rational second_ = 0;
};

Rational fractional_part(const Rational& x);

/// mu_m(x) = sum_i ((1/2 + i/m) x^(i) mod 1, -x^(i)/m) for integer tuples.
/// Entries must be 1-vectors (the Integers module); UnsupportedVariant
/// otherwise.
KahnM mu(const LevelElement<IntVector>& x);
/// xi(y) = (y mod 1, 0)
KahnM xi(const Rational& y);
Rational proj(const KahnM& v);
/// S'(x) = S_m(x) / m for integer tuples with the trivial action.
Rational s_prime(const LevelElement<IntVector>& x);

/// 0 -> A -> B -> C -> 0 of Finite or Lattice modules. The maps are integer
/// matrices in the coordinates of presentation(): Smith coordinates for
/// Finite modules, the standard basis for Lattice modules.
struct ShortExactSequence {
  CoefModule sub;
  CoefModule middle;
  CoefModule quotient;
  IntMatrix inclusion;
  IntMatrix projection;
};

/// Snake-lemma boundary ker(phi_C - 1) -> coker(phi_A - 1): lift, apply
/// phi_B - 1, pull back to A. Throws NotEquivariant or NotExact when the
/// sequence fails its hypotheses.
FpMorphism connecting_hom(const ShortExactSequence& ses);

/// The extension 0 -> Z -> N_n -> Z -> 0 with phi = [[1, n], [0, 1]].
ShortExactSequence extension_sequence(long n);

/// Union over m of ker(phi^m - 1). For Rational modules the result is the
/// free group whose rank is the Q-dimension.
FpGroup stable_invariants(const CoefModule& module);

/// Smallest L with ker(phi^L - 1) the full stable invariant part: the lcm
/// of the k with Phi_k dividing the characteristic polynomial.
unsigned long stable_period(const RatMatrix& phi);

}  // namespace weil::chainlab
