#pragma once

#include <concepts>
#include <variant>

#include "weil/exactalg/fp_group.hpp"
#include "weil/exactalg/matrix.hpp"

namespace weil::chainlab {

using exactalg::FpGroup;
using exactalg::FpMorphism;
using exactalg::Integer;
using exactalg::IntMatrix;
using exactalg::IntVector;
using exactalg::Rational;
using exactalg::RatMatrix;
using exactalg::RatVector;

/// Operations every coefficient module provides to the level-complex code.
/// Elements are plain values; `equal` compares them in the module.
template <class M>
concept CoefficientModule = requires(const M& m, const typename M::element_type& x,
                                     long k, const Integer& c) {
  { m.zero() } -> std::same_as<typename M::element_type>;
  { m.add(x, x) } -> std::same_as<typename M::element_type>;
  { m.sub(x, x) } -> std::same_as<typename M::element_type>;
  { m.scale(x, c) } -> std::same_as<typename M::element_type>;
  { m.phi_power(x, k) } -> std::same_as<typename M::element_type>;
  { m.equal(x, x) } -> std::same_as<bool>;
};

/// Finite abelian group with an automorphism phi, stored in the Smith
/// coordinates of its presentation so that elements have unique reduced
/// representatives.
class FiniteModule {
 public:
  using element_type = IntVector;

  /// `phi` acts on generator coordinates of `group`. Throws InvalidInput
  /// unless group is finite and phi is a well-defined automorphism.
  FiniteModule(FpGroup group, const IntMatrix& phi);
  /// Z/d_1 + ... + Z/d_k with phi given in those coordinates.
  static FiniteModule from_moduli(const IntVector& moduli, const IntMatrix& phi);

  const FpGroup& group() const noexcept { return group_; }
  /// Moduli of the Smith coordinates (all > 1).
  const IntVector& moduli() const noexcept { return moduli_; }
  /// phi in Smith coordinates.
  const IntMatrix& phi() const noexcept { return phi_; }
  const IntMatrix& phi_inverse() const noexcept { return phi_inv_; }
  /// Multiplicative order of phi.
  unsigned long phi_order() const noexcept { return order_; }
  Integer order() const;
  std::size_t dimension() const noexcept { return moduli_.size(); }
  /// The Smith-coordinate presentation Z^k / diag(moduli).
  FpGroup smith_group() const;

  element_type zero() const { return IntVector(moduli_.size()); }
  element_type reduce(element_type x) const;
  element_type add(const element_type& a, const element_type& b) const;
  element_type sub(const element_type& a, const element_type& b) const;
  element_type neg(const element_type& a) const;
  element_type scale(const element_type& a, const Integer& c) const;
  element_type phi_power(const element_type& a, long k) const;
  bool equal(const element_type& a, const element_type& b) const {
    return reduce(a) == reduce(b);
  }
  /// phi^k as a matrix in Smith coordinates, k of either sign.
  IntMatrix phi_matrix_power(long k) const;

 private:
  FiniteModule() = default;
  void finish();

  FpGroup group_;
  IntVector moduli_;
  IntMatrix phi_;
  IntMatrix phi_inv_;
  unsigned long order_ = 1;
};

/// Z^r with phi of determinant +-1.
class LatticeModule {
 public:
  using element_type = IntVector;

  explicit LatticeModule(IntMatrix phi);
  /// Z with the trivial action.
  static LatticeModule integers() { return LatticeModule(IntMatrix::identity(1)); }

  std::size_t rank() const noexcept { return phi_.rows(); }
  const IntMatrix& phi() const noexcept { return phi_; }
  const IntMatrix& phi_inverse() const noexcept { return phi_inv_; }
  bool is_integers() const { return rank() == 1 && phi_(0, 0) == 1; }

  element_type zero() const { return IntVector(rank()); }
  element_type add(const element_type& a, const element_type& b) const;
  element_type sub(const element_type& a, const element_type& b) const;
  element_type neg(const element_type& a) const;
  element_type scale(const element_type& a, const Integer& c) const;
  element_type phi_power(const element_type& a, long k) const;
  bool equal(const element_type& a, const element_type& b) const { return a == b; }
  IntMatrix phi_matrix_power(long k) const;

 private:
  IntMatrix phi_;
  IntMatrix phi_inv_;
};

/// Q^s with an invertible rational phi.
class RationalModule {
 public:
  using element_type = RatVector;

  explicit RationalModule(RatMatrix phi);

  std::size_t dimension() const noexcept { return phi_.rows(); }
  const RatMatrix& phi() const noexcept { return phi_; }
  const RatMatrix& phi_inverse() const noexcept { return phi_inv_; }

  element_type zero() const { return RatVector(dimension()); }
  element_type add(const element_type& a, const element_type& b) const;
  element_type sub(const element_type& a, const element_type& b) const;
  element_type neg(const element_type& a) const;
  element_type scale(const element_type& a, const Integer& c) const;
  element_type scale(const element_type& a, const Rational& c) const;
  element_type phi_power(const element_type& a, long k) const;
  bool equal(const element_type& a, const element_type& b) const { return a == b; }
  RatMatrix phi_matrix_power(long k) const;

 private:
  RatMatrix phi_;
  RatMatrix phi_inv_;
};

static_assert(CoefficientModule<FiniteModule>);
static_assert(CoefficientModule<LatticeModule>);
static_assert(CoefficientModule<RationalModule>);

/// A G-module at a point. The Integers variant is LatticeModule::integers().
using CoefModule = std::variant<FiniteModule, LatticeModule, RationalModule>;

/// Group and phi of a Finite or Lattice module as finitely presented data.
struct Presentation {
  FpGroup group;
  IntMatrix phi;
  FpMorphism phi_morphism() const { return FpMorphism(group, group, phi); }
};

/// Throws UnsupportedVariant for Rational modules.
Presentation presentation(const CoefModule& m);

}  // namespace weil::chainlab
