#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "weil/exactalg/matrix.hpp"

namespace weil::exactalg {

/// Finitely presented abelian group Z^g / (column span of relations).
///
/// The Smith form of the relation matrix is computed once at construction.
/// It yields the invariant factors and a change of coordinates to
/// Z/d_1 + ... + Z/d_k (d_i != 1, free factors as d_i == 0) in which every
/// element has a unique reduced representative.
class FpGroup {
 public:
  /// The trivial group on zero generators.
  FpGroup();
  /// Group on `relations.rows()` generators.
  explicit FpGroup(IntMatrix relations);

  static FpGroup free(std::size_t rank);
  static FpGroup cyclic(const Integer& order);
  /// Z/d_1 + ... + Z/d_k in the given order; 0 means a free factor.
  static FpGroup from_invariants(const IntVector& factors);

  std::size_t generators() const noexcept { return relations_.rows(); }
  const IntMatrix& relations() const noexcept { return relations_; }

  /// d_1 | d_2 | ... with 1s dropped; free factors listed last as 0.
  const IntVector& invariant_factors() const noexcept { return factors_; }
  std::size_t rank() const;
  bool is_finite() const { return rank() == 0; }
  bool is_trivial() const { return factors_.empty(); }
  /// Group order when finite.
  std::optional<Integer> order() const;
  /// Product of the nonzero invariant factors.
  Integer torsion_order() const;
  /// Torsion subgroup, presented by its invariant factors.
  FpGroup torsion_subgroup() const;

  /// Canonical representative in Smith coordinates: one residue per
  /// invariant factor, reduced into [0, d_i) (kept as-is for d_i == 0).
  IntVector reduce(const IntVector& element) const;
  bool is_zero(const IntVector& element) const;
  bool equal(const IntVector& a, const IntVector& b) const;

  /// k x g matrix taking generator coordinates to Smith coordinates.
  const IntMatrix& to_smith() const noexcept { return to_smith_; }
  /// g x k matrix taking Smith coordinates back to generator coordinates.
  const IntMatrix& from_smith() const noexcept { return from_smith_; }

  /// Same invariant factors.
  bool isomorphic(const FpGroup& other) const {
    return factors_ == other.factors_;
  }

  std::string describe() const;

 private:
  IntMatrix relations_;
  IntVector factors_;
  IntMatrix to_smith_;
  IntMatrix from_smith_;
};

FpGroup group_from_relations(const IntMatrix& relations);
FpGroup direct_sum(const FpGroup& a, const FpGroup& b);

/// Homomorphism of finitely presented groups given on generators: column j
/// of `matrix` is the image of source generator j.
class FpMorphism {
 public:
  /// Throws IncompatibleMorphism unless every source relation maps into the
  /// relation lattice of the target.
  FpMorphism(FpGroup source, FpGroup target, IntMatrix matrix);

  static FpMorphism identity(const FpGroup& g);
  static FpMorphism zero(const FpGroup& source, const FpGroup& target);

  const FpGroup& source() const noexcept { return source_; }
  const FpGroup& target() const noexcept { return target_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  IntVector apply(const IntVector& x) const { return matrix_ * x; }
  /// Equality as maps (not as matrices).
  bool same_map(const FpMorphism& other) const;
  bool is_zero_map() const;

  friend FpMorphism operator+(const FpMorphism& a, const FpMorphism& b);
  friend FpMorphism operator-(const FpMorphism& a, const FpMorphism& b);
  /// a after b
  friend FpMorphism compose(const FpMorphism& a, const FpMorphism& b);

 private:
  struct Unchecked {};
  FpMorphism(FpGroup source, FpGroup target, IntMatrix matrix, Unchecked);

  FpGroup source_;
  FpGroup target_;
  IntMatrix matrix_;
};

/// True when the source relations map into the target relation lattice.
bool is_compatible(const FpGroup& source, const FpGroup& target,
                   const IntMatrix& matrix);

struct Kernel {
  FpGroup group;
  FpMorphism inclusion;
};

/// Kernel of f with its (injective) inclusion into f.source().
Kernel kernel(const FpMorphism& f);

struct Cokernel {
  FpGroup group;
  FpMorphism projection;
};

Cokernel cokernel(const FpMorphism& f);

/// f.source() modulo ker f.
FpGroup image(const FpMorphism& f);

bool is_injective(const FpMorphism& f);
bool is_surjective(const FpMorphism& f);

std::ostream& operator<<(std::ostream& os, const FpGroup& g);

}  // namespace weil::exactalg
