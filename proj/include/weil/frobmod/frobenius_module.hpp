#pragma once

// Frobenius modules: finite direct sums of parts (lattices, finite groups,
// divisible groups, declared groups, rational spaces), each with the action
// of the Frobenius phi.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "weil/exactalg/fp_group.hpp"
#include "weil/exactalg/matrix.hpp"

namespace weil::frobmod {

using exactalg::FpGroup;
using exactalg::FpMorphism;
using exactalg::Integer;
using exactalg::IntMatrix;
using exactalg::IntVector;
using exactalg::Rational;
using exactalg::RatMatrix;

/// Set of primes a divisible group lives at: an explicit list, or every
/// prime except a designated characteristic p.
class PrimeSupport {
 public:
  static PrimeSupport primes(std::vector<unsigned long> ls);
  static PrimeSupport coprime_to(unsigned long p);

  bool is_coprime_form() const noexcept { return coprime_to_ != 0; }
  const std::vector<unsigned long>& explicit_primes() const noexcept { return primes_; }
  unsigned long excluded_prime() const noexcept { return coprime_to_; }

  bool contains(unsigned long l) const;
  /// Largest divisor of |x| built from primes in the support (x != 0).
  Integer part_of(const Integer& x) const;
  /// Canonical text, used as the key of divisible coranks.
  std::string key() const;
  std::vector<std::string> problems() const;

  friend bool operator==(const PrimeSupport&, const PrimeSupport&) = default;

 private:
  std::vector<unsigned long> primes_;
  unsigned long coprime_to_ = 0;
};

struct LatticePart {
  IntMatrix phi;  ///< determinant +-1
};
struct FinitePart {
  FpGroup group;
  IntMatrix phi;  ///< automorphism, in generator coordinates of group
};
struct DivisiblePart {
  PrimeSupport support;
  IntMatrix phi;  ///< acts on (Q/Z)^r localized at the support
};
struct DeclaredPart {
  FpGroup invariants;  ///< finite; coinvariants are trivial
  std::string note;
};
struct RationalPart {
  RatMatrix phi;  ///< invertible
};

using Part = std::variant<LatticePart, FinitePart, DivisiblePart, DeclaredPart, RationalPart>;

std::string part_kind(const Part& part);

/// free_rank copies of Z, rational_dim copies of Q (reported separately),
/// a finite group and divisible coranks keyed by support.
struct GroupDescriptor {
  std::size_t free_rank = 0;
  std::size_t rational_dim = 0;
  FpGroup finite_part = FpGroup::free(0);
  std::map<std::string, std::size_t> divisible_coranks;

  std::size_t rank() const { return free_rank + rational_dim; }
  bool has_divisible() const;
  bool is_finite() const { return rank() == 0 && !has_divisible(); }
  bool is_trivial() const { return is_finite() && finite_part.is_trivial(); }
  bool is_finitely_generated() const { return rational_dim == 0 && !has_divisible(); }
  /// Order when finite.
  std::optional<Integer> order() const;
  Integer torsion_order() const { return finite_part.torsion_order(); }
  std::string describe() const;

  friend GroupDescriptor operator+(const GroupDescriptor& a, const GroupDescriptor& b);
  friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b);
};

struct CanMapData {
  GroupDescriptor ker;
  GroupDescriptor coker;
  bool semisimple_at_1 = true;
};

/// Summary of M tensor Q: the dimension and phi on it.
struct RationalSummary {
  std::size_t dimension = 0;
  RatMatrix phi;
};

class FrobeniusModule {
 public:
  FrobeniusModule() = default;
  explicit FrobeniusModule(std::vector<Part> parts) : parts_(std::move(parts)) {}

  const std::vector<Part>& parts() const noexcept { return parts_; }
  void add(Part part) { parts_.push_back(std::move(part)); }
  bool empty() const noexcept { return parts_.empty(); }

  /// Every violated invariant, one line each; empty when valid.
  std::vector<std::string> validate() const;
  /// Throws InvalidInput with the diagnostics when invalid.
  void require_valid() const;

 private:
  std::vector<Part> parts_;
};

FrobeniusModule direct_sum(const FrobeniusModule& a, const FrobeniusModule& b);

/// Throws DegenerateDivisible for a divisible part with det(phi - 1) = 0 and
/// phi != 1. All operations below validate their input first.
GroupDescriptor invariants(const FrobeniusModule& m);
GroupDescriptor coinvariants(const FrobeniusModule& m);
CanMapData can_map_data(const FrobeniusModule& m);

GroupDescriptor invariants(const Part& p);
GroupDescriptor coinvariants(const Part& p);
CanMapData can_map_data(const Part& p);

std::size_t rank(const FrobeniusModule& m);
/// Product of the orders of finite and declared parts; nullopt (infinite)
/// when a divisible part is present.
std::optional<Integer> torsion_order(const FrobeniusModule& m);
RationalSummary tensor_q(const FrobeniusModule& m);
bool uses_declared_parts(const FrobeniusModule& m);

}  // namespace weil::frobmod
