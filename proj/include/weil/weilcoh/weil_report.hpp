#pragma once

// Weil-etale cohomology from Frobenius-module data: the descent sequence
// 0 -> (A^{t-1})_G -> H^t_W -> (A^t)^G -> 0, the cup-e complex and its
// Euler characteristic, and structural checks on the result.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weil/frobmod/frobenius_module.hpp"

namespace weil::weilcoh {

using exactalg::Integer;
using exactalg::IntMatrix;
using exactalg::Rational;
using exactalg::FpGroup;
using frobmod::CanMapData;
using frobmod::FrobeniusModule;
using frobmod::GroupDescriptor;

struct EtaleData {
  Integer q;
  unsigned long p = 0;
  int d = 0;
  long n = 0;
  /// A^t = H^t(X-bar, Z(n)) for t in [0, 2d+1]; absent degrees are zero.
  std::map<int, FrobeniusModule> modules;

  const FrobeniusModule& module(int t) const;
  std::vector<std::string> validate() const;
  void require_valid() const;
};

struct TorsionOrder {
  enum class Kind { Exact, Infinite, Ambiguous };
  Kind kind = Kind::Exact;
  Integer value = 1;  ///< Exact order, or the lower bound when Ambiguous
  std::optional<Integer> upper;  ///< Ambiguous only; nullopt when unbounded

  bool exact() const { return kind == Kind::Exact; }
  std::string describe() const;
};

struct DegreeReport {
  int t = 0;
  GroupDescriptor sub;   ///< coinvariants of A^{t-1}
  GroupDescriptor quot;  ///< invariants of A^t
  std::size_t rank = 0;
  bool finitely_generated = true;
  TorsionOrder torsion;

  bool is_zero() const { return sub.is_trivial() && quot.is_trivial(); }
};

struct WeilReport {
  Integer q;
  int d = 0;
  long n = 0;
  std::vector<DegreeReport> degrees;  ///< t = 0 .. 2d+2
  std::vector<CanMapData> can;        ///< can_t for t = 0 .. 2d+1
  std::optional<Rational> chi_e;      ///< defined iff every can_t is semisimple at 1
  std::size_t rho = 0;
  std::vector<std::string> warnings;

  int top_degree() const { return 2 * d + 2; }
  const DegreeReport& degree(int t) const;
};

/// Throws DegenerateDivisible (propagated) and InvalidInput.
WeilReport descent(const EtaleData& data);

/// Order of H^t of the cup-e complex for t = 0 .. 2d+2. Throws NotSemisimple
/// with the first degree whose canonical map is not semisimple at 1.
std::vector<Integer> cup_e_complex(const WeilReport& report);
/// Throws NotSemisimple.
Rational chi_e(const WeilReport& report);
std::size_t rho(const WeilReport& report);

std::vector<std::string> check_vanishing_bound(const WeilReport& report);

struct ConjectureVerdicts {
  std::map<int, bool> finitely_generated;  ///< per degree of H^t_W
  std::map<int, bool> semisimple;          ///< per degree of A^t
  bool all_finitely_generated() const;
  bool all_semisimple() const;
};
ConjectureVerdicts conjecture_verdicts(const WeilReport& report);

struct RationalSplittingReport {
  bool consistent = true;
  std::vector<std::string> mismatches;
};
/// rank H^i_W = h^i + h^{i-1} and the image of e into degree i has rank
/// h^{i-1}, with h^i = dim H^i_M(X, Q(n)).
RationalSplittingReport rational_splitting_check(const WeilReport& report,
                                                 const std::map<int, std::size_t>& motivic_dims);

struct DegreeStructureReport {
  bool top_is_z = false;            ///< H^{2d+1}_W is Z via the coinvariants of the Z summand
  bool cup_e_surjective = false;    ///< can on the Z summand is onto
  GroupDescriptor torsion_invariants;  ///< invariants of the torsion summands of A^{2d}
  bool passed() const { return top_is_z && cup_e_surjective; }
};
/// Requires n = d and A^{2d} = Z (one rank-1 lattice part) plus torsion
/// parts; throws ShapeMismatch otherwise.
DegreeStructureReport degree_structure_check(const EtaleData& data);

struct RegulatorReport {
  Integer regulator;
  Rational torsion_product;  ///< prod_t |H^t_W,tor|^{(-1)^t}
  Rational chi_e;
  bool passed = false;
};
/// Throws AmbiguousTorsion, RankMismatch, NotSemisimple.
RegulatorReport regulator_check(const WeilReport& report, const IntMatrix& pairing);

}  // namespace weil::weilcoh
