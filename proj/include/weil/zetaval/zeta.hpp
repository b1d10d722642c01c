#pragma once

// Zeta functions as factored rational functions, their special values at
// t = q^-n, and the comparison with the Weil-etale side.

#include <optional>
#include <vector>

#include "weil/exactalg/poly.hpp"
#include "weil/weilcoh/weil_report.hpp"

namespace weil::zetaval {

using exactalg::Integer;
using exactalg::IntMatrix;
using exactalg::PolyQ;
using exactalg::Rational;

struct Factor {
  PolyQ poly;
  int exponent = 1;
};

/// Product of factor^exponent, kept factored, with a reduced
/// numerator/denominator pair alongside.
class RationalFunction {
 public:
  explicit RationalFunction(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  const PolyQ& numerator() const noexcept { return num_; }
  const PolyQ& denominator() const noexcept { return den_; }

  /// Value from the factored form; throws InvalidInput at a pole.
  Rational evaluate(const Rational& t) const;
  /// Value from the reduced form.
  Rational evaluate_reduced(const Rational& t) const;

 private:
  std::vector<Factor> factors_;
  PolyQ num_;
  PolyQ den_;
};

struct ZetaInput {
  Integer q;
  /// P_0 .. P_{2d}, integer coefficients from the constant term up.
  std::vector<std::vector<Integer>> factors;
  std::optional<std::vector<Integer>> point_counts;  ///< N_1 .. N_k
};

/// Z = prod P_i^{(-1)^{i+1}}. Throws InvalidFactor unless every constant
/// term is 1.
RationalFunction zeta_from_factors(const ZetaInput& z);

/// Checks [t^m] log Z = N_m / m for m = 1..k. Throws SeriesMismatch at the
/// first failing order; returns the number of orders checked.
std::size_t check_point_counts(const RationalFunction& z, const std::vector<Integer>& counts);

struct SpecialValue {
  long rho = 0;  ///< pole order at t = q^-n (negative for a zero)
  Rational leading;
};

SpecialValue special_value(const RationalFunction& z, const Integer& q, long n);

/// h[j][i] = dim H^j(X, Omega^i); missing entries count as 0.
using HodgeTable = std::vector<std::vector<long>>;

/// sum over 0 <= i <= n, 0 <= j <= d of (-1)^{i+j} (n - i) h[j][i].
Integer hodge_chi(const HodgeTable& h, long n, int d);

struct ZetaFormulaReport {
  Rational lhs;            ///< leading coefficient of Z at q^-n
  Rational chi_e;
  Integer hodge_exponent;
  Rational rhs;            ///< chi_e * q^hodge_exponent
  long rho_zeta = 0;
  std::size_t rho_weil = 0;
  int sign = 1;            ///< lhs = sign * rhs when the values match
  bool values_match = false;
  bool rho_matches = false;
  bool passed() const { return values_match && rho_matches; }
};

/// Throws NotSemisimple when chi_e is undefined.
ZetaFormulaReport verify_zeta_formula(const ZetaInput& z, const weilcoh::EtaleData& data,
                                      const HodgeTable& h);

}  // namespace weil::zetaval
