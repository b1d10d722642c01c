#pragma once

#include <string>
#include <utility>
#include <vector>

#include "weil/exactalg/matrix.hpp"

namespace weil::exactalg {

/// Univariate polynomial over Q, coefficients stored lowest degree first
/// with trailing zeros trimmed (the zero polynomial has no coefficients).
class PolyQ {
 public:
  PolyQ() = default;
  explicit PolyQ(std::vector<Rational> coeffs);
  static PolyQ from_integers(const std::vector<Integer>& coeffs);
  static PolyQ constant(const Rational& c);
  /// c * t^k
  static PolyQ monomial(const Rational& c, std::size_t k);

  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  Rational coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Rational(0);
  }
  Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

  Rational evaluate(const Rational& t) const;
  PolyQ derivative() const;

  friend PolyQ operator+(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator-(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator*(const Rational& s, const PolyQ& a);
  friend bool operator==(const PolyQ& a, const PolyQ& b) = default;

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder; throws InvalidInput on division by zero.
std::pair<PolyQ, PolyQ> divmod(const PolyQ& a, const PolyQ& b);
PolyQ gcd(const PolyQ& a, const PolyQ& b);
PolyQ pow(const PolyQ& a, unsigned k);

/// Characteristic polynomial det(x I - m) (Faddeev-LeVerrier).
PolyQ characteristic_polynomial(const RatMatrix& m);

/// The k-th cyclotomic polynomial.
PolyQ cyclotomic(unsigned k);

/// Euler's totient.
unsigned long totient(unsigned long k);

}  // namespace weil::exactalg
