#include "weil/zetaval/zeta.hpp"

namespace weil::zetaval {

namespace {

Rational rational_power(const Integer& base, long e) {
  Integer p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(1) / Rational(p) : Rational(p);
}

PolyQ exact_quotient(const PolyQ& a, const PolyQ& b) {
  auto [q, r] = exactalg::divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
  return q;
}

/// First `terms` coefficients of P'/P as a power series; needs P(0) = 1.
std::vector<Rational> log_derivative_series(const PolyQ& p, std::size_t terms) {
  // Solve P * S = P' coefficientwise.
  const PolyQ dp = p.derivative();
  std::vector<Rational> s(terms);
  for (std::size_t k = 0; k < terms; ++k) {
    Rational acc = dp.coeff(k);
    for (std::size_t j = 1; j <= k; ++j) acc -= p.coeff(j) * s[k - j];
    s[k] = acc;
  }
  return s;
}

}  // namespace

RationalFunction::RationalFunction(std::vector<Factor> factors) : factors_(std::move(factors)) {
  PolyQ num = PolyQ::constant(1), den = PolyQ::constant(1);
  for (const auto& f : factors_) {
    if (f.poly.is_zero()) throw InvalidFactor("zero polynomial factor");
    for (int k = 0; k < (f.exponent >= 0 ? f.exponent : -f.exponent); ++k)
      (f.exponent >= 0 ? num : den) = (f.exponent >= 0 ? num : den) * f.poly;
  }
  const PolyQ g = exactalg::gcd(num, den);
  num_ = exact_quotient(num, g);
  den_ = exact_quotient(den, g);
}

Rational RationalFunction::evaluate(const Rational& t) const {
  Rational value = 1;
  for (const auto& f : factors_) {
    const Rational v = f.poly.evaluate(t);
    if (v == 0 && f.exponent < 0) throw InvalidInput("rational function has a pole at " + exactalg::to_string(t));
    for (int k = 0; k < (f.exponent >= 0 ? f.exponent : -f.exponent); ++k)
      value = f.exponent >= 0 ? Rational(value * v) : Rational(value / v);
  }
  return value;
}

Rational RationalFunction::evaluate_reduced(const Rational& t) const {
  const Rational d = den_.evaluate(t);
  if (d == 0) throw InvalidInput("rational function has a pole at " + exactalg::to_string(t));
  return num_.evaluate(t) / d;
}

RationalFunction zeta_from_factors(const ZetaInput& z) {
  if (z.factors.empty()) throw InvalidFactor("zeta input has no factors");
  std::vector<Factor> factors;
  for (std::size_t i = 0; i < z.factors.size(); ++i) {
    const auto& coeffs = z.factors[i];
    if (coeffs.empty() || coeffs[0] != 1)
      throw InvalidFactor("P_" + std::to_string(i) + " must have constant term 1");
    factors.push_back({PolyQ::from_integers(coeffs), i % 2 == 0 ? -1 : 1});
  }
  return RationalFunction(std::move(factors));
}

std::size_t check_point_counts(const RationalFunction& z, const std::vector<Integer>& counts) {
  if (counts.empty()) throw InvalidInput("point counts must be nonempty");
  std::vector<Rational> total(counts.size());
  for (const auto& f : z.factors()) {
    if (f.poly.coeff(0) != 1) throw InvalidFactor("series expansion needs constant term 1");
    const auto s = log_derivative_series(f.poly, counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) total[k] += Rational(f.exponent) * s[k];
  }
  // [t^{m-1}] Z'/Z = m [t^m] log Z = N_m.
  for (std::size_t k = 0; k < counts.size(); ++k)
    if (total[k] != Rational(counts[k])) {
      const int order = static_cast<int>(k + 1);
      throw SeriesMismatch(order, "point count N_" + std::to_string(order) + " = " +
                                      counts[k].get_str() + " but the zeta function gives " +
                                      exactalg::to_string(total[k]));
    }
  return counts.size();
}

SpecialValue special_value(const RationalFunction& z, const Integer& q, long n) {
  const Rational point = rational_power(q, -n);
  const PolyQ linear({Rational(1), -rational_power(q, n)});
  SpecialValue out;
  out.leading = 1;
  long vanishing = 0;
  for (const auto& f : z.factors()) {
    PolyQ rest = f.poly;
    long k = 0;
    for (;;) {
      auto [quot, rem] = exactalg::divmod(rest, linear);
      if (!rem.is_zero()) break;
      rest = quot;
      ++k;
    }
    vanishing += k * f.exponent;
    const Rational v = rest.evaluate(point);
    for (int e = 0; e < (f.exponent >= 0 ? f.exponent : -f.exponent); ++e)
      out.leading = f.exponent >= 0 ? Rational(out.leading * v) : Rational(out.leading / v);
  }
  out.rho = -vanishing;
  return out;
}

Integer hodge_chi(const HodgeTable& h, long n, int d) {
  Integer total = 0;
  for (long i = 0; i <= std::min<long>(n, d); ++i)
    for (long j = 0; j <= d; ++j) {
      if (static_cast<std::size_t>(j) >= h.size() || static_cast<std::size_t>(i) >= h[j].size()) continue;
      const Integer term = Integer(n - i) * h[j][i];
      total += ((i + j) % 2 == 0) ? term : Integer(-term);
    }
  return total;
}

ZetaFormulaReport verify_zeta_formula(const ZetaInput& z, const weilcoh::EtaleData& data,
                                      const HodgeTable& h) {
  if (z.q != data.q) throw InvalidInput("zeta input and etale data disagree on q");
  const RationalFunction zf = zeta_from_factors(z);
  const SpecialValue sv = special_value(zf, z.q, data.n);
  const weilcoh::WeilReport report = weilcoh::descent(data);

  ZetaFormulaReport out;
  out.lhs = sv.leading;
  out.chi_e = weilcoh::chi_e(report);
  out.hodge_exponent = hodge_chi(h, data.n, data.d);
  if (!out.hodge_exponent.fits_slong_p()) throw Unsupported("Hodge exponent out of range");
  out.rhs = out.chi_e * rational_power(z.q, out.hodge_exponent.get_si());
  out.rho_zeta = sv.rho;
  out.rho_weil = weilcoh::rho(report);
  out.values_match = abs(out.lhs) == abs(out.rhs);
  out.sign = (out.lhs < 0) == (out.rhs < 0) ? 1 : -1;
  out.rho_matches = out.rho_zeta == static_cast<long>(out.rho_weil);
  return out;
}

}  // namespace weil::zetaval
