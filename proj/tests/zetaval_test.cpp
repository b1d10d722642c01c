#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "weil/zetaval/examples.hpp"

using namespace weil::zetaval;
namespace exactalg = weil::exactalg;

namespace {

Rational rpow(const Rational& b, long e) {
  Rational r = 1;
  for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= b;
  return e < 0 ? Rational(1 / r) : r;
}

// Z(t) for P^d by the closed form prod_i 1/(1 - q^i t).
Rational projective_zeta(long q, int d, const Rational& t) {
  Rational out = 1;
  for (int i = 0; i <= d; ++i) out /= 1 - rpow(q, i) * t;
  return out;
}

// Z(t) for an elliptic curve by the closed form.
Rational elliptic_zeta(long q, long a, const Rational& t) {
  return (1 - a * t + q * t * t) / ((1 - t) * (1 - q * t));
}

Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 37);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

ZetaInput input(long q, std::vector<std::vector<Integer>> factors) {
  ZetaInput z;
  z.q = q;
  z.factors = std::move(factors);
  return z;
}

weil::weilcoh::EtaleData reversed_parts(weil::weilcoh::EtaleData data) {
  for (auto& [t, m] : data.modules) {
    auto parts = m.parts();
    std::reverse(parts.begin(), parts.end());
    m = weil::frobmod::FrobeniusModule(std::move(parts));
  }
  return data;
}

const std::vector<long> kQs = {2, 3, 4, 5, 7};

}  // namespace

TEST(Zeta, FactorShapes) {
  const auto p1 = zeta_from_factors(input(3, {{1, -1}, {1}, {1, -3}}));
  EXPECT_EQ(p1.numerator().degree(), 0);
  EXPECT_EQ(p1.denominator().degree(), 2);
  EXPECT_EQ(p1.evaluate(Rational(1, 5)), projective_zeta(3, 1, Rational(1, 5)));
  const auto point = zeta_from_factors(input(7, {{1, -1}}));
  EXPECT_EQ(point.evaluate(Rational(1, 2)), 2);
  const auto ell = zeta_from_factors(input(5, {{1, -1}, {1, -2, 5}, {1, -5}}));
  EXPECT_EQ(ell.numerator().degree(), 2);
  EXPECT_EQ(ell.evaluate(Rational(2, 3)), elliptic_zeta(5, 2, Rational(2, 3)));
  EXPECT_THROW(zeta_from_factors(input(5, {{2, -1}})), weil::InvalidFactor);
  EXPECT_THROW(zeta_from_factors(input(5, {})), weil::InvalidFactor);
  EXPECT_THROW(point.evaluate(1), weil::InvalidInput);
}

TEST(Zeta, ReducedFormAgreesWithFactored) {
  std::mt19937_64 rng(3);
  // A factor shared by numerator and denominator cancels in the reduced form.
  const auto z = zeta_from_factors(input(3, {{1, -1}, {1, -4, 3}, {1, -3}, {1, 2}, {1, 5, 6}}));
  EXPECT_LT(z.denominator().degree() + z.numerator().degree(), 7);
  for (const auto& f : std::vector<RationalFunction>{
           z, zeta_from_factors(input(5, {{1, -1}, {1, -2, 5}, {1, -5}})),
           zeta_from_factors(input(2, {{1, -1}, {1}, {1, -2}, {1}, {1, -4}}))}) {
    int checked = 0;
    while (checked < 20) {
      const Rational t = random_point(rng);
      if (f.denominator().evaluate(t) == 0) continue;
      bool pole = false;
      for (const auto& fac : f.factors()) pole = pole || (fac.exponent < 0 && fac.poly.evaluate(t) == 0);
      if (pole) continue;
      EXPECT_EQ(f.evaluate(t), f.evaluate_reduced(t));
      ++checked;
    }
  }
}

TEST(PointCounts, ProjectiveLineAndPoint) {
  const auto p1 = zeta_from_factors(input(2, {{1, -1}, {1}, {1, -2}}));
  std::vector<Integer> counts;
  for (int m = 1; m <= 10; ++m) counts.push_back((Integer(1) << m) + 1);
  EXPECT_EQ(check_point_counts(p1, counts), 10u);
  const auto point = zeta_from_factors(input(2, {{1, -1}}));
  EXPECT_EQ(check_point_counts(point, std::vector<Integer>(5, 1)), 5u);
  counts[0] = 4;
  try {
    check_point_counts(p1, counts);
    ADD_FAILURE() << "expected SeriesMismatch";
  } catch (const weil::SeriesMismatch& e) {
    EXPECT_EQ(e.order(), 1);
  }
  counts[0] = 3;
  counts[3] = 0;
  try {
    check_point_counts(p1, counts);
    ADD_FAILURE() << "expected SeriesMismatch";
  } catch (const weil::SeriesMismatch& e) {
    EXPECT_EQ(e.order(), 4);
  }
  EXPECT_THROW(check_point_counts(p1, {}), weil::InvalidInput);
}

TEST(PointCounts, BuildersToOrderSix) {
  for (long q : kQs)
    for (int d = 0; d <= 4; ++d) {
      const auto ex = example_projective_space(q, d, 0);
      ASSERT_TRUE(ex.zeta.point_counts);
      const auto& counts = *ex.zeta.point_counts;
      ASSERT_EQ(counts.size(), 6u);
      for (int m = 1; m <= 6; ++m) {
        Rational expected = 0;
        for (int i = 0; i <= d; ++i) expected += rpow(q, i * m);
        EXPECT_EQ(Rational(counts[m - 1]), expected);
      }
      EXPECT_EQ(check_point_counts(zeta_from_factors(ex.zeta), counts), 6u);
    }
  for (auto [q, a] : std::vector<std::pair<long, long>>{{5, 2}, {7, 3}, {11, -4}, {4, 4}, {9, -6}}) {
    const auto ex = example_elliptic(q, a);
    EXPECT_EQ(ex.zeta.point_counts->front(), q + 1 - a);
    EXPECT_EQ(check_point_counts(zeta_from_factors(ex.zeta), *ex.zeta.point_counts), 6u);
  }
}

TEST(SpecialValue, Examples) {
  const auto point = zeta_from_factors(input(5, {{1, -1}}));
  auto sv = special_value(point, 5, 0);
  EXPECT_EQ(sv.rho, 1);
  EXPECT_EQ(sv.leading, 1);

  const auto p2 = zeta_from_factors(input(3, {{1, -1}, {1}, {1, -3}, {1}, {1, -9}}));
  sv = special_value(p2, 3, 1);
  EXPECT_EQ(sv.rho, 1);
  EXPECT_EQ(sv.leading, Rational(-3, 4));

  const auto ell = zeta_from_factors(input(5, {{1, -1}, {1, -2, 5}, {1, -5}}));
  sv = special_value(ell, 5, 1);
  EXPECT_EQ(sv.rho, 1);
  EXPECT_EQ(sv.leading, 1);
}

TEST(SpecialValue, NonPoleIsPlainEvaluation) {
  for (long q : kQs)
    for (int d = 0; d <= 3; ++d) {
      const auto z = zeta_from_factors(example_projective_space(q, d, 0).zeta);
      for (long n : {-2L, -1L, static_cast<long>(d) + 1}) {
        const auto sv = special_value(z, q, n);
        EXPECT_EQ(sv.rho, 0);
        EXPECT_EQ(sv.leading, projective_zeta(q, d, rpow(q, -n)));
      }
    }
}

TEST(SpecialValue, ZeroGivesNegativeRho) {
  // (1 - 3t)^2 / (1 - t) vanishes to order 2 at t = 1/3.
  const RationalFunction z({{PolyQ::from_integers({1, -3}), 2}, {PolyQ::from_integers({1, -1}), -1}});
  const auto sv = special_value(z, 3, 1);
  EXPECT_EQ(sv.rho, -2);
  EXPECT_EQ(sv.leading, Rational(3, 2));
}

TEST(Hodge, Examples) {
  EXPECT_EQ(hodge_chi({{1, 1}, {1, 1}}, -1, 1), 0);
  EXPECT_EQ(hodge_chi({{1, 1}, {1, 1}}, 1, 1), 0);
  for (int d = 0; d <= 5; ++d)
    for (long n = 0; n <= d; ++n) EXPECT_EQ(hodge_chi(example_projective_space(2, d, 0).hodge, n, d), n * (n + 1) / 2);
  EXPECT_EQ(hodge_chi({{1}}, 3, 2), 3);
}

TEST(FunctionalEquation, Builders) {
  std::mt19937_64 rng(17);
  for (long q : kQs)
    for (int d = 0; d <= 4; ++d) {
      const auto z = zeta_from_factors(example_projective_space(q, d, 0).zeta);
      for (int rep = 0; rep < 5; ++rep) {
        const Rational t = random_point(rng);
        if (t == 0) continue;
        const Rational dual = 1 / (rpow(q, d) * t);
        bool pole = false;
        for (int i = 0; i <= d; ++i) pole = pole || rpow(q, i) * t == 1 || rpow(q, i) * dual == 1;
        if (pole) continue;
        const Rational factor = rpow(q, d * (d + 1) / 2) * rpow(t, d + 1) * (d % 2 == 0 ? -1 : 1);
        EXPECT_EQ(z.evaluate(dual), factor * z.evaluate(t));
      }
    }
  for (auto [q, a] : std::vector<std::pair<long, long>>{{5, 2}, {7, 3}, {11, -4}}) {
    const auto z = zeta_from_factors(example_elliptic(q, a).zeta);
    for (int rep = 0; rep < 5; ++rep) {
      const Rational t = random_point(rng);
      if (t == 0 || t == 1 || q * t == 1 || t == Rational(1, q) || t == Rational(1, q * q)) continue;
      EXPECT_EQ(z.evaluate(1 / (q * t)), z.evaluate(t));
    }
  }
}

TEST(Formula, WorkedExamples) {
  const auto p2 = example_projective_space(3, 2, 1);
  auto r = verify_zeta_formula(p2.zeta, p2.etale, p2.hodge);
  EXPECT_EQ(r.lhs, Rational(-3, 4));
  EXPECT_EQ(r.chi_e, Rational(1, 4));
  EXPECT_EQ(r.hodge_exponent, 1);
  EXPECT_EQ(r.rhs, Rational(3, 4));
  EXPECT_EQ(r.sign, -1);
  EXPECT_EQ(r.rho_zeta, 1);
  EXPECT_TRUE(r.passed());

  const auto p1 = example_projective_space(2, 1, -1);
  r = verify_zeta_formula(p1.zeta, p1.etale, p1.hodge);
  EXPECT_EQ(r.lhs, Rational(1, 3));
  EXPECT_EQ(r.rhs, Rational(1, 3));
  EXPECT_EQ(r.rho_zeta, 0);
  EXPECT_TRUE(r.passed());

  const auto point = example_projective_space(5, 0, 0);
  r = verify_zeta_formula(point.zeta, point.etale, point.hodge);
  EXPECT_TRUE(r.passed());
  const auto report = weil::weilcoh::descent(point.etale);
  EXPECT_EQ(report.degree(0).rank, 1u);
  EXPECT_EQ(report.degree(1).rank, 1u);
}

TEST(Formula, ProjectiveSpacesAgainstClosedForms) {
  for (long q : kQs)
    for (int d = 0; d <= 4; ++d)
      for (long n = -2; n <= d; ++n) {
        const auto ex = example_projective_space(q, d, n);
        const auto r = verify_zeta_formula(ex.zeta, ex.etale, ex.hodge);
        Rational lhs = 1, chi = 1;
        for (int i = 0; i <= d; ++i) {
          if (i == n) continue;
          lhs /= 1 - rpow(q, i - n);
          chi /= rpow(q, std::abs(n - i)) - 1;
        }
        const Rational rhs = chi * rpow(q, n >= 0 ? n * (n + 1) / 2 : 0);
        EXPECT_EQ(r.lhs, lhs) << q << " " << d << " " << n;
        EXPECT_EQ(r.rhs, rhs) << q << " " << d << " " << n;
        EXPECT_TRUE(r.passed()) << q << " " << d << " " << n;
        EXPECT_EQ(r.rho_weil, (n >= 0 && n <= d) ? 1u : 0u);
        EXPECT_TRUE(weil::weilcoh::descent(ex.etale).warnings.empty());
      }
}

TEST(Formula, EllipticCurves) {
  for (auto [q, a] : std::vector<std::pair<long, long>>{{5, 2}, {7, 3}, {11, -4}, {5, 1}, {4, -3}, {9, 6}}) {
    const auto ex = example_elliptic(q, a);
    const auto r = verify_zeta_formula(ex.zeta, ex.etale, ex.hodge);
    const Rational expected = frac(q + 1 - a, q - 1);
    const Rational direct = zeta_from_factors(ex.zeta).numerator().evaluate(Rational(1, q)) /
                            (1 - Rational(1, q));
    EXPECT_EQ(abs(r.lhs), abs(direct));
    EXPECT_EQ(abs(r.lhs), expected) << q << " " << a;
    EXPECT_EQ(r.rhs, expected);
    EXPECT_EQ(r.hodge_exponent, 0);
    EXPECT_TRUE(r.passed());
  }
  EXPECT_EQ(frac(5 + 1 - 2, 5 - 1), 1);
  EXPECT_EQ(frac(7 + 1 - 3, 7 - 1), Rational(5, 6));
  EXPECT_EQ(frac(11 + 1 + 4, 11 - 1), Rational(8, 5));
}

TEST(Formula, TamperedHodgeFails) {
  auto ex = example_projective_space(3, 2, 1);
  ex.hodge[0][0] = 2;
  EXPECT_FALSE(verify_zeta_formula(ex.zeta, ex.etale, ex.hodge).passed());
}

TEST(Formula, PartOrderDoesNotMatter) {
  std::vector<ExampleData> cases = {example_elliptic(5, 1), example_elliptic(7, 3), example_projective_space(3, 3, 2)};
  auto extra = example_projective_space(5, 2, 1);
  extra.etale.modules[2].add(weil::frobmod::FinitePart{exactalg::FpGroup::cyclic(6), IntMatrix{{-1}}});
  cases.push_back(extra);
  for (const auto& ex : cases) {
    const auto a = verify_zeta_formula(ex.zeta, ex.etale, ex.hodge);
    const auto b = verify_zeta_formula(ex.zeta, reversed_parts(ex.etale), ex.hodge);
    EXPECT_EQ(a.passed(), b.passed());
    EXPECT_EQ(a.lhs, b.lhs);
    EXPECT_EQ(a.rhs, b.rhs);
    EXPECT_EQ(a.rho_weil, b.rho_weil);
  }
}

TEST(Regulator, ProjectiveSpaces) {
  for (long q : kQs)
    for (int d = 0; d <= 3; ++d)
      for (long n = 0; n <= d; ++n) {
        const auto ex = example_projective_space(q, d, n);
        const auto r = weil::weilcoh::regulator_check(weil::weilcoh::descent(ex.etale), ex.pairing);
        Rational expected = 1;
        for (int j = 0; j <= d; ++j)
          if (j != n) expected /= rpow(q, std::abs(n - j)) - 1;
        EXPECT_EQ(r.regulator, 1);
        EXPECT_EQ(r.chi_e, expected);
        EXPECT_EQ(r.torsion_product, expected);
        EXPECT_TRUE(r.passed);
      }
  const auto report = weil::weilcoh::descent(example_projective_space(3, 2, 1).etale);
  EXPECT_EQ(report.degree(1).torsion.value, 2);
  EXPECT_EQ(report.degree(3).torsion.value, 1);
  EXPECT_EQ(report.degree(5).torsion.value, 2);
}

TEST(Builders, Validation) {
  EXPECT_THROW(example_elliptic(5, 10), weil::HasseBoundViolation);
  EXPECT_THROW(example_elliptic(5, 5), weil::HasseBoundViolation);
  EXPECT_NO_THROW(example_elliptic(4, 4));
  EXPECT_THROW(example_elliptic(5, 1, Integer(1)), weil::PPartMismatch);
  EXPECT_NO_THROW(example_elliptic(5, 1, Integer(5)));
  EXPECT_NO_THROW(example_elliptic(5, 2, Integer(1)));
  EXPECT_THROW(example_projective_space(6, 1, 0), weil::InvalidInput);
  EXPECT_THROW(example_projective_space(1, 1, 0), weil::InvalidInput);
  EXPECT_THROW(example_projective_space(3, 1, 2), weil::InvalidInput);
  EXPECT_EQ(characteristic_of(9), 3u);
  EXPECT_EQ(characteristic_of(8), 2u);
  EXPECT_EQ(characteristic_of(7), 7u);
  EXPECT_TRUE(example_elliptic(5, 2).etale.validate().empty());
  EXPECT_EQ(example_elliptic(5, 1).etale.modules.at(2).parts().size(), 3u);
  EXPECT_EQ(example_elliptic(5, 2).etale.modules.at(2).parts().size(), 2u);
}
