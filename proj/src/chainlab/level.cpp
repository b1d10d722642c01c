#include "weil/chainlab/level.hpp"

#include <numeric>

#include "weil/exactalg/normal_form.hpp"
#include "weil/exactalg/poly.hpp"

namespace weil::chainlab {

namespace {

using exactalg::hconcat;

IntMatrix phi_power_matrix(const CoefModule& module, long k) {
  if (const auto* f = std::get_if<FiniteModule>(&module)) return f->phi_matrix_power(k);
  if (const auto* l = std::get_if<LatticeModule>(&module)) return l->phi_matrix_power(k);
  throw UnsupportedVariant("rational modules have no integral phi");
}

FpGroup repeated_sum(const FpGroup& g, std::size_t copies) {
  FpGroup out = FpGroup::free(0);
  for (std::size_t i = 0; i < copies; ++i) out = exactalg::direct_sum(out, g);
  return out;
}

template <class T>
exactalg::Matrix<T> differential(const exactalg::Matrix<T>& phi, std::size_t m) {
  const std::size_t g = phi.rows();
  exactalg::Matrix<T> d(m * g, m * g);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t prev = residue(static_cast<long>(i) - 1, m);
    for (std::size_t r = 0; r < g; ++r) {
      for (std::size_t c = 0; c < g; ++c) d(i * g + r, prev * g + c) += phi(r, c);
      d(i * g + r, i * g + r) -= 1;
    }
  }
  return d;
}

std::vector<IntVector> columns_of(const IntMatrix& m) {
  std::vector<IntVector> out;
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.column(j));
  return out;
}

IntVector head(const IntVector& v, std::size_t n) { return IntVector(v.begin(), v.begin() + n); }

}  // namespace

IntMatrix level_differential(const IntMatrix& phi, std::size_t m) { return differential(phi, m); }
RatMatrix level_differential(const RatMatrix& phi, std::size_t m) { return differential(phi, m); }

LevelCohomology level_cohomology(const CoefModule& module, std::size_t m) {
  if (m == 0) throw InvalidInput("level must be >= 1");
  const Presentation p = presentation(module);
  const FpGroup& g = p.group;
  const IntMatrix id = IntMatrix::identity(g.generators());
  const IntMatrix fwd = phi_power_matrix(module, static_cast<long>(m));
  const IntMatrix back = phi_power_matrix(module, -static_cast<long>(m));

  const FpGroup gm = repeated_sum(g, m);
  const FpMorphism d(gm, gm, level_differential(p.phi, m));
  return {
      exactalg::kernel(FpMorphism(g, g, fwd - id)).group,
      exactalg::cokernel(FpMorphism(g, g, id - back)).group,
      exactalg::kernel(d).group,
      exactalg::cokernel(d).group,
  };
}

RationalLevelCohomology rational_level_cohomology(const RationalModule& module, std::size_t m) {
  if (m == 0) throw InvalidInput("level must be >= 1");
  const std::size_t n = module.dimension();
  const RatMatrix id = RatMatrix::identity(n);
  const std::size_t r_fwd = exactalg::rank(module.phi_matrix_power(static_cast<long>(m)) - id);
  const std::size_t r_back = exactalg::rank(id - module.phi_matrix_power(-static_cast<long>(m)));
  const std::size_t r_d = exactalg::rank(level_differential(module.phi(), m));
  return {n - r_fwd, n - r_back, m * n - r_d, m * n - r_d};
}

SplittingReport splitting_check(const RationalModule& module, std::size_t m) {
  if (m == 0) throw InvalidInput("level must be >= 1");
  const RatMatrix fixed = exactalg::rational_kernel(
      module.phi_matrix_power(static_cast<long>(m)) - RatMatrix::identity(module.dimension()));
  SplittingReport report{fixed.cols(), true};
  const Rational inv_m(1, static_cast<long>(m));
  for (std::size_t j = 0; j < fixed.cols(); ++j) {
    const RatVector c = fixed.column(j);
    const RatVector back = module.scale(big_s(module, big_delta(module, c, m)), inv_m);
    if (!module.equal(back, c)) report.identity_verified = false;
  }
  return report;
}

Rational norm_colimit_value(const Integer& x, std::size_t m) {
  if (m == 0) throw InvalidInput("level must be >= 1");
  Rational r(x, Integer(static_cast<unsigned long>(m)));
  r.canonicalize();
  return r;
}

Rational fractional_part(const Rational& x) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - Rational(fl);
}

KahnM::KahnM(Rational first, Rational second)
    : first_(fractional_part(first)), second_(std::move(second)) {}

KahnM KahnM::act(long a) const { return KahnM(first_ + Rational(a) * second_, second_); }

KahnM operator+(const KahnM& a, const KahnM& b) {
  return KahnM(a.first_ + b.first_, a.second_ + b.second_);
}

namespace {

const Integer& integer_entry(const IntVector& v) {
  if (v.size() != 1) throw UnsupportedVariant("mu is defined for the Integers module only");
  return v[0];
}

}  // namespace

KahnM mu(const LevelElement<IntVector>& x) {
  const std::size_t m = x.level();
  if (m == 0) throw InvalidInput("level must be >= 1");
  const Rational mm(static_cast<long>(m));
  Rational first = 0, second = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Rational xi(integer_entry(x[i]));
    first += (Rational(1, 2) + Rational(static_cast<long>(i)) / mm) * xi;
    second -= xi / mm;
  }
  return KahnM(first, second);
}

KahnM xi(const Rational& y) { return KahnM(y, 0); }

Rational proj(const KahnM& v) { return v.second(); }

Rational s_prime(const LevelElement<IntVector>& x) {
  if (x.level() == 0) throw InvalidInput("level must be >= 1");
  Rational total = 0;
  for (const auto& e : x.entries) total += Rational(integer_entry(e));
  return total / Rational(static_cast<long>(x.level()));
}

FpMorphism connecting_hom(const ShortExactSequence& ses) {
  const Presentation a = presentation(ses.sub);
  const Presentation b = presentation(ses.middle);
  const Presentation c = presentation(ses.quotient);

  auto build = [](const FpGroup& s, const FpGroup& t, const IntMatrix& m, const char* what) {
    if (m.rows() != t.generators() || m.cols() != s.generators())
      throw NotExact(std::string(what) + " has the wrong shape");
    try {
      return FpMorphism(s, t, m);
    } catch (const IncompatibleMorphism&) {
      throw NotExact(std::string(what) + " is not a well-defined homomorphism");
    }
  };
  const FpMorphism inc = build(a.group, b.group, ses.inclusion, "inclusion");
  const FpMorphism prj = build(b.group, c.group, ses.projection, "projection");

  if (!compose(inc, a.phi_morphism()).same_map(compose(b.phi_morphism(), inc)))
    throw NotEquivariant("inclusion does not commute with phi");
  if (!compose(prj, b.phi_morphism()).same_map(compose(c.phi_morphism(), prj)))
    throw NotEquivariant("projection does not commute with phi");

  if (!exactalg::is_injective(inc)) throw NotExact("inclusion is not injective");
  if (!exactalg::is_surjective(prj)) throw NotExact("projection is not surjective");
  if (!compose(prj, inc).is_zero_map()) throw NotExact("projection after inclusion is nonzero");
  const IntMatrix inc_rel = hconcat(ses.inclusion, b.group.relations());
  for (const auto& k : columns_of(exactalg::kernel(prj).inclusion.matrix()))
    if (!exactalg::solve_integer(inc_rel, k)) throw NotExact("kernel of projection exceeds image");

  const IntMatrix id_a = IntMatrix::identity(a.group.generators());
  const IntMatrix id_b = IntMatrix::identity(b.group.generators());
  const IntMatrix id_c = IntMatrix::identity(c.group.generators());
  const auto fixed_c = exactalg::kernel(FpMorphism(c.group, c.group, c.phi - id_c));
  const FpGroup target = exactalg::cokernel(FpMorphism(a.group, a.group, a.phi - id_a)).group;

  const IntMatrix prj_rel = hconcat(ses.projection, c.group.relations());
  std::vector<IntVector> images;
  for (const auto& z : columns_of(fixed_c.inclusion.matrix())) {
    const auto lift = exactalg::solve_integer(prj_rel, z);
    if (!lift) throw NotExact("projection is not surjective");
    const IntVector w = (b.phi - id_b) * head(*lift, b.group.generators());
    const auto back = exactalg::solve_integer(inc_rel, w);
    if (!back) throw NotExact("boundary does not land in the image of the inclusion");
    images.push_back(head(*back, a.group.generators()));
  }
  return FpMorphism(fixed_c.group, target,
                    IntMatrix::from_columns(images, a.group.generators()));
}

ShortExactSequence extension_sequence(long n) {
  return {LatticeModule::integers(), LatticeModule(IntMatrix{{1, n}, {0, 1}}),
          LatticeModule::integers(), IntMatrix{{1}, {0}}, IntMatrix{{0, 1}}};
}

unsigned long stable_period(const RatMatrix& phi) {
  const std::size_t n = phi.rows();
  if (n == 0) return 1;
  const exactalg::PolyQ chi = exactalg::characteristic_polynomial(phi);
  unsigned long period = 1;
  // totient(k) >= sqrt(k / 2), so Phi_k has degree > n once k > 2 n^2.
  const unsigned long bound = 2 * n * n + 2;
  for (unsigned long k = 1; k <= bound; ++k) {
    if (exactalg::totient(k) > n) continue;
    if (exactalg::divmod(chi, exactalg::cyclotomic(static_cast<unsigned>(k))).second.is_zero())
      period = std::lcm(period, k);
  }
  return period;
}

FpGroup stable_invariants(const CoefModule& module) {
  if (const auto* f = std::get_if<FiniteModule>(&module)) return f->group();
  if (const auto* l = std::get_if<LatticeModule>(&module)) {
    const unsigned long period = stable_period(exactalg::to_rational(l->phi()));
    const IntMatrix k = exactalg::integer_kernel(
        l->phi_matrix_power(static_cast<long>(period)) - IntMatrix::identity(l->rank()));
    return FpGroup::free(k.cols());
  }
  const auto& r = std::get<RationalModule>(module);
  const unsigned long period = stable_period(r.phi());
  const RatMatrix k = exactalg::rational_kernel(
      r.phi_matrix_power(static_cast<long>(period)) - RatMatrix::identity(r.dimension()));
  return FpGroup::free(k.cols());
}

}  // namespace weil::chainlab
