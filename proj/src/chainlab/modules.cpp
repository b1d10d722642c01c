#include "weil/chainlab/modules.hpp"

namespace weil::chainlab {

namespace {

constexpr unsigned long kMaxPhiOrder = 1'000'000;

void reduce_rows(IntMatrix& m, const IntVector& moduli) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      mpz_fdiv_r(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), moduli[i].get_mpz_t());
}

IntMatrix reduced_product(const IntMatrix& a, const IntMatrix& b, const IntVector& moduli) {
  IntMatrix c = a * b;
  reduce_rows(c, moduli);
  return c;
}

}  // namespace

FiniteModule::FiniteModule(FpGroup group, const IntMatrix& phi) : group_(std::move(group)) {
  if (!group_.is_finite()) throw InvalidInput("finite module over an infinite group");
  FpMorphism checked(group_, group_, phi);  // throws IncompatibleMorphism
  moduli_ = group_.invariant_factors();
  phi_ = group_.to_smith() * phi * group_.from_smith();
  finish();
}

FiniteModule FiniteModule::from_moduli(const IntVector& moduli, const IntMatrix& phi) {
  return FiniteModule(FpGroup::from_invariants(moduli), phi);
}

void FiniteModule::finish() {
  reduce_rows(phi_, moduli_);
  const FpGroup sg = smith_group();
  if (!exactalg::is_injective(FpMorphism(sg, sg, phi_)))
    throw InvalidInput("phi is not an automorphism of the finite module");
  const IntMatrix id = IntMatrix::identity(moduli_.size());
  IntMatrix p = phi_;
  order_ = 1;
  while (p != id) {
    p = reduced_product(p, phi_, moduli_);
    if (++order_ > kMaxPhiOrder) throw Unsupported("phi has excessive order");
  }
  phi_inv_ = phi_matrix_power(static_cast<long>(order_) - 1);
}

Integer FiniteModule::order() const { return group_.torsion_order(); }

FpGroup FiniteModule::smith_group() const { return FpGroup::from_invariants(moduli_); }

IntMatrix FiniteModule::phi_matrix_power(long k) const {
  long e = k % static_cast<long>(order_);
  if (e < 0) e += static_cast<long>(order_);
  IntMatrix result = IntMatrix::identity(moduli_.size());
  IntMatrix base = phi_;
  unsigned long ue = static_cast<unsigned long>(e);
  while (ue > 0) {
    if (ue & 1UL) result = reduced_product(result, base, moduli_);
    ue >>= 1;
    if (ue) base = reduced_product(base, base, moduli_);
  }
  return result;
}

FiniteModule::element_type FiniteModule::reduce(element_type x) const {
  for (std::size_t i = 0; i < x.size(); ++i)
    mpz_fdiv_r(x[i].get_mpz_t(), x[i].get_mpz_t(), moduli_[i].get_mpz_t());
  return x;
}

FiniteModule::element_type FiniteModule::add(const element_type& a, const element_type& b) const {
  element_type c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return reduce(std::move(c));
}

FiniteModule::element_type FiniteModule::sub(const element_type& a, const element_type& b) const {
  element_type c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return reduce(std::move(c));
}

FiniteModule::element_type FiniteModule::neg(const element_type& a) const {
  return sub(zero(), a);
}

FiniteModule::element_type FiniteModule::scale(const element_type& a, const Integer& c) const {
  element_type r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return reduce(std::move(r));
}

FiniteModule::element_type FiniteModule::phi_power(const element_type& a, long k) const {
  long e = k % static_cast<long>(order_);
  if (e < 0) e += static_cast<long>(order_);
  element_type x = reduce(a);
  if (e == 0) return x;
  // Short exponents are cheaper applied directly than as a matrix power.
  if (e <= 8) {
    for (long i = 0; i < e; ++i) x = reduce(phi_ * x);
    return x;
  }
  return reduce(phi_matrix_power(e) * x);
}

LatticeModule::LatticeModule(IntMatrix phi) : phi_(std::move(phi)) {
  if (!phi_.is_square()) throw InvalidInput("lattice phi must be square");
  const Integer det = exactalg::determinant(phi_);
  if (det != 1 && det != -1) throw InvalidInput("lattice phi must have determinant +-1");
  phi_inv_ = exactalg::unimodular_inverse(phi_);
}

IntMatrix LatticeModule::phi_matrix_power(long k) const {
  return exactalg::power(k >= 0 ? phi_ : phi_inv_, static_cast<unsigned long>(k >= 0 ? k : -k));
}

LatticeModule::element_type LatticeModule::add(const element_type& a, const element_type& b) const {
  element_type c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

LatticeModule::element_type LatticeModule::sub(const element_type& a, const element_type& b) const {
  element_type c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

LatticeModule::element_type LatticeModule::neg(const element_type& a) const {
  return sub(zero(), a);
}

LatticeModule::element_type LatticeModule::scale(const element_type& a, const Integer& c) const {
  element_type r = a;
  for (auto& x : r) x *= c;
  return r;
}

LatticeModule::element_type LatticeModule::phi_power(const element_type& a, long k) const {
  element_type x = a;
  const IntMatrix& step = k >= 0 ? phi_ : phi_inv_;
  for (long i = 0; i < (k >= 0 ? k : -k); ++i) x = step * x;
  return x;
}

RationalModule::RationalModule(RatMatrix phi) : phi_(std::move(phi)) {
  auto inv = exactalg::inverse(phi_);
  if (!inv) throw InvalidInput("rational phi must be invertible");
  phi_inv_ = std::move(*inv);
}

RatMatrix RationalModule::phi_matrix_power(long k) const {
  return exactalg::power(k >= 0 ? phi_ : phi_inv_, static_cast<unsigned long>(k >= 0 ? k : -k));
}

RationalModule::element_type RationalModule::add(const element_type& a, const element_type& b) const {
  element_type c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

RationalModule::element_type RationalModule::sub(const element_type& a, const element_type& b) const {
  element_type c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

RationalModule::element_type RationalModule::neg(const element_type& a) const {
  return sub(zero(), a);
}

RationalModule::element_type RationalModule::scale(const element_type& a, const Integer& c) const {
  return scale(a, Rational(c));
}

RationalModule::element_type RationalModule::scale(const element_type& a, const Rational& c) const {
  element_type r = a;
  for (auto& x : r) x *= c;
  return r;
}

RationalModule::element_type RationalModule::phi_power(const element_type& a, long k) const {
  element_type x = a;
  const RatMatrix& step = k >= 0 ? phi_ : phi_inv_;
  for (long i = 0; i < (k >= 0 ? k : -k); ++i) x = step * x;
  return x;
}

Presentation presentation(const CoefModule& m) {
  if (const auto* f = std::get_if<FiniteModule>(&m)) return {f->smith_group(), f->phi()};
  if (const auto* l = std::get_if<LatticeModule>(&m)) return {FpGroup::free(l->rank()), l->phi()};
  throw UnsupportedVariant("rational modules have no finitely presented integral structure");
}

}  // namespace weil::chainlab
