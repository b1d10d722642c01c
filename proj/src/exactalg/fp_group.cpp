#include "weil/exactalg/fp_group.hpp"

#include <ostream>
#include <sstream>

#include "weil/exactalg/normal_form.hpp"

namespace weil::exactalg {

FpGroup::FpGroup() : FpGroup(IntMatrix(0, 0)) {}

FpGroup::FpGroup(IntMatrix relations) : relations_(std::move(relations)) {
  const std::size_t g = relations_.rows();
  const SmithForm s = snf(relations_);
  const IntVector diag = smith_diagonal(s);
  // Coordinate i of u*x lives in Z/d_i, with d_i = 0 past the diagonal.
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < g; ++i) {
    Integer d = i < diag.size() ? diag[i] : Integer(0);
    if (d == 1) continue;
    kept.push_back(i);
    factors_.push_back(d);
  }
  const IntMatrix u_inv = unimodular_inverse(s.u);
  to_smith_ = IntMatrix(kept.size(), g);
  from_smith_ = IntMatrix(g, kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k)
    for (std::size_t j = 0; j < g; ++j) {
      to_smith_(k, j) = s.u(kept[k], j);
      from_smith_(j, k) = u_inv(j, kept[k]);
    }
}

FpGroup FpGroup::free(std::size_t rank) { return FpGroup(IntMatrix(rank, 0)); }

FpGroup FpGroup::cyclic(const Integer& order) {
  return FpGroup(IntMatrix{{order}});
}

FpGroup FpGroup::from_invariants(const IntVector& factors) {
  return FpGroup(IntMatrix::diagonal(factors));
}

std::size_t FpGroup::rank() const {
  std::size_t r = 0;
  for (const auto& d : factors_)
    if (d == 0) ++r;
  return r;
}

std::optional<Integer> FpGroup::order() const {
  if (!is_finite()) return std::nullopt;
  return torsion_order();
}

Integer FpGroup::torsion_order() const {
  Integer n = 1;
  for (const auto& d : factors_)
    if (d != 0) n *= d;
  return n;
}

FpGroup FpGroup::torsion_subgroup() const {
  IntVector t;
  for (const auto& d : factors_)
    if (d != 0) t.push_back(d);
  return from_invariants(t);
}

IntVector FpGroup::reduce(const IntVector& element) const {
  if (element.size() != generators())
    throw InvalidInput("element has wrong number of coordinates");
  IntVector y = to_smith_ * element;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (factors_[i] != 0) mpz_fdiv_r(y[i].get_mpz_t(), y[i].get_mpz_t(), factors_[i].get_mpz_t());
  return y;
}

bool FpGroup::is_zero(const IntVector& element) const {
  for (const auto& y : reduce(element))
    if (y != 0) return false;
  return true;
}

bool FpGroup::equal(const IntVector& a, const IntVector& b) const {
  if (a.size() != b.size()) return false;
  IntVector diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  return is_zero(diff);
}

std::string FpGroup::describe() const {
  if (factors_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << " + ";
    if (factors_[i] == 0)
      os << "Z";
    else
      os << "Z/" << factors_[i].get_str();
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FpGroup& g) {
  return os << g.describe();
}

FpGroup group_from_relations(const IntMatrix& relations) {
  return FpGroup(relations);
}

FpGroup direct_sum(const FpGroup& a, const FpGroup& b) {
  return FpGroup(exactalg::direct_sum(a.relations(), b.relations()));
}

bool is_compatible(const FpGroup& source, const FpGroup& target,
                   const IntMatrix& matrix) {
  if (matrix.rows() != target.generators() || matrix.cols() != source.generators())
    return false;
  const IntMatrix images = matrix * source.relations();
  for (std::size_t j = 0; j < images.cols(); ++j)
    if (!target.is_zero(images.column(j))) return false;
  return true;
}

FpMorphism::FpMorphism(FpGroup source, FpGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.generators() || matrix_.cols() != source_.generators())
    throw IncompatibleMorphism("morphism matrix has wrong shape");
  if (!is_compatible(source_, target_, matrix_))
    throw IncompatibleMorphism("a source relation does not map into the target relations");
}

FpMorphism::FpMorphism(FpGroup source, FpGroup target, IntMatrix matrix, Unchecked)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {}

FpMorphism FpMorphism::identity(const FpGroup& g) {
  return FpMorphism(g, g, IntMatrix::identity(g.generators()), Unchecked{});
}

FpMorphism FpMorphism::zero(const FpGroup& source, const FpGroup& target) {
  return FpMorphism(source, target, IntMatrix(target.generators(), source.generators()),
                    Unchecked{});
}

bool FpMorphism::same_map(const FpMorphism& other) const {
  if (matrix_.rows() != other.matrix_.rows() || matrix_.cols() != other.matrix_.cols())
    return false;
  const IntMatrix diff = matrix_ - other.matrix_;
  for (std::size_t j = 0; j < diff.cols(); ++j)
    if (!target_.is_zero(diff.column(j))) return false;
  return true;
}

bool FpMorphism::is_zero_map() const {
  for (std::size_t j = 0; j < matrix_.cols(); ++j)
    if (!target_.is_zero(matrix_.column(j))) return false;
  return true;
}

FpMorphism operator+(const FpMorphism& a, const FpMorphism& b) {
  return FpMorphism(a.source_, a.target_, a.matrix_ + b.matrix_, FpMorphism::Unchecked{});
}

FpMorphism operator-(const FpMorphism& a, const FpMorphism& b) {
  return FpMorphism(a.source_, a.target_, a.matrix_ - b.matrix_, FpMorphism::Unchecked{});
}

FpMorphism compose(const FpMorphism& a, const FpMorphism& b) {
  if (b.target_.generators() != a.source_.generators())
    throw IncompatibleMorphism("composition of non-composable morphisms");
  return FpMorphism(b.source_, a.target_, a.matrix_ * b.matrix_, FpMorphism::Unchecked{});
}

Kernel kernel(const FpMorphism& f) {
  const FpGroup& a = f.source();
  const FpGroup& b = f.target();
  const std::size_t g = a.generators();
  // x lies in the preimage lattice iff (x, y) solves [M | R_B] (x, y) = 0.
  const IntMatrix joint = hconcat(f.matrix(), b.relations());
  const IntMatrix null = integer_kernel(joint);
  const IntMatrix preimage = lattice_basis(null.block(0, g, 0, null.cols()));
  auto coords = solve_integer(preimage, a.relations());
  if (!coords) throw IncompatibleMorphism("source relations escape the preimage lattice");
  FpGroup k(*coords);
  FpMorphism incl(k, a, preimage);
  return {std::move(k), std::move(incl)};
}

Cokernel cokernel(const FpMorphism& f) {
  FpGroup c(hconcat(f.target().relations(), f.matrix()));
  FpMorphism proj(f.target(), c, IntMatrix::identity(f.target().generators()));
  return {std::move(c), std::move(proj)};
}

FpGroup image(const FpMorphism& f) {
  // source / ker f, and the preimage lattice already contains the relations
  return FpGroup(kernel(f).inclusion.matrix());
}

bool is_injective(const FpMorphism& f) { return kernel(f).group.is_trivial(); }

bool is_surjective(const FpMorphism& f) { return cokernel(f).group.is_trivial(); }

}  // namespace weil::exactalg
