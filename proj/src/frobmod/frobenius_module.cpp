#include "weil/frobmod/frobenius_module.hpp"

#include <algorithm>
#include <sstream>

#include "weil/exactalg/normal_form.hpp"

namespace weil::frobmod {

namespace {

bool is_prime(unsigned long l) {
  const Integer x(l);
  return mpz_probab_prime_p(x.get_mpz_t(), 30) > 0;
}

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

FpGroup canonical_finite(const FpGroup& g) {
  IntVector nonzero;
  for (const auto& d : g.invariant_factors())
    if (d != 0) nonzero.push_back(d);
  return FpGroup::from_invariants(nonzero);
}

GroupDescriptor descriptor_of(const FpGroup& g) {
  GroupDescriptor out;
  out.free_rank = g.rank();
  out.finite_part = canonical_finite(g);
  return out;
}

GroupDescriptor finite_descriptor(const FpGroup& g) {
  GroupDescriptor out;
  out.finite_part = canonical_finite(g);
  return out;
}

IntMatrix minus_identity(const IntMatrix& phi) {
  return phi - IntMatrix::identity(phi.rows());
}

struct IntegralData {
  FpGroup group;
  IntMatrix phi;
};

/// Lattice and finite parts share their treatment via a presentation.
std::optional<IntegralData> integral(const Part& p) {
  if (const auto* l = std::get_if<LatticePart>(&p)) return IntegralData{FpGroup::free(l->phi.rows()), l->phi};
  if (const auto* f = std::get_if<FinitePart>(&p)) return IntegralData{f->group, f->phi};
  return std::nullopt;
}

FpMorphism phi_minus_one(const IntegralData& d) {
  return FpMorphism(d.group, d.group, minus_identity(d.phi));
}

bool is_identity(const IntMatrix& phi) { return phi == IntMatrix::identity(phi.rows()); }

/// det(phi - 1) for a divisible part, rejecting degenerate non-identity actions.
std::optional<Integer> divisible_det(const DivisiblePart& d) {
  if (is_identity(d.phi)) return std::nullopt;
  const Integer det = exactalg::determinant(minus_identity(d.phi));
  if (det == 0)
    throw DegenerateDivisible("divisible part with det(phi - 1) = 0 and phi != 1 is not supported");
  return det;
}

GroupDescriptor divisible_corank(const DivisiblePart& d) {
  GroupDescriptor out;
  out.divisible_coranks[d.support.key()] = d.phi.rows();
  return out;
}

std::vector<std::string> part_problems(const Part& part) {
  std::vector<std::string> out;
  std::visit(
      Overloaded{
          [&](const LatticePart& l) {
            if (!l.phi.is_square()) {
              out.push_back("lattice phi is not square");
              return;
            }
            const Integer det = exactalg::determinant(l.phi);
            if (det != 1 && det != -1) out.push_back("lattice phi has determinant " + det.get_str());
          },
          [&](const FinitePart& f) {
            if (!f.group.is_finite()) {
              out.push_back("finite part has an infinite group");
              return;
            }
            if (!exactalg::is_compatible(f.group, f.group, f.phi)) {
              out.push_back("finite phi is not a homomorphism of the group");
              return;
            }
            if (!exactalg::is_injective(FpMorphism(f.group, f.group, f.phi)))
              out.push_back("finite phi is not an automorphism");
          },
          [&](const DivisiblePart& d) {
            for (auto& s : d.support.problems()) out.push_back(s);
            if (!d.phi.is_square() || d.phi.rows() == 0) {
              out.push_back("divisible phi must be a nonempty square matrix");
              return;
            }
            const Integer det = exactalg::determinant(d.phi);
            if (det == 0) {
              out.push_back("divisible phi is singular");
              return;
            }
            if (d.support.is_coprime_form()) {
              if (d.support.part_of(det) != 1)
                out.push_back("divisible phi determinant " + det.get_str() + " is not a power of " +
                              std::to_string(d.support.excluded_prime()));
            } else {
              if (d.support.part_of(det) != 1)
                out.push_back("divisible phi determinant " + det.get_str() +
                              " is not a unit at the support");
            }
          },
          [&](const DeclaredPart& d) {
            if (!d.invariants.is_finite()) out.push_back("declared invariants must be finite");
            if (d.note.empty()) out.push_back("declared part needs a provenance note");
          },
          [&](const RationalPart& r) {
            if (!r.phi.is_square() || !exactalg::inverse(r.phi))
              out.push_back("rational phi is not invertible");
          },
      },
      part);
  return out;
}

RatMatrix rational_direct_sum(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

}  // namespace

PrimeSupport PrimeSupport::primes(std::vector<unsigned long> ls) {
  PrimeSupport s;
  std::sort(ls.begin(), ls.end());
  s.primes_ = std::move(ls);
  return s;
}

PrimeSupport PrimeSupport::coprime_to(unsigned long p) {
  PrimeSupport s;
  s.coprime_to_ = p;
  return s;
}

bool PrimeSupport::contains(unsigned long l) const {
  if (is_coprime_form()) return l != coprime_to_;
  return std::binary_search(primes_.begin(), primes_.end(), l);
}

Integer PrimeSupport::part_of(const Integer& x) const {
  Integer rest = abs(x);
  if (rest == 0) throw InvalidInput("support part of zero is undefined");
  if (is_coprime_form()) {
    const Integer p(coprime_to_);
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) rest /= p;
    return rest;
  }
  Integer out = 1;
  for (unsigned long l : primes_) {
    const Integer li(l);
    while (mpz_divisible_p(rest.get_mpz_t(), li.get_mpz_t())) {
      rest /= li;
      out *= li;
    }
  }
  return out;
}

std::string PrimeSupport::key() const {
  if (is_coprime_form()) return "prime-to-" + std::to_string(coprime_to_);
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < primes_.size(); ++i) os << (i ? "," : "") << primes_[i];
  os << "}";
  return os.str();
}

std::vector<std::string> PrimeSupport::problems() const {
  std::vector<std::string> out;
  if (is_coprime_form()) {
    if (!is_prime(coprime_to_)) out.push_back("coprime_to needs a prime, got " + key());
    return out;
  }
  if (primes_.empty()) out.push_back("explicit prime support is empty");
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (!is_prime(primes_[i])) out.push_back(std::to_string(primes_[i]) + " is not prime");
    if (i > 0 && primes_[i] == primes_[i - 1])
      out.push_back("prime " + std::to_string(primes_[i]) + " listed twice");
  }
  return out;
}

std::string part_kind(const Part& part) {
  return std::visit(Overloaded{[](const LatticePart&) { return "lattice"; },
                               [](const FinitePart&) { return "finite"; },
                               [](const DivisiblePart&) { return "divisible"; },
                               [](const DeclaredPart&) { return "declared"; },
                               [](const RationalPart&) { return "rational"; }},
                    part);
}

bool GroupDescriptor::has_divisible() const {
  for (const auto& [key, r] : divisible_coranks)
    if (r != 0) return true;
  return false;
}

std::optional<Integer> GroupDescriptor::order() const {
  if (!is_finite()) return std::nullopt;
  return finite_part.order();
}

std::string GroupDescriptor::describe() const {
  std::vector<std::string> pieces;
  if (free_rank) pieces.push_back(free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank));
  if (!finite_part.is_trivial()) pieces.push_back(finite_part.describe());
  for (const auto& [key, r] : divisible_coranks)
    if (r) pieces.push_back("(Q/Z)[" + key + "]" + (r == 1 ? "" : "^" + std::to_string(r)));
  if (rational_dim) pieces.push_back(rational_dim == 1 ? "Q" : "Q^" + std::to_string(rational_dim));
  if (pieces.empty()) return "0";
  std::string out = pieces[0];
  for (std::size_t i = 1; i < pieces.size(); ++i) out += " + " + pieces[i];
  return out;
}

GroupDescriptor operator+(const GroupDescriptor& a, const GroupDescriptor& b) {
  GroupDescriptor out;
  out.free_rank = a.free_rank + b.free_rank;
  out.rational_dim = a.rational_dim + b.rational_dim;
  out.finite_part = canonical_finite(exactalg::direct_sum(a.finite_part, b.finite_part));
  out.divisible_coranks = a.divisible_coranks;
  for (const auto& [key, r] : b.divisible_coranks) out.divisible_coranks[key] += r;
  return out;
}

bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
  auto nonzero = [](const std::map<std::string, std::size_t>& m) {
    std::map<std::string, std::size_t> out;
    for (const auto& [k, r] : m)
      if (r) out[k] = r;
    return out;
  };
  return a.free_rank == b.free_rank && a.rational_dim == b.rational_dim &&
         a.finite_part.invariant_factors() == b.finite_part.invariant_factors() &&
         nonzero(a.divisible_coranks) == nonzero(b.divisible_coranks);
}

std::vector<std::string> FrobeniusModule::validate() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < parts_.size(); ++i)
    for (auto& problem : part_problems(parts_[i]))
      out.push_back("part " + std::to_string(i) + " (" + part_kind(parts_[i]) + "): " + problem);
  return out;
}

void FrobeniusModule::require_valid() const {
  const auto problems = validate();
  if (problems.empty()) return;
  std::string msg = "invalid Frobenius module";
  for (const auto& p : problems) msg += "; " + p;
  throw InvalidInput(msg);
}

FrobeniusModule direct_sum(const FrobeniusModule& a, const FrobeniusModule& b) {
  std::vector<Part> parts = a.parts();
  parts.insert(parts.end(), b.parts().begin(), b.parts().end());
  return FrobeniusModule(std::move(parts));
}

GroupDescriptor invariants(const Part& p) {
  if (auto d = integral(p)) {
    const FpGroup k = exactalg::kernel(phi_minus_one(*d)).group;
    return descriptor_of(k);
  }
  return std::visit(
      Overloaded{
          [](const DivisiblePart& d) {
            const auto det = divisible_det(d);
            if (!det) return divisible_corank(d);
            IntVector factors;
            const FpGroup quotient(minus_identity(d.phi));
            for (const auto& x : quotient.invariant_factors()) {
              const Integer part = d.support.part_of(x);
              if (part != 1) factors.push_back(part);
            }
            return finite_descriptor(FpGroup::from_invariants(factors));
          },
          [](const DeclaredPart& d) { return finite_descriptor(d.invariants); },
          [](const RationalPart& r) {
            GroupDescriptor out;
            out.rational_dim = r.phi.rows() - exactalg::rank(r.phi - RatMatrix::identity(r.phi.rows()));
            return out;
          },
          [](const auto&) -> GroupDescriptor { throw std::logic_error("unreachable"); },
      },
      p);
}

GroupDescriptor coinvariants(const Part& p) {
  if (auto d = integral(p)) return descriptor_of(exactalg::cokernel(phi_minus_one(*d)).group);
  return std::visit(
      Overloaded{
          [](const DivisiblePart& d) {
            return divisible_det(d) ? GroupDescriptor{} : divisible_corank(d);
          },
          [](const DeclaredPart&) { return GroupDescriptor{}; },
          [](const RationalPart& r) {
            GroupDescriptor out;
            out.rational_dim = r.phi.rows() - exactalg::rank(r.phi - RatMatrix::identity(r.phi.rows()));
            return out;
          },
          [](const auto&) -> GroupDescriptor { throw std::logic_error("unreachable"); },
      },
      p);
}

CanMapData can_map_data(const Part& p) {
  CanMapData out;
  if (auto d = integral(p)) {
    const FpMorphism f = phi_minus_one(*d);
    const auto k = exactalg::kernel(f);
    const auto c = exactalg::cokernel(f);
    const FpMorphism composite(k.group, c.group, c.projection.matrix() * k.inclusion.matrix());
    out.ker = descriptor_of(exactalg::kernel(composite).group);
    out.coker = descriptor_of(exactalg::cokernel(composite).group);
  } else if (const auto* dv = std::get_if<DivisiblePart>(&p)) {
    if (divisible_det(*dv)) out.ker = invariants(p);
  } else if (std::holds_alternative<DeclaredPart>(p)) {
    out.ker = invariants(p);
  } else {
    const RatMatrix& phi = std::get<RationalPart>(p).phi;
    const RatMatrix diff = phi - RatMatrix::identity(phi.rows());
    const RatMatrix fixed = exactalg::rational_kernel(diff);
    const std::size_t image_rank = exactalg::rank(diff);
    std::size_t joint = image_rank;
    if (fixed.cols() > 0) {
      RatMatrix both(phi.rows(), fixed.cols() + diff.cols());
      for (std::size_t i = 0; i < phi.rows(); ++i) {
        for (std::size_t j = 0; j < fixed.cols(); ++j) both(i, j) = fixed(i, j);
        for (std::size_t j = 0; j < diff.cols(); ++j) both(i, fixed.cols() + j) = diff(i, j);
      }
      joint = exactalg::rank(both);
    }
    const std::size_t composite_rank = joint - image_rank;
    out.ker.rational_dim = fixed.cols() - composite_rank;
    out.coker.rational_dim = (phi.rows() - image_rank) - composite_rank;
  }
  out.semisimple_at_1 = out.ker.is_finite() && out.coker.is_finite();
  return out;
}

GroupDescriptor invariants(const FrobeniusModule& m) {
  m.require_valid();
  GroupDescriptor out;
  for (const auto& p : m.parts()) out = out + invariants(p);
  return out;
}

GroupDescriptor coinvariants(const FrobeniusModule& m) {
  m.require_valid();
  GroupDescriptor out;
  for (const auto& p : m.parts()) out = out + coinvariants(p);
  return out;
}

CanMapData can_map_data(const FrobeniusModule& m) {
  m.require_valid();
  CanMapData out;
  for (const auto& p : m.parts()) {
    const CanMapData c = can_map_data(p);
    out.ker = out.ker + c.ker;
    out.coker = out.coker + c.coker;
  }
  out.semisimple_at_1 = out.ker.is_finite() && out.coker.is_finite();
  return out;
}

std::size_t rank(const FrobeniusModule& m) {
  std::size_t r = 0;
  for (const auto& p : m.parts()) {
    if (const auto* l = std::get_if<LatticePart>(&p)) r += l->phi.rows();
    if (const auto* q = std::get_if<RationalPart>(&p)) r += q->phi.rows();
  }
  return r;
}

std::optional<Integer> torsion_order(const FrobeniusModule& m) {
  Integer order = 1;
  for (const auto& p : m.parts()) {
    if (std::holds_alternative<DivisiblePart>(p)) return std::nullopt;
    if (const auto* f = std::get_if<FinitePart>(&p)) order *= f->group.torsion_order();
    if (const auto* d = std::get_if<DeclaredPart>(&p)) order *= d->invariants.torsion_order();
  }
  return order;
}

RationalSummary tensor_q(const FrobeniusModule& m) {
  RationalSummary out{0, RatMatrix(0, 0)};
  for (const auto& p : m.parts()) {
    if (const auto* l = std::get_if<LatticePart>(&p))
      out.phi = rational_direct_sum(out.phi, exactalg::to_rational(l->phi));
    if (const auto* q = std::get_if<RationalPart>(&p)) out.phi = rational_direct_sum(out.phi, q->phi);
  }
  out.dimension = out.phi.rows();
  return out;
}

bool uses_declared_parts(const FrobeniusModule& m) {
  return std::any_of(m.parts().begin(), m.parts().end(),
                     [](const Part& p) { return std::holds_alternative<DeclaredPart>(p); });
}

}  // namespace weil::frobmod
