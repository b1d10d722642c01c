#include "weil/weilcoh/weil_report.hpp"

#include <algorithm>
#include <stdexcept>

#include "weil/exactalg/matrix.hpp"

namespace weil::weilcoh {

namespace {

bool is_prime(unsigned long p) {
  const Integer x(p);
  return mpz_probab_prime_p(x.get_mpz_t(), 30) > 0;
}

const FrobeniusModule& empty_module() {
  static const FrobeniusModule zero;
  return zero;
}

TorsionOrder torsion_of(const GroupDescriptor& sub, const GroupDescriptor& quot) {
  TorsionOrder out;
  if (sub.has_divisible()) {
    out.kind = TorsionOrder::Kind::Infinite;
    return out;
  }
  const bool quot_torsion = quot.has_divisible() || !quot.finite_part.is_trivial();
  if (sub.free_rank > 0 && quot_torsion) {
    // Torsion of the extension lies between the torsion of the sub and the
    // sub torsion times the quotient torsion, depending on the class.
    out.kind = TorsionOrder::Kind::Ambiguous;
    out.value = sub.torsion_order();
    if (!quot.has_divisible()) out.upper = sub.torsion_order() * quot.torsion_order();
    return out;
  }
  if (quot.has_divisible()) {
    out.kind = TorsionOrder::Kind::Infinite;
    return out;
  }
  out.value = sub.torsion_order() * quot.torsion_order();
  return out;
}

Integer order_of(const GroupDescriptor& g) {
  const auto o = g.order();
  if (!o) throw std::logic_error("order of an infinite group");
  return *o;
}

Rational signed_power(const Integer& x, int t) {
  return t % 2 == 0 ? Rational(x) : Rational(1) / Rational(x);
}

std::string degree_name(int t) { return "degree " + std::to_string(t); }

}  // namespace

const FrobeniusModule& EtaleData::module(int t) const {
  const auto it = modules.find(t);
  return it == modules.end() ? empty_module() : it->second;
}

std::vector<std::string> EtaleData::validate() const {
  std::vector<std::string> out;
  if (p < 2 || !is_prime(p)) out.push_back("p = " + std::to_string(p) + " is not prime");
  if (q < 2) {
    out.push_back("q must be a prime power, got " + q.get_str());
  } else if (p >= 2) {
    Integer rest = q;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) rest /= p;
    if (rest != 1) out.push_back("q = " + q.get_str() + " is not a power of p = " + std::to_string(p));
  }
  if (d < 0) out.push_back("dimension d must be >= 0");
  for (const auto& [t, m] : modules) {
    if (t < 0 || t > 2 * d + 1)
      out.push_back("module at degree " + std::to_string(t) + " outside [0, " +
                    std::to_string(2 * d + 1) + "]");
    for (const auto& problem : m.validate()) out.push_back("A^" + std::to_string(t) + ": " + problem);
  }
  return out;
}

void EtaleData::require_valid() const {
  const auto problems = validate();
  if (problems.empty()) return;
  std::string msg = "invalid etale data";
  for (const auto& p : problems) msg += "; " + p;
  throw InvalidInput(msg);
}

std::string TorsionOrder::describe() const {
  switch (kind) {
    case Kind::Exact: return value.get_str();
    case Kind::Infinite: return "infinite";
    case Kind::Ambiguous:
      return "extension-ambiguous [" + value.get_str() + ", " + (upper ? upper->get_str() : "inf") + "]";
  }
  return "";
}

const DegreeReport& WeilReport::degree(int t) const {
  if (t < 0 || t >= static_cast<int>(degrees.size()))
    throw IndexOutOfRange("degree " + std::to_string(t) + " outside the report");
  return degrees[static_cast<std::size_t>(t)];
}

WeilReport descent(const EtaleData& data) {
  data.require_valid();
  WeilReport report;
  report.q = data.q;
  report.d = data.d;
  report.n = data.n;

  const int top = 2 * data.d + 1;
  std::vector<GroupDescriptor> inv, coinv;
  for (int t = 0; t <= top; ++t) {
    const FrobeniusModule& a = data.module(t);
    inv.push_back(frobmod::invariants(a));
    coinv.push_back(frobmod::coinvariants(a));
    report.can.push_back(frobmod::can_map_data(a));
    for (const auto& part : a.parts())
      if (const auto* decl = std::get_if<frobmod::DeclaredPart>(&part))
        report.warnings.push_back("A^" + std::to_string(t) + " uses a declared part (" + decl->note +
                                  "); results at degrees " + std::to_string(t) + " and " +
                                  std::to_string(t + 1) + " rely on it");
  }

  for (int t = 0; t <= top + 1; ++t) {
    DegreeReport r;
    r.t = t;
    if (t >= 1) r.sub = coinv[static_cast<std::size_t>(t - 1)];
    if (t <= top) r.quot = inv[static_cast<std::size_t>(t)];
    r.rank = r.sub.rank() + r.quot.rank();
    r.finitely_generated = r.sub.is_finitely_generated() && r.quot.is_finitely_generated();
    r.torsion = torsion_of(r.sub, r.quot);
    report.degrees.push_back(std::move(r));
  }

  const bool semisimple = std::all_of(report.can.begin(), report.can.end(),
                                      [](const CanMapData& c) { return c.semisimple_at_1; });
  if (semisimple) report.chi_e = chi_e(report);
  report.rho = rho(report);
  for (auto& w : check_vanishing_bound(report)) report.warnings.push_back(std::move(w));
  return report;
}

std::vector<Integer> cup_e_complex(const WeilReport& report) {
  for (std::size_t t = 0; t < report.can.size(); ++t)
    if (!report.can[t].semisimple_at_1)
      throw NotSemisimple(static_cast<int>(t), "canonical map at " + degree_name(static_cast<int>(t)) +
                                                   " is not semisimple at the eigenvalue 1");
  std::vector<Integer> orders;
  const int top = report.top_degree();
  for (int t = 0; t <= top; ++t) {
    Integer order = 1;
    if (t < static_cast<int>(report.can.size())) order *= order_of(report.can[t].ker);
    if (t >= 1) order *= order_of(report.can[t - 1].coker);
    orders.push_back(order);
  }
  return orders;
}

Rational chi_e(const WeilReport& report) {
  const std::vector<Integer> orders = cup_e_complex(report);
  Rational telescoped = 1;
  for (std::size_t t = 0; t < report.can.size(); ++t) {
    const int s = static_cast<int>(t);
    telescoped *= signed_power(order_of(report.can[t].ker), s);
    telescoped /= signed_power(order_of(report.can[t].coker), s);
  }
  Rational direct = 1;
  for (std::size_t t = 0; t < orders.size(); ++t) direct *= signed_power(orders[t], static_cast<int>(t));
  if (telescoped != direct) throw std::logic_error("cup-e Euler characteristic does not telescope");
  return telescoped;
}

std::size_t rho(const WeilReport& report) {
  const long t = 2 * report.n;
  if (t < 0 || t > report.top_degree()) return 0;
  return report.degree(static_cast<int>(t)).rank;
}

std::vector<std::string> check_vanishing_bound(const WeilReport& report) {
  std::vector<std::string> out;
  const long bound = std::max<long>(2L * report.d + 1, report.n + report.d + 1);
  for (const auto& r : report.degrees)
    if (r.t > bound && !r.is_zero())
      out.push_back("H^" + std::to_string(r.t) + "_W is nonzero above the vanishing bound " +
                    std::to_string(bound) + ": " + r.sub.describe() + " | " + r.quot.describe());
  const DegreeReport& top = report.degree(report.top_degree());
  if (top.sub.has_divisible())
    out.push_back("divisible coinvariants make H^" + std::to_string(report.top_degree()) +
                  "_W nonzero");
  return out;
}

bool ConjectureVerdicts::all_finitely_generated() const {
  return std::all_of(finitely_generated.begin(), finitely_generated.end(),
                     [](const auto& kv) { return kv.second; });
}

bool ConjectureVerdicts::all_semisimple() const {
  return std::all_of(semisimple.begin(), semisimple.end(), [](const auto& kv) { return kv.second; });
}

ConjectureVerdicts conjecture_verdicts(const WeilReport& report) {
  ConjectureVerdicts v;
  for (const auto& r : report.degrees) v.finitely_generated[r.t] = r.finitely_generated;
  for (std::size_t t = 0; t < report.can.size(); ++t)
    v.semisimple[static_cast<int>(t)] = report.can[t].semisimple_at_1;
  return v;
}

RationalSplittingReport rational_splitting_check(const WeilReport& report,
                                                 const std::map<int, std::size_t>& motivic_dims) {
  RationalSplittingReport out;
  auto h = [&](int i) -> std::size_t {
    const auto it = motivic_dims.find(i);
    return it == motivic_dims.end() ? 0 : it->second;
  };
  auto fail = [&](std::string msg) {
    out.consistent = false;
    out.mismatches.push_back(std::move(msg));
  };
  for (const auto& [i, dim] : motivic_dims)
    if (dim != 0 && (i < 0 || i > report.top_degree()))
      fail("motivic dimension given at degree " + std::to_string(i) + " outside the report");
  for (const auto& r : report.degrees) {
    const int i = r.t;
    const std::size_t expected = h(i) + h(i - 1);
    if (r.rank != expected)
      fail("rank H^" + std::to_string(i) + "_W = " + std::to_string(r.rank) + ", expected " +
           std::to_string(expected));
    std::size_t image = 0;
    if (i >= 1) {
      const auto& prev = report.degree(i - 1);
      image = prev.quot.rank() - report.can[static_cast<std::size_t>(i - 1)].ker.rank();
    }
    if (image != h(i - 1))
      fail("image of e in degree " + std::to_string(i) + " has rank " + std::to_string(image) +
           ", expected " + std::to_string(h(i - 1)));
  }
  return out;
}

DegreeStructureReport degree_structure_check(const EtaleData& data) {
  data.require_valid();
  if (data.n != data.d) throw ShapeMismatch("degree structure check needs n = d");
  const FrobeniusModule& a = data.module(2 * data.d);
  const frobmod::LatticePart* z = nullptr;
  std::vector<frobmod::Part> torsion;
  for (const auto& part : a.parts()) {
    if (const auto* l = std::get_if<frobmod::LatticePart>(&part)) {
      if (z || l->phi.rows() != 1) throw ShapeMismatch("A^2d must contain exactly one lattice summand Z");
      z = l;
    } else if (std::holds_alternative<frobmod::RationalPart>(part)) {
      throw ShapeMismatch("A^2d may not contain rational parts");
    } else {
      torsion.push_back(part);
    }
  }
  if (!z) throw ShapeMismatch("A^2d has no lattice summand Z");

  DegreeStructureReport out;
  GroupDescriptor zdesc;
  zdesc.free_rank = 1;
  const bool inv_next_zero = frobmod::invariants(data.module(2 * data.d + 1)).is_trivial();
  out.top_is_z = frobmod::coinvariants(a) == zdesc && inv_next_zero;
  out.cup_e_surjective = frobmod::can_map_data(frobmod::Part(*z)).coker.is_trivial();
  for (const auto& part : torsion) out.torsion_invariants = out.torsion_invariants + frobmod::invariants(part);
  return out;
}

RegulatorReport regulator_check(const WeilReport& report, const IntMatrix& pairing) {
  if (!pairing.is_square()) throw RankMismatch("pairing matrix must be square");
  if (rho(report) != pairing.rows())
    throw RankMismatch("rank H^" + std::to_string(2 * report.n) + "_W = " + std::to_string(rho(report)) +
                       " but the pairing has size " + std::to_string(pairing.rows()));
  RegulatorReport out;
  out.regulator = abs(exactalg::determinant(pairing));
  if (out.regulator == 0) throw RankMismatch("pairing is degenerate");
  out.torsion_product = 1;
  for (const auto& r : report.degrees) {
    if (r.torsion.kind == TorsionOrder::Kind::Ambiguous)
      throw AmbiguousTorsion("torsion of H^" + std::to_string(r.t) + "_W depends on the extension class");
    if (r.torsion.kind == TorsionOrder::Kind::Infinite)
      throw AmbiguousTorsion("torsion of H^" + std::to_string(r.t) + "_W is infinite");
    out.torsion_product *= signed_power(r.torsion.value, r.t);
  }
  out.chi_e = chi_e(report);
  out.passed = out.chi_e == out.torsion_product / Rational(out.regulator);
  return out;
}

}  // namespace weil::weilcoh
