#include "weil/zetaval/examples.hpp"

namespace weil::zetaval {

namespace {

using frobmod::DeclaredPart;
using frobmod::DivisiblePart;
using frobmod::FrobeniusModule;
using frobmod::LatticePart;
using frobmod::PrimeSupport;

Integer power(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

constexpr std::size_t kPointCounts = 6;

}  // namespace

unsigned long characteristic_of(const Integer& q) {
  if (q < 2) throw InvalidInput("q must be a prime power, got " + q.get_str());
  if (!q.fits_ulong_p()) throw InvalidInput("q is too large");
  const unsigned long qq = q.get_ui();
  unsigned long p = 2;
  while (p * p <= qq && qq % p != 0) ++p;
  if (qq % p != 0) p = qq;
  unsigned long rest = qq;
  while (rest % p == 0) rest /= p;
  if (rest != 1) throw InvalidInput(q.get_str() + " is not a prime power");
  return p;
}

ExampleData example_projective_space(const Integer& q, int d, long n) {
  const unsigned long p = characteristic_of(q);
  if (d < 0) throw InvalidInput("dimension must be >= 0");
  if (n > d) throw InvalidInput("the projective-space builder covers n <= d only");

  ExampleData ex;
  ex.etale.q = q;
  ex.etale.p = p;
  ex.etale.d = d;
  ex.etale.n = n;
  if (n >= 0) ex.etale.modules[static_cast<int>(2 * n)] = FrobeniusModule({LatticePart{IntMatrix{{1}}}});
  for (long j = 0; j <= d; ++j) {
    if (j == n) continue;
    const Integer phi = power(q, static_cast<unsigned long>(j > n ? j - n : n - j));
    ex.etale.modules[static_cast<int>(2 * j + 1)] =
        FrobeniusModule({DivisiblePart{PrimeSupport::coprime_to(p), IntMatrix{{phi}}}});
  }

  ex.zeta.q = q;
  for (int i = 0; i <= 2 * d; ++i)
    ex.zeta.factors.push_back(i % 2 == 0 ? std::vector<Integer>{1, -power(q, static_cast<unsigned long>(i / 2))}
                                         : std::vector<Integer>{1});
  std::vector<Integer> counts;
  for (std::size_t m = 1; m <= kPointCounts; ++m) {
    Integer total = 0;
    for (int i = 0; i <= d; ++i) total += power(q, static_cast<unsigned long>(i) * m);
    counts.push_back(total);
  }
  ex.zeta.point_counts = counts;

  ex.hodge.assign(static_cast<std::size_t>(d + 1), std::vector<long>(static_cast<std::size_t>(d + 1), 0));
  for (int i = 0; i <= d; ++i) ex.hodge[i][i] = 1;
  if (n >= 0) {
    ex.pairing = IntMatrix{{1}};
    ex.motivic_dims[static_cast<int>(2 * n)] = 1;
  } else {
    ex.pairing = IntMatrix(0, 0);
  }
  return ex;
}

ExampleData example_elliptic(const Integer& q, long a, std::optional<Integer> p_part) {
  const unsigned long p = characteristic_of(q);
  if (Integer(a) * a > 4 * q)
    throw HasseBoundViolation("trace a = " + std::to_string(a) + " violates a^2 <= 4q for q = " + q.get_str());
  const Integer group_order = q + 1 - a;
  Integer expected = 1, rest = group_order;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
    rest /= p;
    expected *= p;
  }
  if (p_part && *p_part != expected)
    throw PPartMismatch("p-part of q+1-a = " + group_order.get_str() + " is " + expected.get_str() +
                        ", not " + p_part->get_str());

  ExampleData ex;
  ex.etale.q = q;
  ex.etale.p = p;
  ex.etale.d = 1;
  ex.etale.n = 1;
  const PrimeSupport prime_to_p = PrimeSupport::coprime_to(p);
  ex.etale.modules[1] = FrobeniusModule({DivisiblePart{prime_to_p, IntMatrix{{q}}}});
  FrobeniusModule a2({LatticePart{IntMatrix{{1}}},
                      DivisiblePart{prime_to_p, IntMatrix{{0, Integer(-q)}, {1, a}}}});
  if (expected != 1)
    a2.add(DeclaredPart{exactalg::FpGroup::cyclic(expected),
                        "p-primary part of E(F_q), order " + expected.get_str()});
  ex.etale.modules[2] = std::move(a2);

  ex.zeta.q = q;
  ex.zeta.factors = {{1, -1}, {1, -a, q}, {1, Integer(-q)}};
  // N_m = q^m + 1 - s_m with s_m = alpha^m + beta^m.
  std::vector<Integer> counts;
  Integer s_prev = 2, s = a;
  for (std::size_t m = 1; m <= kPointCounts; ++m) {
    counts.push_back(power(q, m) + 1 - s);
    const Integer next = a * s - q * s_prev;
    s_prev = s;
    s = next;
  }
  ex.zeta.point_counts = counts;
  ex.hodge = {{1, 1}, {1, 1}};
  ex.pairing = IntMatrix{{1}};
  ex.motivic_dims[2] = 1;
  return ex;
}

}  // namespace weil::zetaval
