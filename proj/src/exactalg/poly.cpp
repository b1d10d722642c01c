#include "weil/exactalg/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace weil::exactalg {

PolyQ::PolyQ(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

PolyQ PolyQ::from_integers(const std::vector<Integer>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (const auto& x : coeffs) c.emplace_back(x);
  return PolyQ(std::move(c));
}

PolyQ PolyQ::constant(const Rational& c) { return PolyQ({c}); }

PolyQ PolyQ::monomial(const Rational& c, std::size_t k) {
  std::vector<Rational> v(k + 1);
  v[k] = c;
  return PolyQ(std::move(v));
}

void PolyQ::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational PolyQ::evaluate(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

PolyQ PolyQ::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return PolyQ(std::move(d));
}

PolyQ operator+(const PolyQ& a, const PolyQ& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
  return PolyQ(std::move(c));
}

PolyQ operator-(const PolyQ& a, const PolyQ& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) - b.coeff(k);
  return PolyQ(std::move(c));
}

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return PolyQ(std::move(c));
}

PolyQ operator*(const Rational& s, const PolyQ& a) {
  std::vector<Rational> c = a.coeffs_;
  for (auto& x : c) x *= s;
  return PolyQ(std::move(c));
}

std::string PolyQ::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (k == 0 || mag != 1) os << mag.get_str();
    if (k > 0) {
      if (mag != 1) os << '*';
      os << var;
      if (k > 1) os << '^' << k;
    }
  }
  return os.str();
}

std::pair<PolyQ, PolyQ> divmod(const PolyQ& a, const PolyQ& b) {
  if (b.is_zero()) throw InvalidInput("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const long db = b.degree();
  if (a.degree() < db) return {PolyQ(), a};
  std::vector<Rational> quot(a.degree() - db + 1);
  const Rational lead = b.leading();
  for (long k = a.degree(); k >= db; --k) {
    Rational q = rem[k] / lead;
    quot[k - db] = q;
    if (q == 0) continue;
    for (long j = 0; j <= db; ++j) rem[k - db + j] -= q * b.coeff(j);
  }
  return {PolyQ(std::move(quot)), PolyQ(std::move(rem))};
}

PolyQ gcd(const PolyQ& a, const PolyQ& b) {
  PolyQ x = a, y = b;
  while (!y.is_zero()) {
    PolyQ r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return (1 / x.leading()) * x;
}

PolyQ pow(const PolyQ& a, unsigned k) {
  PolyQ r = PolyQ::constant(1);
  for (unsigned i = 0; i < k; ++i) r = r * a;
  return r;
}

PolyQ characteristic_polynomial(const RatMatrix& m) {
  if (!m.is_square()) throw InvalidInput("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  // c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k)/k
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  RatMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    RatMatrix am = m * mk;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return PolyQ(std::move(c));
}

PolyQ cyclotomic(unsigned k) {
  if (k == 0) throw InvalidInput("cyclotomic index must be positive");
  static thread_local std::map<unsigned, PolyQ> cache;
  if (auto it = cache.find(k); it != cache.end()) return it->second;
  // x^k - 1 divided by every Phi_d with d | k, d < k
  PolyQ p = PolyQ::monomial(1, k) - PolyQ::constant(1);
  for (unsigned d = 1; d < k; ++d)
    if (k % d == 0) p = divmod(p, cyclotomic(d)).first;
  cache.emplace(k, p);
  return p;
}

unsigned long totient(unsigned long k) {
  unsigned long result = k;
  for (unsigned long p = 2; p * p <= k; ++p) {
    if (k % p) continue;
    while (k % p == 0) k /= p;
    result -= result / p;
  }
  if (k > 1) result -= result / k;
  return result;
}

}  // namespace weil::exactalg
