#include "weil/chainlab/verifier.hpp"

#include <json.hpp>
#include <numeric>
#include <sstream>

#include "weil/exactalg/normal_form.hpp"

namespace weil::chainlab {

namespace {

using Elem = IntVector;
using Level = LevelElement<IntVector>;

unsigned long to_ul(const Integer& x) { return x.get_ui(); }

Integer random_below(std::mt19937_64& rng, const Integer& bound) {
  std::uniform_int_distribution<unsigned long> dist(0, to_ul(bound) - 1);
  return Integer(dist(rng));
}

Integer random_unit(std::mt19937_64& rng, const Integer& modulus) {
  for (;;) {
    Integer u = random_below(rng, modulus);
    Integer g;
    mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), modulus.get_mpz_t());
    if (g == 1) return u;
  }
}

Elem random_element(std::mt19937_64& rng, const FiniteModule& mod) {
  Elem e;
  for (const auto& d : mod.moduli()) e.push_back(random_below(rng, d));
  return e;
}

unsigned long period_of_power(const FiniteModule& mod, std::size_t m) {
  return mod.phi_order() / std::gcd(mod.phi_order(), static_cast<unsigned long>(m));
}

Elem fixed_part(const LabCase& k, const Elem& c) {
  return average_to_fixed(k.module, c, k.m, period_of_power(k.module, k.m));
}

Level fixed_level(const LabCase& k) {
  Level out = k.f;
  for (auto& e : out.entries) e = fixed_part(k, e);
  return out;
}

IdentityResult named(std::string name) {
  IdentityResult r;
  r.name = std::move(name);
  return r;
}

Verdict verdict(bool ok) { return ok ? Verdict::Pass : Verdict::Fail; }

std::vector<Level> split_levels(const IntMatrix& columns, std::size_t m, std::size_t k) {
  std::vector<Level> out;
  for (std::size_t j = 0; j < columns.cols(); ++j) {
    Level f;
    for (std::size_t i = 0; i < m; ++i) {
      Elem e(k);
      for (std::size_t r = 0; r < k; ++r) e[r] = columns(i * k + r, j);
      f.entries.push_back(std::move(e));
    }
    out.push_back(std::move(f));
  }
  return out;
}

bool phi_power_is_identity(const FiniteModule& mod, std::size_t m) {
  return mod.phi_order() > 0 && m % mod.phi_order() == 0;
}

const LatticeModule& integers() {
  static const LatticeModule z = LatticeModule::integers();
  return z;
}

nlohmann::json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

nlohmann::json vector_json(const IntVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

nlohmann::json level_json(const Level& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : f.entries) out.push_back(vector_json(e));
  return out;
}

Verdict evaluate(const LabIdentity& identity, const LabCase& k) {
  try {
    return identity.check(k);
  } catch (const std::exception&) {
    return Verdict::Fail;
  }
}

}  // namespace

FiniteModule random_finite_module(std::mt19937_64& rng, std::uint64_t max_order) {
  if (max_order < 2) throw InvalidInput("max_order must be at least 2");
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_int_distribution<long> size(2, 12);
  for (;;) {
    IntVector raw;
    Integer product = 1;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
      raw.push_back(Integer(size(rng)));
      product *= raw.back();
    }
    if (product > Integer(static_cast<unsigned long>(max_order))) continue;
    const IntVector d = FpGroup::from_invariants(raw).invariant_factors();
    const std::size_t n = d.size();
    const FpGroup g = FpGroup::from_invariants(d);

    if (std::uniform_int_distribution<int>(0, 7)(rng) == 0)
      return FiniteModule::from_moduli(d, IntMatrix::identity(n));
    for (int attempt = 0; attempt < 40; ++attempt) {
      IntMatrix phi(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Integer gc;
          mpz_gcd(gc.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
          const Integer step = d[i] / gc;
          phi(i, j) = step * random_below(rng, gc);
        }
      if (exactalg::is_injective(FpMorphism(g, g, phi))) return FiniteModule::from_moduli(d, phi);
    }
    IntMatrix phi(n, n);
    for (std::size_t i = 0; i < n; ++i) phi(i, i) = random_unit(rng, d[i]);
    return FiniteModule::from_moduli(d, phi);
  }
}

LabCase random_case(std::mt19937_64& rng, const LabConfig& config) {
  if (config.max_level < 1 || config.max_n < 1) throw InvalidInput("levels must be >= 1");
  FiniteModule module = random_finite_module(rng, config.max_order);
  std::size_t m = std::uniform_int_distribution<std::size_t>(1, config.max_level)(rng);
  if (module.phi_order() <= config.max_level && std::uniform_int_distribution<int>(0, 3)(rng) == 0)
    m = module.phi_order();
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, config.max_n)(rng);
  const long a = std::uniform_int_distribution<long>(-2 * static_cast<long>(m),
                                                     2 * static_cast<long>(m))(rng);
  Level f, x;
  std::uniform_int_distribution<long> small(-20, 20);
  for (std::size_t i = 0; i < m; ++i) {
    f.entries.push_back(random_element(rng, module));
    x.entries.push_back(Elem{Integer(small(rng))});
  }
  Elem c = random_element(rng, module);
  return LabCase{std::move(module), m, n, a, std::move(f), std::move(c), std::move(x)};
}

std::vector<LabIdentity> standard_identities() {
  std::vector<LabIdentity> ids;
  auto add = [&](std::string name, std::function<Verdict(const LabCase&)> fn) {
    ids.push_back({std::move(name), std::move(fn)});
  };

  add("delta commutes with t", [](const LabCase& k) {
    const auto& M = k.module;
    return verdict(level_equal(M, delta(t_twisted(M, k.f), k.n), t_twisted(M, delta(k.f, k.n))));
  });
  add("delta commutes with tau", [](const LabCase& k) {
    return verdict(level_equal(k.module, delta(tau(k.f, k.a), k.n), tau(delta(k.f, k.n), k.a)));
  });
  add("t to the m is phi to the m", [](const LabCase& k) {
    const auto& M = k.module;
    Level g = k.f;
    for (std::size_t i = 0; i < k.m; ++i) g = t_twisted(M, g);
    Level expect = k.f;
    for (auto& e : expect.entries) e = M.phi_power(e, static_cast<long>(k.m));
    return verdict(level_equal(M, g, expect));
  });
  add("norm descends along phi^m", [](const LabCase& k) {
    const auto& M = k.module;
    const long m = static_cast<long>(k.m), nm = static_cast<long>(k.m * k.n);
    const Elem diff = M.sub(norm(M, M.phi_power(k.c, m), k.m, k.n), norm(M, k.c, k.m, k.n));
    const Elem explicit_form = M.sub(M.phi_power(k.c, m), M.phi_power(k.c, m - nm));
    const IntMatrix op = IntMatrix::identity(M.dimension()) - M.phi_matrix_power(-nm);
    const bool in_image =
        exactalg::solve_integer(exactalg::hconcat(op, IntMatrix::diagonal(M.moduli())), diff)
            .has_value();
    return verdict(in_image && M.equal(diff, explicit_form));
  });
  add("S after delta is N after S", [](const LabCase& k) {
    const auto& M = k.module;
    return verdict(M.equal(big_s(M, delta(k.f, k.n)), norm(M, big_s(M, k.f), k.m, k.n)));
  });
  add("delta of Delta_m is Delta_mn", [](const LabCase& k) {
    const auto& M = k.module;
    const Elem c = fixed_part(k, k.c);
    return verdict(level_equal(M, delta(big_delta(M, c, k.m), k.n), big_delta(M, c, k.m * k.n)));
  });
  add("S after Delta is multiplication by m", [](const LabCase& k) {
    const auto& M = k.module;
    const Elem c = fixed_part(k, k.c);
    return verdict(M.equal(big_s(M, big_delta(M, c, k.m)),
                           M.scale(c, Integer(static_cast<unsigned long>(k.m)))));
  });
  add("S of a boundary", [](const LabCase& k) {
    const auto& M = k.module;
    const Elem last = M.phi_power(k.f[k.m - 1], 1);
    const Elem rhs = M.sub(last, M.phi_power(last, -static_cast<long>(k.m)));
    return verdict(M.equal(big_s(M, t_minus_one(M, k.f)), rhs));
  });
  add("cycles are Delta_m images", [](const LabCase& k) {
    const auto& M = k.module;
    const FpGroup g = M.smith_group();
    FpGroup gm = FpGroup::free(0);
    for (std::size_t i = 0; i < k.m; ++i) gm = exactalg::direct_sum(gm, g);
    const auto ker = exactalg::kernel(FpMorphism(gm, gm, level_differential(M.phi(), k.m)));
    for (const auto& z : split_levels(ker.inclusion.matrix(), k.m, M.dimension()))
      if (!level_equal(M, z, big_delta(M, z[0], k.m))) return Verdict::Fail;
    const Level d = big_delta(M, fixed_part(k, k.c), k.m);
    return verdict(level_equal(M, t_minus_one(M, d), level_zero(M, k.m)));
  });
  add("R witnesses split off S", [](const LabCase& k) {
    const auto& M = k.module;
    Level w = level_zero(M, k.m);
    for (std::size_t j = 0; j < k.m; ++j) w = level_add(M, w, r_witness(M, k.f[j], j, k.m));
    Level expect = level_zero(M, k.m);
    expect[0] = big_s(M, k.f);
    return verdict(level_equal(M, level_sub(M, k.f, t_minus_one(M, w)), expect));
  });
  add("S-null elements are boundaries", [](const LabCase& k) {
    const auto& M = k.module;
    Level f = k.f;
    f[0] = M.sub(f[0], big_s(M, k.f));
    if (!M.equal(big_s(M, f), M.zero())) return Verdict::Fail;
    Level w = level_zero(M, k.m);
    for (std::size_t j = 0; j < k.m; ++j) w = level_add(M, w, r_witness(M, f[j], j, k.m));
    return verdict(level_equal(M, t_minus_one(M, w), f));
  });
  add("level cohomology two ways", [](const LabCase& k) {
    return verdict(level_cohomology(CoefModule(k.module), k.m).consistent());
  });
  add("nu intertwines the shifts", [](const LabCase& k) {
    const auto& M = k.module;
    const Level f = fixed_level(k);
    return verdict(level_equal(M, nu(M, t_plain(f)), t_twisted(M, nu(M, f))));
  });
  add("nu commutes with delta", [](const LabCase& k) {
    const auto& M = k.module;
    const Level f = fixed_level(k);
    return verdict(level_equal(M, nu(M, delta(f, k.n)), delta(nu(M, f), k.n)));
  });
  add("nu commutes with the G action", [](const LabCase& k) {
    const auto& M = k.module;
    const Level f = fixed_level(k);
    return verdict(level_equal(M, nu(M, tau_diagonal(M, f, k.a)), tau(nu(M, f), k.a)));
  });
  add("nu is bijective when phi^m = 1", [](const LabCase& k) {
    const auto& M = k.module;
    if (!phi_power_is_identity(M, k.m)) return Verdict::NotApplicable;
    Level inv = k.f;
    for (std::size_t i = 0; i < k.m; ++i) inv[i] = M.phi_power(k.f[i], -static_cast<long>(i));
    Level back = nu(M, k.f);
    for (std::size_t i = 0; i < k.m; ++i) back[i] = M.phi_power(back[i], -static_cast<long>(i));
    return verdict(level_equal(M, nu(M, inv), k.f) && level_equal(M, back, k.f));
  });
  add("cup-e homotopy", [](const LabCase& k) {
    return verdict(cupe_homotopy_check(k.module, k.m, {k.f}).holds());
  });
  add("mu is equivariant", [](const LabCase& k) {
    return verdict(mu(tau(k.x, k.a)) == mu(k.x).act(k.a));
  });
  add("mu is compatible with delta", [](const LabCase& k) {
    return verdict(mu(delta(k.x, k.n)) == mu(k.x));
  });
  add("mu of a boundary is xi of S'", [](const LabCase& k) {
    return verdict(mu(t_minus_one(integers(), k.x)) == xi(s_prime(k.x)));
  });
  add("proj of mu is -S'", [](const LabCase& k) { return verdict(proj(mu(k.x)) == -s_prime(k.x)); });
  add("xi is exact", [](const LabCase& k) {
    Rational y(k.x[0][0], Integer(static_cast<unsigned long>(k.m + 1)));
    y.canonicalize();
    const bool integral = y.get_den() == 1;
    const KahnM v = xi(y);
    const KahnM pure(fractional_part(y), 0);
    return verdict(((v == KahnM()) == integral) && proj(v) == 0 && xi(pure.first()) == pure);
  });
  add("S' is the colimit of S", [](const LabCase& k) {
    const Integer total = big_s(integers(), k.x)[0];
    return verdict(norm_colimit_value(total, k.m) == s_prime(k.x) &&
                   s_prime(delta(k.x, k.n)) == s_prime(k.x));
  });
  return ids;
}

std::vector<IdentityResult> fixed_checks() {
  std::vector<IdentityResult> out;

  IdentityResult boundary = named("boundary of N_n is multiplication by n");
  for (long n = -3; n <= 3; ++n) {
    bool ok = false;
    try {
      const FpMorphism d = connecting_hom(extension_sequence(n));
      const auto fixed = exactalg::kernel(
          FpMorphism(FpGroup::free(1), FpGroup::free(1), IntMatrix{{0}}));
      const Integer sign = fixed.inclusion.matrix()(0, 0);
      ok = d.source().generators() == 1 && sign * d.matrix()(0, 0) == n;
    } catch (const std::exception&) {
      ok = false;
    }
    (ok ? boundary.passed : boundary.failed)++;
  }
  out.push_back(boundary);

  IdentityResult lattice = named("lattice level cohomology two ways");
  const std::vector<IntMatrix> phis = {IntMatrix{{1}}, IntMatrix{{-1}}, IntMatrix{{0, -1}, {1, 0}},
                                       IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{2, 1}, {1, 1}}};
  for (const auto& phi : phis)
    for (std::size_t m = 1; m <= 4; ++m) {
      const bool ok = level_cohomology(CoefModule(LatticeModule(phi)), m).consistent();
      (ok ? lattice.passed : lattice.failed)++;
    }
  out.push_back(lattice);

  IdentityResult rational = named("rational splitting");
  const std::vector<RatMatrix> rphis = {RatMatrix{{1, 0}, {0, 2}}, RatMatrix{{0, -1}, {1, 0}},
                                        RatMatrix{{Rational(1, 3)}}};
  for (const auto& phi : rphis)
    for (std::size_t m = 1; m <= 4; ++m) {
      const RationalModule mod(phi);
      const bool ok = splitting_check(mod, m).identity_verified &&
                      rational_level_cohomology(mod, m).consistent();
      (ok ? rational.passed : rational.failed)++;
    }
  out.push_back(rational);
  return out;
}

bool LabReport::ok() const { return failures() == 0; }

std::size_t LabReport::failures() const {
  std::size_t total = 0;
  for (const auto& r : results) total += r.failed;
  return total;
}

std::string LabReport::summary() const {
  std::ostringstream os;
  os << "seed " << seed << ", " << cases << " cases\n";
  for (const auto& r : results) {
    os << (r.failed == 0 ? "PASS " : "FAIL ") << r.name << " (" << r.passed << " passed";
    if (r.not_applicable) os << ", " << r.not_applicable << " not applicable";
    if (r.failed) os << ", " << r.failed << " failed";
    os << ")\n";
    for (const auto& cx : r.counterexamples) os << "  counterexample: " << cx << "\n";
  }
  return os.str();
}

LabReport run_lab(const LabConfig& config) { return run_lab(config, standard_identities()); }

LabReport run_lab(const LabConfig& config, const std::vector<LabIdentity>& identities) {
  constexpr std::size_t kKeptCounterexamples = 3;
  std::mt19937_64 rng(config.seed);
  LabReport report;
  report.seed = config.seed;
  report.cases = config.cases;
  for (const auto& id : identities) report.results.push_back(named(id.name));

  for (std::size_t i = 0; i < config.cases; ++i) {
    const LabCase k = random_case(rng, config);
    for (std::size_t j = 0; j < identities.size(); ++j) {
      auto& r = report.results[j];
      switch (evaluate(identities[j], k)) {
        case Verdict::Pass: ++r.passed; break;
        case Verdict::NotApplicable: ++r.not_applicable; break;
        case Verdict::Fail:
          ++r.failed;
          if (r.counterexamples.size() < kKeptCounterexamples)
            r.counterexamples.push_back(serialize(minimize(k, identities[j]), identities[j].name));
          break;
      }
    }
  }
  for (auto& r : fixed_checks()) report.results.push_back(std::move(r));
  return report;
}

LabCase minimize(LabCase failing, const LabIdentity& identity) {
  auto fails = [&](const LabCase& k) { return evaluate(identity, k) == Verdict::Fail; };
  auto candidates = [](const LabCase& k) {
    std::vector<LabCase> out;
    if (k.n > 1) {
      LabCase c = k;
      c.n = 1;
      out.push_back(std::move(c));
    }
    if (k.a != 0) {
      LabCase c = k;
      c.a = 0;
      out.push_back(std::move(c));
    }
    for (std::size_t m = 1; m < k.m; ++m) {
      LabCase c = k;
      c.m = m;
      c.f.entries.resize(m);
      c.x.entries.resize(m);
      out.push_back(std::move(c));
    }
    const Elem zero = k.module.zero();
    for (std::size_t i = 0; i < k.m; ++i)
      if (!k.module.equal(k.f[i], zero)) {
        LabCase c = k;
        c.f[i] = zero;
        out.push_back(std::move(c));
      }
    for (std::size_t i = 0; i < k.c.size(); ++i)
      if (k.c[i] != 0) {
        LabCase c = k;
        c.c[i] = 0;
        out.push_back(std::move(c));
      }
    for (std::size_t i = 0; i < k.m; ++i)
      if (k.x[i][0] != 0) {
        LabCase c = k;
        c.x[i][0] = 0;
        out.push_back(std::move(c));
      }
    return out;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& c : candidates(failing))
      if (fails(c)) {
        failing = std::move(c);
        changed = true;
        break;
      }
  }
  return failing;
}

std::string serialize(const LabCase& k, const std::string& identity) {
  nlohmann::json phi = nlohmann::json::array();
  for (std::size_t i = 0; i < k.module.phi().rows(); ++i) {
    IntVector row(k.module.phi().cols());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = k.module.phi()(i, j);
    phi.push_back(vector_json(row));
  }
  nlohmann::json j = {{"identity", identity}, {"moduli", vector_json(k.module.moduli())},
                      {"phi", phi},           {"m", k.m},
                      {"n", k.n},             {"a", k.a},
                      {"f", level_json(k.f)}, {"c", vector_json(k.c)},
                      {"x", level_json(k.x)}};
  return j.dump();
}

}  // namespace weil::chainlab
