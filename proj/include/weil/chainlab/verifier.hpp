#pragma once

// Randomized checking of the level-complex identities over small finite
// modules, with minimization of counterexamples.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "weil/chainlab/level.hpp"

namespace weil::chainlab {

struct LabConfig {
  std::uint64_t seed = 1;
  std::size_t cases = 200;
  std::uint64_t max_order = 512;
  std::size_t max_level = 6;
  std::size_t max_n = 4;
};

/// One randomized instance: a finite module, levels m and n, a shift a, a
/// level-m element f, an element c and an integer-valued level-m tuple x.
struct LabCase {
  FiniteModule module;
  std::size_t m = 1;
  std::size_t n = 1;
  long a = 0;
  LevelElement<IntVector> f;
  IntVector c;
  LevelElement<IntVector> x;
};

enum class Verdict { Pass, Fail, NotApplicable };

struct LabIdentity {
  std::string name;
  std::function<Verdict(const LabCase&)> check;
};

struct IdentityResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t not_applicable = 0;
  /// Minimized failing cases, serialized as JSON.
  std::vector<std::string> counterexamples;
};

struct LabReport {
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::vector<IdentityResult> results;

  bool ok() const;
  std::size_t failures() const;
  std::string summary() const;
};

/// Finite module of order <= max_order with a random automorphism.
FiniteModule random_finite_module(std::mt19937_64& rng, std::uint64_t max_order);
LabCase random_case(std::mt19937_64& rng, const LabConfig& config);

/// The identities the lab checks on every case.
std::vector<LabIdentity> standard_identities();
/// Checks on fixed inputs run once per lab, e.g. the boundary of N_n.
std::vector<IdentityResult> fixed_checks();

LabReport run_lab(const LabConfig& config);
LabReport run_lab(const LabConfig& config, const std::vector<LabIdentity>& identities);

/// Shrinks a failing case while the identity keeps failing: smaller n, zero
/// shift, lower level, zeroed entries.
LabCase minimize(LabCase failing, const LabIdentity& identity);
std::string serialize(const LabCase& c, const std::string& identity);

}  // namespace weil::chainlab
