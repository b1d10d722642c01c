#pragma once

// Builders for the projective spaces and elliptic curves used as worked
// examples.

#include <map>

#include "weil/zetaval/zeta.hpp"

namespace weil::zetaval {

struct ExampleData {
  weilcoh::EtaleData etale;
  ZetaInput zeta;
  HodgeTable hodge;
  exactalg::IntMatrix pairing;
  std::map<int, std::size_t> motivic_dims;
};

/// The prime p with q = p^f; throws InvalidInput when q is not a prime power.
unsigned long characteristic_of(const Integer& q);

/// P^d over F_q at weight n <= d.
ExampleData example_projective_space(const Integer& q, int d, long n);

/// Elliptic curve over F_q with trace a at weight 1. The p-part of the
/// group order q+1-a is computed when p_part is absent and checked against
/// it otherwise. Throws HasseBoundViolation and PPartMismatch.
ExampleData example_elliptic(const Integer& q, long a, std::optional<Integer> p_part = std::nullopt);

}  // namespace weil::zetaval
