#pragma once

#include <vector>

#include "hypred/arith/rational.hpp"

namespace hypred::arith {

struct PrimePower {
  Int prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Signed factorization: value = sign * prod(prime^exponent), primes strictly increasing.
struct Factorization {
  int sign = 1;
  std::vector<PrimePower> factors;

  Int value() const;
  std::vector<Int> primes() const;
};

/// Complete factorization: trial division by primes below 10^6, then
/// Pollard-rho (Brent) and, for balanced cofactors, ECM. Throws Error(ZeroInput) for 0.
Factorization factor(const Int& n);

/// Pairwise coprime integers > 1 whose prime support equals the union of the
/// supports of |values|. Shared factors are split off by gcds before any
/// factoring happens, which keeps structured inputs cheap.
std::vector<Int> coprime_base(const std::vector<Int>& values);

/// Sorted distinct primes dividing at least one of the values (zeros ignored).
std::vector<Int> prime_support(const std::vector<Int>& values);

/// Finds one nontrivial factor of an odd composite n that has no prime factor below 10^6.
Int find_factor(const Int& n);

}  // namespace hypred::arith
