#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hypred/arith/rational.hpp"

namespace hypred::arith {

enum class PrimalityMethod {
  DeterministicSmall,   // sieve lookup, n < 10^6
  DeterministicMR64,    // Miller-Rabin with the first twelve prime bases, n < 2^64
  ProbabilisticMR,      // BPSW (base-2 strong test + strong Lucas) plus extra MR rounds
};

std::string_view to_string(PrimalityMethod m) noexcept;

/// Outcome of a primality test together with everything needed to replay it.
struct PrimalityCertificate {
  Int n;
  bool prime = false;
  PrimalityMethod method = PrimalityMethod::DeterministicSmall;
  std::vector<std::uint64_t> bases;   // Miller-Rabin bases actually run
  unsigned rounds = 0;                // number of MR rounds (bases.size())
  bool strong_lucas = false;          // whether a strong Lucas test was run and passed
  std::string note;                   // e.g. the base that exposed a composite
};

/// Minimum number of Miller-Rabin rounds recorded above 2^64.
inline constexpr unsigned kProbabilisticRounds = 64;

/// Primality with a certificate. Deterministic below 2^64; above, a strong
/// probable-prime test followed by kProbabilisticRounds MR rounds whose bases
/// are derived from n. Throws Error(OutOfRange) for n <= 1.
PrimalityCertificate is_prime(const Int& n);

/// Re-runs the recorded test from scratch and checks that it reproduces the verdict.
bool reverify(const PrimalityCertificate& cert);

/// Fast predicate for search loops and factoring: deterministic below 2^64,
/// BPSW above. Never rejects a prime. Returns false for n < 2.
bool is_probable_prime(const Int& n);
bool is_prime_u64(std::uint64_t n);

/// Single strong-pseudoprime round.
bool miller_rabin_round(const Int& n, const Int& base);
bool miller_rabin_round_u64(std::uint64_t n, std::uint64_t base);

/// Strong Lucas probable-prime test with Selfridge parameters (n odd, not a square).
bool strong_lucas_test(const Int& n);

}  // namespace hypred::arith
