#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hypred/arith/rational.hpp"

namespace hypred::arith {

/// All primes <= x in ascending order (plain odd-only Eratosthenes).
std::vector<std::uint64_t> primes_upto(std::uint64_t x);

/// Prime-counting function pi(x).
std::uint64_t pi(std::uint64_t x);

/// Shared table of primes below 10^6; built once, immutable afterwards.
std::span<const std::uint64_t> small_primes();
inline constexpr std::uint64_t kSmallPrimeLimit = 1'000'000;

/// O(1) lookup for n < kSmallPrimeLimit.
bool is_small_prime(std::uint64_t n);

/// Primes in [lo, hi), produced with a segmented sieve over base primes up to sqrt(hi).
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

/// Euler's totient. Throws Error(OutOfRange) for d < 1.
Int totient(const Int& d);

/// Jacobi symbol (a/n) for odd positive n.
int jacobi(std::int64_t a, std::int64_t n);

/// Kronecker symbol (a/n) for n >= 1.
int kronecker(std::int64_t a, std::int64_t n);

/// n! as an arbitrary-precision integer.
Int factorial(unsigned n);

/// Moebius function for n >= 1 (by trial division; intended for small n).
int moebius(std::uint64_t n);

std::vector<std::uint64_t> divisors(std::uint64_t n);

}  // namespace hypred::arith
