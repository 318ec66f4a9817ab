#include "hypred/arith/primes.hpp"

#include <algorithm>
#include <cmath>

#include "hypred/arith/factor.hpp"
#include "hypred/error.hpp"

namespace hypred::arith {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Bit i of the table stands for the odd number 2i+1.
struct OddSieve {
  std::vector<bool> composite;
  std::uint64_t limit;

  explicit OddSieve(std::uint64_t x) : composite(x / 2 + 1, false), limit(x) {
    composite[0] = true;  // 1
    for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= x; ++i) {
      if (composite[i]) continue;
      const std::uint64_t p = 2 * i + 1;
      for (std::uint64_t j = p * p; j <= x; j += 2 * p) composite[j / 2] = true;
    }
  }

  bool is_prime(std::uint64_t n) const {
    if (n < 2) return false;
    if (n == 2) return true;
    if (n % 2 == 0) return false;
    return !composite[n / 2];
  }
};

const OddSieve& small_sieve() {
  static const OddSieve sieve(kSmallPrimeLimit);
  return sieve;
}

}  // namespace

std::vector<std::uint64_t> primes_upto(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  if (x < 2) return out;
  const OddSieve sieve(x);
  out.push_back(2);
  for (std::uint64_t n = 3; n <= x; n += 2) {
    if (!sieve.composite[n / 2]) out.push_back(n);
  }
  return out;
}

std::uint64_t pi(std::uint64_t x) {
  if (x < kSmallPrimeLimit) {
    const auto primes = small_primes();
    return static_cast<std::uint64_t>(std::upper_bound(primes.begin(), primes.end(), x) - primes.begin());
  }
  return primes_upto(x).size();
}

std::span<const std::uint64_t> small_primes() {
  static const std::vector<std::uint64_t> table = primes_upto(kSmallPrimeLimit - 1);
  return table;
}

bool is_small_prime(std::uint64_t n) {
  if (n >= kSmallPrimeLimit) throw Error(Errc::OutOfRange, "is_small_prime: argument too large");
  return small_sieve().is_prime(n);
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi <= lo || hi <= 2) return out;
  lo = std::max<std::uint64_t>(lo, 2);
  const std::uint64_t root = isqrt(hi - 1);
  std::vector<std::uint64_t> base;
  if (root < kSmallPrimeLimit) {
    for (auto p : small_primes()) {
      if (p > root) break;
      base.push_back(p);
    }
  } else {
    base = primes_upto(root);
  }
  std::vector<bool> composite(hi - lo, false);
  for (auto p : base) {
    std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
    for (std::uint64_t m = start; m < hi; m += p) composite[m - lo] = true;
  }
  for (std::uint64_t n = lo; n < hi; ++n) {
    if (!composite[n - lo]) out.push_back(n);
  }
  return out;
}

Int totient(const Int& d) {
  if (d < 1) throw Error(Errc::OutOfRange, "totient requires d >= 1");
  Int result = 1;
  for (const auto& [p, e] : factor(d).factors) {
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), e - 1);
    result *= pk * (p - 1);
  }
  return result;
}

int jacobi(std::int64_t a, std::int64_t n) {
  if (n <= 0 || n % 2 == 0) throw Error(Errc::InvalidArgument, "jacobi requires odd positive n");
  a %= n;
  if (a < 0) a += n;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const auto r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "kronecker requires n >= 1");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0) return 0;
    const auto r = ((a % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(a, n);
}

Int factorial(unsigned n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

int moebius(std::uint64_t n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "moebius(0)");
  int mu = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace hypred::arith
