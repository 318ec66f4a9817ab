#include <gmpxx.h>

#include <numeric>
#include <random>
#include <thread>
#include <vector>

#include "doctest.h"
#include "hypred/arith/factor.hpp"
#include "hypred/arith/primality.hpp"
#include "hypred/arith/primes.hpp"
#include "hypred/arith/valuation.hpp"
#include "hypred/error.hpp"
#include "hypred/parallel.hpp"

using namespace hypred;
using namespace hypred::arith;

namespace {

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// v_p by repeated division, no GMP helpers
long naive_val(long p, Int x) {
  long v = 0;
  if (x < 0) x = -x;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

long naive_val(long p, const Rat& x) { return naive_val(p, x.num()) - naive_val(p, x.den()); }

Int random_below(gmp_randclass& rng, const Int& bound) { return rng.get_z_range(bound); }

}  // namespace

TEST_CASE("rational parsing and canonical form") {
  CHECK(Rat::parse("6/-4") == Rat(-3, 2));
  CHECK(Rat::parse("-6/4").str() == "-3/2");
  CHECK(Rat::parse("12").str() == "12");
  CHECK(Rat(Int(0), Int(5)).den() == 1);
  CHECK_THROWS_AS(Rat::parse("1/0"), Error);
  CHECK_THROWS_AS(Rat::parse("abc"), Error);
  CHECK_THROWS_AS(Rat::parse("1/2/3"), Error);
  CHECK_THROWS_AS(Rat(0).inverse(), Error);
  CHECK(num_den_less(Rat(-1), Rat(1, 2)));
  CHECK(num_den_less(Rat(1, 4), Rat(1, 2)) == false);  // same num, den 4 > 2
  CHECK(num_den_less(Rat(1, 2), Rat(1, 4)));
}

TEST_CASE("valuation examples") {
  CHECK(val(Int(3), Rat(9, 2)) == Valuation(2));
  CHECK(val(Int(3), Rat(0)).is_infinite());
  CHECK(val(Int(5), Rat(24, 25)) == Valuation(-2));
  CHECK(val(Int(2), Rat(-96)) == Valuation(5));
  CHECK(val(Int(7), Rat(1, 2)) == Valuation(0));
  try {
    val(Int(4), Rat(8));
    FAIL("expected NonPrimeModulus");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonPrimeModulus);
  }
  CHECK_THROWS_AS(Prime(Int(1)), Error);
  CHECK_THROWS_AS(Prime(Int(-3)), Error);
}

TEST_CASE("valuation arithmetic saturates") {
  const Valuation inf = Valuation::infinite();
  CHECK((inf + Valuation(3)).is_infinite());
  CHECK(Valuation(2) + Valuation(-5) == Valuation(-3));
  CHECK(Valuation(1000000) < inf);
  CHECK(inf.str() == "inf");
  CHECK_THROWS_AS(inf.value(), Error);
}

TEST_CASE("valuation properties on random rationals") {
  std::mt19937_64 gen(20240601);
  const std::vector<long> primes = {2, 3, 5, 7, 11, 13, 101, 65537};
  auto random_rat = [&] {
    std::uniform_int_distribution<long> d(-5000, 5000);
    std::uniform_int_distribution<long> e(1, 5000);
    long n = 0;
    while (n == 0) n = d(gen);
    // bias toward divisibility by small primes
    Int num = n * (gen() % 3 == 0 ? 9 : 1);
    Int den = e(gen) * (gen() % 4 == 0 ? 25 : 1);
    return Rat(num, den);
  };
  for (int trial = 0; trial < 10000; ++trial) {
    const long p = primes[trial % primes.size()];
    const Prime P(static_cast<std::uint64_t>(p));
    const Rat x = random_rat();
    const Rat y = random_rat();
    const Valuation vx = val(P, x), vy = val(P, y);
    REQUIRE(vx == Valuation(naive_val(p, x)));
    REQUIRE(val(P, x * y) == vx + vy);
    const Rat s = x + y;
    const Valuation vs = val(P, s);
    const Valuation lo = vx < vy ? vx : vy;
    REQUIRE(vs >= lo);
    if (vx != vy) REQUIRE(vs == lo);
  }
}

TEST_CASE("factor examples") {
  Factorization f = factor(Int(82944));
  CHECK(f.sign == 1);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == PrimePower{Int(2), 10});
  CHECK(f.factors[1] == PrimePower{Int(3), 4});
  CHECK(f.value() == 82944);

  f = factor(Int(-6912));
  CHECK(f.sign == -1);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == PrimePower{Int(2), 8});
  CHECK(f.factors[1] == PrimePower{Int(3), 3});

  f = factor(Int(1));
  CHECK(f.sign == 1);
  CHECK(f.factors.empty());
  CHECK(factor(Int(-1)).sign == -1);

  try {
    factor(Int(0));
    FAIL("expected ZeroInput");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroInput);
  }
}

TEST_CASE("factor hard cases") {
  // semiprime with two ~20 digit factors
  const Int p("10000000000000000051"), q("100000000000000000039");
  Factorization f = factor(p * q);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].prime == p);
  CHECK(f.factors[1].prime == q);
  // perfect power of a large prime
  f = factor(p * p * p);
  REQUIRE(f.factors.size() == 1);
  CHECK(f.factors[0].exponent == 3);
  // Mersenne-ish composite 2^67 - 1 = 193707721 * 761838257287
  Int m = (Int(1) << 67) - 1;
  f = factor(m);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].prime == 193707721);
  CHECK(f.factors[1].prime == Int("761838257287"));
}

TEST_CASE("factor multiplies back on random integers up to 10^30") {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(12345);
  Int bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 10, 30);
  for (int i = 0; i < 10000; ++i) {
    Int n = random_below(rng, bound) + 1;
    if (i % 2) n = -n;
    const Factorization f = factor(n);
    REQUIRE(f.value() == n);
    for (std::size_t j = 0; j < f.factors.size(); ++j) {
      REQUIRE(f.factors[j].exponent >= 1);
      REQUIRE(mpz_probab_prime_p(f.factors[j].prime.get_mpz_t(), 30) > 0);
      if (j) REQUIRE(f.factors[j - 1].prime < f.factors[j].prime);
    }
  }
}

TEST_CASE("is_prime examples") {
  CHECK(is_prime(Int(53)).prime);
  CHECK(is_prime(Int(53)).method == PrimalityMethod::DeterministicSmall);
  CHECK_FALSE(is_prime(Int(5041)).prime);
  CHECK(is_prime(Int(2)).prime);

  const Int big = (Int(1) << 64) + 13;
  const PrimalityCertificate c = is_prime(big);
  CHECK(c.method == PrimalityMethod::ProbabilisticMR);
  CHECK(c.prime == (mpz_probab_prime_p(big.get_mpz_t(), 50) > 0));
  if (c.prime) {
    CHECK(c.rounds >= kProbabilisticRounds);
    CHECK(c.strong_lucas);
  }
  CHECK(reverify(c));

  for (long bad : {1L, 0L, -7L}) {
    try {
      is_prime(Int(bad));
      FAIL("expected OutOfRange");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::OutOfRange);
    }
  }
}

TEST_CASE("is_prime on pseudoprimes and known primes") {
  // strong pseudoprime to bases 2,3,5,7
  CHECK_FALSE(is_prime(Int("3215031751")).prime);
  // strong pseudoprime to the first 12 prime bases would need n > 3.3e24; these are below
  CHECK_FALSE(is_prime(Int("3825123056546413051")).prime);
  CHECK(is_prime(Int("18446744073709551557")).prime);  // largest 64-bit prime
  CHECK(is_prime(Int("18446744073709551557")).method == PrimalityMethod::DeterministicMR64);
  CHECK(is_prime((Int(1) << 89) - 1).prime);
  CHECK_FALSE(is_prime((Int(1) << 67) - 1).prime);
  // strong Lucas pseudoprimes pass the Lucas half but fail overall
  CHECK(strong_lucas_test(Int(5459)));
  CHECK(strong_lucas_test(Int(5777)));
  CHECK_FALSE(is_probable_prime(Int(5459)));
  CHECK_FALSE(is_probable_prime(Int(5777)));
}

TEST_CASE("is_prime agrees with trial division up to 10^6") {
  for (std::uint64_t n = 2; n <= 1000000; ++n) {
    REQUIRE(is_prime(int_from_u64(n)).prime == trial_division_prime(n));
  }
}

TEST_CASE("is_prime agrees with GMP above 2^64") {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(777);
  const Int base = Int(1) << 64;
  int primes_seen = 0;
  for (int i = 0; i < 3000; ++i) {
    Int n = base + random_below(rng, Int(1) << (i % 3 == 0 ? 120 : 40));
    if (mpz_even_p(n.get_mpz_t())) n += 1;
    const bool ours = is_prime(n).prime;
    REQUIRE(ours == (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0));
    primes_seen += ours;
  }
  CHECK(primes_seen > 20);
}

TEST_CASE("64-bit range agrees with GMP") {
  std::mt19937_64 gen(99);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t n = gen() | 1;
    if (n < kSmallPrimeLimit) continue;
    const Int z = int_from_u64(n);
    REQUIRE(is_prime_u64(n) == (mpz_probab_prime_p(z.get_mpz_t(), 40) > 0));
  }
}

TEST_CASE("prime counting") {
  CHECK(pi(4) == 2);
  CHECK(pi(10) == 4);
  CHECK(pi(20) == 8);
  CHECK(pi(0) == 0);
  CHECK(pi(1) == 0);
  CHECK(pi(2) == 1);
  CHECK(pi(1000000) == 78498);
  for (std::uint64_t x = 0; x <= 1000000; x += (x < 2000 ? 1 : 9973)) {
    const auto ps = primes_upto(x);
    REQUIRE(pi(x) == ps.size());
    REQUIRE(std::is_sorted(ps.begin(), ps.end()));
    if (!ps.empty()) REQUIRE(ps.back() <= x);
  }
  CHECK(pi(10000000) == 664579);
}

TEST_CASE("segmented sieve matches plain sieve") {
  const auto all = primes_upto(3000000);
  for (auto [lo, hi] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
           {0, 100}, {2, 3}, {999000, 1001000}, {2500000, 3000001}}) {
    std::vector<std::uint64_t> expect;
    for (auto p : all) {
      if (p >= lo && p < hi) expect.push_back(p);
    }
    CHECK(primes_in_range(lo, hi) == expect);
  }
}

TEST_CASE("totient") {
  CHECK(totient(Int(1)) == 1);
  CHECK(totient(Int(12)) == 4);
  CHECK(totient(factorial(7)) == 1152);
  for (long d = 1; d <= 2000; ++d) {
    long count = 0;
    for (long k = 1; k <= d; ++k) count += std::gcd(k, d) == 1;
    REQUIRE(totient(Int(d)) == count);
  }
  CHECK_THROWS_AS(totient(Int(0)), Error);
}

TEST_CASE("jacobi and kronecker against Euler's criterion") {
  for (std::int64_t p : {3, 5, 7, 11, 13, 101, 997}) {
    for (std::int64_t a = -50; a <= 50; ++a) {
      Int r;
      const Int am = ((a % p) + p) % p;
      mpz_powm_ui(r.get_mpz_t(), am.get_mpz_t(), static_cast<unsigned long>((p - 1) / 2), Int(p).get_mpz_t());
      const int euler = am == 0 ? 0 : (r == 1 ? 1 : -1);
      REQUIRE(jacobi(a, p) == euler);
      REQUIRE(kronecker(a, p) == euler);
    }
  }
  // kronecker at 2 depends on a mod 8
  CHECK(kronecker(1, 2) == 1);
  CHECK(kronecker(3, 2) == -1);
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(7, 2) == 1);
  CHECK(kronecker(-4, 2) == 0);
}

TEST_CASE("moebius and divisors") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(6) == 1);
  CHECK(moebius(12) == 0);
  CHECK(moebius(30) == -1);
  CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  for (std::uint64_t n = 2; n < 500; ++n) {
    int s = 0;
    for (auto d : divisors(n)) s += moebius(d);
    REQUIRE(s == 0);
  }
}

TEST_CASE("worker slicing covers ranges exactly once") {
  for (std::size_t count : {0UL, 1UL, 7UL, 100UL}) {
    for (unsigned w : {1U, 3U, 8U}) {
      std::size_t next = 0;
      for (unsigned i = 0; i < w; ++i) {
        const Slice s = slice_for(count, i, w);
        CHECK(s.begin == next);
        next = s.end;
      }
      CHECK(next == count);
    }
  }
  std::vector<int> hits(4, 0);
  run_workers(4, [&](unsigned i) { hits[i] = 1; });
  CHECK(std::accumulate(hits.begin(), hits.end(), 0) == 4);
  CHECK_THROWS(run_workers(2, [](unsigned i) {
    if (i == 1) throw Error(Errc::InvalidArgument, "boom");
  }));
}
