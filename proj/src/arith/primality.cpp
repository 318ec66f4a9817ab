#include "hypred/arith/primality.hpp"

#include <array>
#include <random>

#include "hypred/arith/primes.hpp"
#include "hypred/error.hpp"

namespace hypred::arith {

namespace {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

// Proven deterministic for n < 3.3e24, hence for all 64-bit n.
constexpr std::array<u64, 12> kBases64 = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::vector<u64> probabilistic_bases(const Int& n) {
  const u64 low = static_cast<u64>(mpz_getlimbn(n.get_mpz_t(), 0));
  std::mt19937_64 gen(low ^ 0x5DEECE66DULL ^ (static_cast<u64>(mpz_sizeinbase(n.get_mpz_t(), 2)) << 48));
  std::vector<u64> bases;
  bases.reserve(kProbabilisticRounds);
  while (bases.size() < kProbabilisticRounds) {
    const u64 b = gen() >> 1;
    if (b >= 2) bases.push_back(b);
  }
  return bases;
}

}  // namespace

std::string_view to_string(PrimalityMethod m) noexcept {
  switch (m) {
    case PrimalityMethod::DeterministicSmall: return "deterministic-small";
    case PrimalityMethod::DeterministicMR64: return "deterministic-MR-64bit";
    case PrimalityMethod::ProbabilisticMR: return "probabilistic-MR+strong-lucas";
  }
  return "unknown";
}

bool miller_rabin_round_u64(u64 n, u64 base) {
  if (n < 4) return n == 2 || n == 3;
  if (n % 2 == 0) return false;
  base %= n;
  if (base == 0) return true;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u64 x = powmod(base, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool is_prime_u64(u64 n) {
  if (n < kSmallPrimeLimit) return is_small_prime(n);
  if (n % 2 == 0) return false;
  for (u64 b : kBases64) {
    if (!miller_rabin_round_u64(n, b)) return false;
  }
  return true;
}

bool miller_rabin_round(const Int& n, const Int& base) {
  if (n < 4) return n == 2 || n == 3;
  if (mpz_even_p(n.get_mpz_t())) return false;
  const Int nm1 = n - 1;
  Int b = base % n;
  if (b < 0) b += n;
  if (b == 0) return true;
  Int d = nm1;
  const auto s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Int x;
  mpz_powm(x.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == nm1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == nm1) return true;
  }
  return false;
}

bool strong_lucas_test(const Int& n) {
  if (n < 2) return false;
  if (n == 2) return true;
  if (mpz_even_p(n.get_mpz_t())) return false;
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;

  // Selfridge: first D in 5, -7, 9, -11, ... with (D/n) = -1.
  long D = 5;
  for (;;) {
    const Int Dz(D);
    const int j = mpz_jacobi(Dz.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0) {
      Int g = abs(Dz);
      if (g != n) return false;
    }
    D = D > 0 ? -(D + 2) : -(D - 2);
  }
  const Int P = 1;
  const Int Q = Int((1 - D) / 4);
  const Int Dm(D);

  Int d = n + 1;
  const auto s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  auto mod = [&](Int v) {
    v %= n;
    if (v < 0) v += n;
    return v;
  };
  auto half = [&](Int v) {
    if (mpz_odd_p(v.get_mpz_t())) v += n;
    mpz_tdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), 1);
    return v;
  };

  Int U = 1, V = P, Qk = mod(Q);
  const auto bits = mpz_sizeinbase(d.get_mpz_t(), 2);
  for (long i = static_cast<long>(bits) - 2; i >= 0; --i) {
    U = mod(U * V);
    V = mod(V * V - 2 * Qk);
    Qk = mod(Qk * Qk);
    if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      const Int U2 = half(mod(P * U + V));
      const Int V2 = half(mod(Dm * U + P * V));
      U = U2;
      V = V2;
      Qk = mod(Qk * Q);
    }
  }
  if (U == 0 || V == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    V = mod(V * V - 2 * Qk);
    if (V == 0) return true;
    Qk = mod(Qk * Qk);
  }
  return false;
}

bool is_probable_prime(const Int& n) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  if (mpz_even_p(n.get_mpz_t())) return false;
  for (u64 p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  return miller_rabin_round(n, 2) && strong_lucas_test(n);
}

PrimalityCertificate is_prime(const Int& n) {
  if (n <= 1) throw Error(Errc::OutOfRange, "is_prime requires n > 1, got " + n.get_str());
  PrimalityCertificate cert;
  cert.n = n;
  if (n < static_cast<unsigned long>(kSmallPrimeLimit)) {
    cert.method = PrimalityMethod::DeterministicSmall;
    cert.prime = is_small_prime(n.get_ui());
    return cert;
  }
  if (fits_u64(n)) {
    const u64 v = to_u64(n);
    cert.method = PrimalityMethod::DeterministicMR64;
    cert.prime = true;
    for (u64 b : kBases64) {
      cert.bases.push_back(b);
      if (!miller_rabin_round_u64(v, b)) {
        cert.prime = false;
        cert.note = "composite: base " + std::to_string(b);
        break;
      }
    }
    cert.rounds = static_cast<unsigned>(cert.bases.size());
    return cert;
  }
  cert.method = PrimalityMethod::ProbabilisticMR;
  if (mpz_even_p(n.get_mpz_t())) {
    cert.note = "composite: even";
    return cert;
  }
  cert.bases.push_back(2);
  if (!miller_rabin_round(n, 2)) {
    cert.note = "composite: base 2";
    cert.rounds = 1;
    return cert;
  }
  if (!strong_lucas_test(n)) {
    cert.note = "composite: strong Lucas";
    cert.rounds = 1;
    return cert;
  }
  cert.strong_lucas = true;
  cert.prime = true;
  for (u64 b : probabilistic_bases(n)) {
    cert.bases.push_back(b);
    if (!miller_rabin_round(n, int_from_u64(b))) {
      cert.prime = false;
      cert.note = "composite: base " + std::to_string(b);
      break;
    }
  }
  cert.rounds = static_cast<unsigned>(cert.bases.size());
  return cert;
}

bool reverify(const PrimalityCertificate& cert) {
  if (cert.n <= 1) return false;
  const PrimalityCertificate fresh = is_prime(cert.n);
  if (fresh.prime != cert.prime || fresh.method != cert.method) return false;
  if (cert.method == PrimalityMethod::ProbabilisticMR && cert.prime) {
    if (cert.rounds < kProbabilisticRounds + 1 || !cert.strong_lucas) return false;
    if (!strong_lucas_test(cert.n)) return false;
    for (u64 b : cert.bases) {
      if (!miller_rabin_round(cert.n, int_from_u64(b))) return false;
    }
  }
  if (cert.method == PrimalityMethod::DeterministicMR64 && cert.prime) {
    if (cert.bases.size() != kBases64.size()) return false;
    for (u64 b : cert.bases) {
      if (!miller_rabin_round_u64(to_u64(cert.n), b)) return false;
    }
  }
  return true;
}

}  // namespace hypred::arith
