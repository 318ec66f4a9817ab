#include "hypred/arith/factor.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "hypred/arith/primality.hpp"
#include "hypred/arith/primes.hpp"
#include "hypred/error.hpp"
#include "modring.hpp"

namespace hypred::arith {

namespace {

using detail::Mont128;
using detail::Mont64;
using detail::MpzRing;
using detail::u128;
using detail::u64;

constexpr std::size_t kChunkPrimes = 256;

// Products of consecutive runs of the small-prime table; a gcd against each
// run tells us which runs need explicit trial division.
const std::vector<Int>& chunk_products() {
  static const std::vector<Int> products = [] {
    std::vector<Int> out;
    const auto primes = small_primes();
    for (std::size_t i = 0; i < primes.size(); i += kChunkPrimes) {
      Int prod = 1;
      for (std::size_t j = i; j < std::min(primes.size(), i + kChunkPrimes); ++j) prod *= primes[j];
      out.push_back(prod);
    }
    return out;
  }();
  return products;
}

struct IntLess {
  bool operator()(const Int& a, const Int& b) const { return cmp(a, b) < 0; }
};
using PrimeAccumulator = std::map<Int, unsigned, IntLess>;

void add_prime(PrimeAccumulator& acc, const Int& p, unsigned e) { acc[p] += e; }

// ---------------------------------------------------------------------------
// Pollard-rho with Brent's cycle detection and batched gcds.

template <class Ring>
std::optional<Int> rho_brent(const Ring& ring, u64 increment, u64 max_iterations) {
  using Elem = typename Ring::Elem;
  const Int n = ring.modulus();
  const Elem c = ring.from(Int(static_cast<unsigned long>(increment)));
  auto f = [&](const Elem& v) { return ring.add(ring.mul(v, v), c); };

  constexpr u64 kBatch = 128;
  Elem y = ring.from(Int(2));
  Elem x = y;
  Elem ys = y;
  Elem q = ring.one();
  Int g = 1;
  u64 r = 1;
  u64 iterations = 0;
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    u64 k = 0;
    while (k < r && g == 1) {
      ys = y;
      const u64 steps = std::min(kBatch, r - k);
      for (u64 i = 0; i < steps; ++i) {
        y = f(y);
        q = ring.mul(q, ring.sub(x, y));
      }
      g = ring.gcd_with_modulus(q);
      k += steps;
      iterations += steps;
    }
    r *= 2;
    if (iterations > max_iterations && g == 1) return std::nullopt;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = ring.gcd_with_modulus(ring.sub(x, ys));
    } while (g == 1);
  }
  if (g == n || g == 1) return std::nullopt;
  return g;
}

// ---------------------------------------------------------------------------
// ECM on Montgomery curves (Suyama parametrisation), stage 1 + baby/giant stage 2.

template <class Ring>
struct XZ {
  typename Ring::Elem x;
  typename Ring::Elem z;
};

template <class Ring>
class Ecm {
 public:
  using Elem = typename Ring::Elem;
  using Point = XZ<Ring>;

  Ecm(const Ring& ring, Elem a24) : ring_(ring), a24_(a24) {}

  Point dbl(const Point& p) const {
    const Elem s = ring_.add(p.x, p.z);
    const Elem d = ring_.sub(p.x, p.z);
    const Elem t1 = ring_.mul(s, s);
    const Elem t2 = ring_.mul(d, d);
    const Elem t3 = ring_.sub(t1, t2);
    return {ring_.mul(t1, t2), ring_.mul(t3, ring_.add(t2, ring_.mul(a24_, t3)))};
  }

  // P + Q given P - Q.
  Point add(const Point& p, const Point& q, const Point& diff) const {
    const Elem u = ring_.mul(ring_.sub(p.x, p.z), ring_.add(q.x, q.z));
    const Elem v = ring_.mul(ring_.add(p.x, p.z), ring_.sub(q.x, q.z));
    const Elem sum = ring_.add(u, v);
    const Elem dif = ring_.sub(u, v);
    return {ring_.mul(diff.z, ring_.mul(sum, sum)), ring_.mul(diff.x, ring_.mul(dif, dif))};
  }

  Point ladder(const Point& p, u64 k) const {
    if (k == 0) return {ring_.one(), ring_.zero()};
    if (k == 1) return p;
    Point r0 = p;
    Point r1 = dbl(p);
    for (int bit = 62 - __builtin_clzll(k); bit >= 0; --bit) {
      if ((k >> bit) & 1) {
        r0 = add(r1, r0, p);
        r1 = dbl(r1);
      } else {
        r1 = add(r1, r0, p);
        r0 = dbl(r0);
      }
    }
    return r0;
  }

 private:
  const Ring& ring_;
  Elem a24_;
};

template <class Ring>
std::optional<Int> ecm_curve(const Ring& ring, u64 sigma, u64 b1, u64 b2,
                             const std::vector<u64>& stage2_primes) {
  using Elem = typename Ring::Elem;
  const Int n = ring.modulus();
  const Int s(static_cast<unsigned long>(sigma));
  const Int u = (s * s - 5) % n;
  const Int v = (4 * s) % n;
  const Int x0 = u * u * u % n;
  const Int z0 = v * v * v % n;
  // a24 = (A + 2) / 4 = (v - u)^3 (3u + v) / (16 u^3 v)
  Int vu = v - u;
  Int num = vu * vu * vu * (3 * u + v) % n;
  Int den = 16 * x0 * v % n;
  if (den < 0) den += n;
  Int g;
  mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t());
  if (g != 1) {
    if (g != n) return g;
    return std::nullopt;
  }
  Int inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t());
  const Elem a24 = ring.from(num * inv);
  const Ecm<Ring> curve(ring, a24);

  XZ<Ring> q{ring.from(x0), ring.from(z0)};
  for (u64 p : small_primes()) {
    if (p > b1) break;
    u64 pk = p;
    while (pk <= b1 / p) pk *= p;
    q = curve.ladder(q, pk);
  }
  g = ring.gcd_with_modulus(q.z);
  if (g != 1) return g == n ? std::nullopt : std::optional<Int>(g);

  // Stage 2: primes in (b1, b2] via R = [r]Q stepping by 2D and S_d = [2d]Q.
  constexpr u64 D = 105;
  std::vector<XZ<Ring>> s_table(D + 1);
  std::vector<Elem> beta(D + 1);
  s_table[1] = curve.dbl(q);
  s_table[2] = curve.dbl(s_table[1]);
  for (u64 d = 3; d <= D; ++d) s_table[d] = curve.add(s_table[d - 1], s_table[1], s_table[d - 2]);
  for (u64 d = 1; d <= D; ++d) beta[d] = ring.mul(s_table[d].x, s_table[d].z);

  u64 r = b1 | 1;
  XZ<Ring> rr = curve.ladder(q, r);
  XZ<Ring> tt = curve.ladder(q, r - 2 * D);
  Elem acc = ring.one();
  const auto& primes = stage2_primes;
  std::size_t idx = 0;
  for (; r < b2 && idx < primes.size(); r += 2 * D) {
    const Elem alpha = ring.mul(rr.x, rr.z);
    while (idx < primes.size() && primes[idx] <= r + 2 * D) {
      const u64 delta = (primes[idx] - r) / 2;
      const Elem t = ring.mul(ring.sub(rr.x, s_table[delta].x), ring.add(rr.z, s_table[delta].z));
      acc = ring.mul(acc, ring.add(ring.sub(t, alpha), beta[delta]));
      ++idx;
    }
    const XZ<Ring> next = curve.add(rr, s_table[D], tt);
    tt = rr;
    rr = next;
  }
  g = ring.gcd_with_modulus(acc);
  if (g != 1 && g != n) return g;
  return std::nullopt;
}

struct EcmLevel {
  u64 b1;
  u64 b2;
  unsigned curves;
};

constexpr EcmLevel kEcmSchedule[] = {
    {600, 50'000, 12},      {2000, 150'000, 30},     {11'000, 1'100'000, 90},  {50'000, 5'000'000, 240},
    {250'000, 25'000'000, 600}, {1'000'000, 100'000'000, 2000},
};

template <class Ring>
std::optional<Int> split_with(const Ring& ring, u64 rho_iterations) {
  if (auto g = rho_brent(ring, 1, rho_iterations)) return g;
  u64 sigma = 6;
  for (const auto& level : kEcmSchedule) {
    const auto stage2 = primes_in_range((level.b1 | 1) + 1, level.b2 + 1);
    for (unsigned c = 0; c < level.curves; ++c, ++sigma) {
      if (auto g = ecm_curve(ring, sigma, level.b1, level.b2, stage2)) return g;
    }
  }
  return std::nullopt;
}

std::optional<Int> perfect_power_root(const Int& n) {
  if (!mpz_perfect_power_p(n.get_mpz_t())) return std::nullopt;
  const auto bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (unsigned long k = 2; k <= bits; ++k) {
    Int root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) return root;
  }
  return std::nullopt;
}

}  // namespace

Int find_factor(const Int& n) {
  if (auto root = perfect_power_root(n)) return *root;
  std::optional<Int> g;
  if (fits_u64(n)) {
    const Mont64 ring(to_u64(n));
    for (u64 inc = 1; !g; ++inc) g = rho_brent(ring, inc, ~0ULL);
    return *g;
  }
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 125) {
    g = split_with(Mont128(detail::u128_from_int(n)), 1ULL << 15);
  } else {
    g = split_with(MpzRing(n), 1ULL << 15);
  }
  if (!g) {
    // Deterministic last resort; unreachable for the sizes this library handles.
    Int d = kSmallPrimeLimit | 1;
    while (n % d != 0) d += 2;
    return d;
  }
  return *g;
}

Factorization factor(const Int& n) {
  if (n == 0) throw Error(Errc::ZeroInput, "factor(0)");
  Factorization out;
  out.sign = sgn(n) < 0 ? -1 : 1;
  Int m = abs(n);
  PrimeAccumulator acc;

  const auto primes = small_primes();
  auto strip = [&](u64 p) {
    const Int pz = int_from_u64(p);
    const auto e = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t());
    if (e > 0) add_prime(acc, pz, static_cast<unsigned>(e));
  };

  if (fits_u64(m)) {
    u64 v = to_u64(m);
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const u64 p = primes[i];
      if (p * p > v) break;
      if (v % p == 0) {
        unsigned e = 0;
        while (v % p == 0) {
          v /= p;
          ++e;
        }
        add_prime(acc, int_from_u64(p), e);
      }
      if ((i & 1023) == 1023 && is_prime_u64(v)) break;
    }
    m = int_from_u64(v);
  } else {
    const auto& chunks = chunk_products();
    for (std::size_t c = 0; c < chunks.size() && m > 1; ++c) {
      Int g;
      mpz_gcd(g.get_mpz_t(), chunks[c].get_mpz_t(), m.get_mpz_t());
      if (g == 1) continue;
      const std::size_t end = std::min(primes.size(), (c + 1) * kChunkPrimes);
      for (std::size_t j = c * kChunkPrimes; j < end; ++j) {
        if (mpz_divisible_ui_p(g.get_mpz_t(), primes[j])) strip(primes[j]);
      }
    }
  }

  // Every remaining prime factor exceeds 10^6.
  std::vector<Int> pending;
  if (m > 1) pending.push_back(m);
  const Int trial_square = Int(static_cast<unsigned long>(kSmallPrimeLimit)) * Int(static_cast<unsigned long>(kSmallPrimeLimit));
  while (!pending.empty()) {
    Int c = std::move(pending.back());
    pending.pop_back();
    if (c < trial_square || is_probable_prime(c)) {
      add_prime(acc, c, 1);
      continue;
    }
    const Int d = find_factor(c);
    pending.push_back(d);
    pending.push_back(c / d);
  }

  for (auto& [p, e] : acc) out.factors.push_back({p, e});
  return out;
}

Int Factorization::value() const {
  Int v = sign;
  for (const auto& [p, e] : factors) {
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), e);
    v *= pk;
  }
  return v;
}

std::vector<Int> Factorization::primes() const {
  std::vector<Int> out;
  out.reserve(factors.size());
  for (const auto& pp : factors) out.push_back(pp.prime);
  return out;
}

std::vector<Int> coprime_base(const std::vector<Int>& values) {
  std::vector<Int> todo;
  for (const Int& v : values) {
    Int a = abs(v);
    if (a > 1) todo.push_back(std::move(a));
  }
  std::vector<Int> base;
  Int g;
  while (!todo.empty()) {
    Int y = std::move(todo.back());
    todo.pop_back();
    if (y == 1) continue;
    bool placed = false;
    for (std::size_t k = 0; k < base.size(); ++k) {
      mpz_gcd(g.get_mpz_t(), y.get_mpz_t(), base[k].get_mpz_t());
      if (g == 1) continue;
      placed = true;
      if (g == y && g == base[k]) break;
      Int b = std::move(base[k]);
      base.erase(base.begin() + static_cast<std::ptrdiff_t>(k));
      todo.push_back(b / g);
      todo.push_back(y / g);
      todo.push_back(g);
      break;
    }
    if (!placed) base.push_back(std::move(y));
  }
  std::sort(base.begin(), base.end(), IntLess{});
  return base;
}

std::vector<Int> prime_support(const std::vector<Int>& values) {
  std::vector<Int> out;
  for (const Int& b : coprime_base(values)) {
    for (const auto& pp : factor(b).factors) out.push_back(pp.prime);
  }
  std::sort(out.begin(), out.end(), IntLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace hypred::arith
