#pragma once

// Residue-ring contexts used by the factoring engines. Each context exposes
// the same small interface so that rho and ECM are written once:
//   Elem, zero(), one(), from(Int), add, sub, mul, gcd_with_modulus(Elem).

#include <cstdint>

#include "hypred/arith/rational.hpp"

namespace hypred::arith::detail {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

inline Int int_from_u128(u128 v) {
  Int hi = int_from_u64(static_cast<u64>(v >> 64));
  Int lo = int_from_u64(static_cast<u64>(v));
  return (hi << 64) + lo;
}

inline u128 u128_from_int(const Int& v) {
  Int lo = v & Int("18446744073709551615");
  Int hi = v >> 64;
  return (static_cast<u128>(to_u64(hi)) << 64) | to_u64(lo);
}

/// Montgomery arithmetic modulo an odd n < 2^64.
class Mont64 {
 public:
  using Elem = u64;

  explicit Mont64(u64 n) : n_(n) {
    u64 x = n;  // inverse mod 2^3
    for (int i = 0; i < 6; ++i) x *= 2 - n * x;
    ninv_ = ~x + 1;  // -n^{-1} mod 2^64
    const u128 r = (static_cast<u128>(1) << 64) % n;
    r2_ = static_cast<u64>(r * r % n);
  }

  Elem zero() const { return 0; }
  Elem one() const { return from_u64(1); }
  Elem from_u64(u64 v) const { return mul(v % n_, r2_); }
  Elem from(const Int& v) const {
    Int r = v % int_from_u64(n_);
    if (r < 0) r += int_from_u64(n_);
    return from_u64(to_u64(r));
  }
  Elem add(Elem a, Elem b) const {
    const u128 s = static_cast<u128>(a) + b;
    return static_cast<u64>(s >= n_ ? s - n_ : s);
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + (n_ - b); }
  Elem mul(Elem a, Elem b) const { return redc(static_cast<u128>(a) * b); }
  Int gcd_with_modulus(Elem a) const {
    Int g;
    const Int av = int_from_u64(a);
    const Int nv = int_from_u64(n_);
    mpz_gcd(g.get_mpz_t(), av.get_mpz_t(), nv.get_mpz_t());
    return g;
  }
  Int modulus() const { return int_from_u64(n_); }
  Int to_int(Elem a) const { return int_from_u64(redc(a)); }

 private:
  u64 redc(u128 t) const {
    const u64 m = static_cast<u64>(t) * ninv_;
    const u128 mn = static_cast<u128>(m) * n_;
    const u128 sum = t + mn;
    const bool carry = sum < t;
    u128 r = (sum >> 64) + (carry ? (static_cast<u128>(1) << 64) : 0);
    if (r >= n_) r -= n_;
    return static_cast<u64>(r);
  }

  u64 n_;
  u64 ninv_;
  u64 r2_;
};

/// Montgomery arithmetic modulo an odd n < 2^126.
class Mont128 {
 public:
  using Elem = u128;

  explicit Mont128(u128 n) : n_(n) {
    u128 x = n;
    for (int i = 0; i < 7; ++i) x *= 2 - n * x;
    ninv_ = ~x + 1;
    u128 r = (~n + 1) % n;  // 2^128 mod n
    u128 r2 = r;
    for (int i = 0; i < 128; ++i) {  // r2 = r * 2^128 mod n by doubling
      r2 <<= 1;
      if (r2 >= n) r2 -= n;
    }
    r2_ = r2;
  }

  Elem zero() const { return 0; }
  Elem one() const { return from_u128(1); }
  Elem from_u128(u128 v) const { return mul(v % n_, r2_); }
  Elem from(const Int& v) const {
    const Int nv = int_from_u128(n_);
    Int r = v % nv;
    if (r < 0) r += nv;
    return from_u128(u128_from_int(r));
  }
  Elem add(Elem a, Elem b) const {
    const u128 s = a + b;  // n < 2^126 so no overflow
    return s >= n_ ? s - n_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + (n_ - b); }
  Elem mul(Elem a, Elem b) const {
    u128 hi, lo;
    mul_full(a, b, hi, lo);
    return redc(hi, lo);
  }
  Int gcd_with_modulus(Elem a) const {
    Int g;
    const Int av = int_from_u128(a);
    const Int nv = int_from_u128(n_);
    mpz_gcd(g.get_mpz_t(), av.get_mpz_t(), nv.get_mpz_t());
    return g;
  }
  Int modulus() const { return int_from_u128(n_); }
  Int to_int(Elem a) const { return int_from_u128(redc(0, a)); }

 private:
  static void mul_full(u128 a, u128 b, u128& hi, u128& lo) {
    const u64 a0 = static_cast<u64>(a), a1 = static_cast<u64>(a >> 64);
    const u64 b0 = static_cast<u64>(b), b1 = static_cast<u64>(b >> 64);
    const u128 p00 = static_cast<u128>(a0) * b0;
    const u128 p01 = static_cast<u128>(a0) * b1;
    const u128 p10 = static_cast<u128>(a1) * b0;
    const u128 p11 = static_cast<u128>(a1) * b1;
    const u128 mid = (p00 >> 64) + static_cast<u64>(p01) + static_cast<u64>(p10);
    lo = static_cast<u64>(p00) | (mid << 64);
    hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
  }

  u128 redc(u128 hi, u128 lo) const {
    const u128 m = lo * ninv_;
    u128 mh, ml;
    mul_full(m, n_, mh, ml);
    const u128 slo = lo + ml;
    const u128 c = slo < lo ? 1 : 0;
    u128 r = hi + mh + c;
    if (r >= n_) r -= n_;
    return r;
  }

  u128 n_;
  u128 ninv_;
  u128 r2_;
};

/// Plain GMP residues for moduli of any size.
class MpzRing {
 public:
  using Elem = Int;

  explicit MpzRing(Int n) : n_(std::move(n)) {}

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from(const Int& v) const {
    Int r = v % n_;
    if (r < 0) r += n_;
    return r;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Int s = a + b;
    if (s >= n_) s -= n_;
    return s;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Int s = a - b;
    if (s < 0) s += n_;
    return s;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    Int r = a * b;
    mpz_tdiv_r(r.get_mpz_t(), r.get_mpz_t(), n_.get_mpz_t());
    return r;
  }
  Int gcd_with_modulus(const Elem& a) const {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), n_.get_mpz_t());
    return g;
  }
  const Int& modulus() const { return n_; }
  Int to_int(const Elem& a) const { return a; }

 private:
  Int n_;
};

}  // namespace hypred::arith::detail
