#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace hypred {

/// Arbitrary-precision signed integer.
using Int = mpz_class;

/// Parses an optionally signed decimal integer. Throws Error(Parse).
Int parse_int(std::string_view text);

/// Converts to uint64; throws Error(OutOfRange) when the value does not fit.
std::uint64_t to_u64(const Int& v);
bool fits_u64(const Int& v);

inline Int int_from_u64(std::uint64_t v) {
  Int r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return r;
}

/// Exact rational number, always stored in lowest terms with a positive
/// denominator, so that equality is structural.
class Rat {
 public:
  Rat() = default;
  Rat(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(const Int& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(const Int& num, const Int& den);

  /// Accepts "n", "-n", "n/d", "-n/d" (d may carry the sign too; it is folded
  /// into the numerator). Throws Error(Parse).
  static Rat parse(std::string_view text);

  Int num() const { return q_.get_num(); }
  Int den() const { return q_.get_den(); }
  const mpq_class& mpq() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rat abs() const;
  Rat inverse() const;  // throws Error(ZeroInput) on zero

  /// "num" for integers, "num/den" otherwise.
  std::string str() const;

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) {
    Rat r;
    r.q_ = -a.q_;
    return r;
  }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

std::strong_ordering compare(const Int& a, const Int& b);

/// Orders by (numerator, denominator) rather than by value.
bool num_den_less(const Rat& a, const Rat& b);

struct RatHash {
  std::size_t operator()(const Rat& r) const;
};

}  // namespace hypred
