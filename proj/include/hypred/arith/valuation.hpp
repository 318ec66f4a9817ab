#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "hypred/arith/rational.hpp"

namespace hypred {

/// A rational prime whose primality was checked at construction.
class Prime {
 public:
  /// Throws Error(NonPrimeModulus) unless p is prime.
  explicit Prime(const Int& p);
  explicit Prime(std::uint64_t p) : Prime(int_from_u64(p)) {}

  /// For values that are prime by construction (sieve output, factorizations).
  static Prime trusted(Int p) { return Prime(std::move(p), Trusted{}); }

  const Int& value() const { return p_; }
  bool is_odd() const { return p_ != 2; }

  friend bool operator==(const Prime& a, const Prime& b) { return a.p_ == b.p_; }
  friend std::strong_ordering operator<=>(const Prime& a, const Prime& b) { return compare(a.p_, b.p_); }

 private:
  struct Trusted {};
  Prime(Int p, Trusted) : p_(std::move(p)) {}
  Int p_;
};

/// p-adic valuation: a finite integer or +infinity (the valuation of zero).
/// Addition saturates at infinity.
class Valuation {
 public:
  static Valuation infinite() { return Valuation(); }
  explicit Valuation(std::int64_t v) : value_(v), infinite_(false) {}

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Throws Error(OutOfRange) when infinite.
  std::int64_t value() const;

  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return infinite();
    return Valuation(a.value_ + b.value_);
  }
  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_ ? std::strong_ordering::equal
                                           : (a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less);
    return a.value_ <=> b.value_;
  }

  /// Decimal value, or "inf".
  std::string str() const;

 private:
  Valuation() : value_(0), infinite_(true) {}
  std::int64_t value_;
  bool infinite_;
};

namespace arith {

/// v_p(x). Throws Error(NonPrimeModulus) if p is not prime.
Valuation val(const Int& p, const Rat& x);
Valuation val(const Prime& p, const Rat& x);
Valuation val(const Prime& p, const Int& x);

}  // namespace arith

}  // namespace hypred
