#include "hypred/arith/valuation.hpp"

#include "hypred/arith/primality.hpp"
#include "hypred/error.hpp"

namespace hypred {

Prime::Prime(const Int& p) : p_(p) {
  if (p < 2 || !arith::is_probable_prime(p)) {
    throw Error(Errc::NonPrimeModulus, p.get_str() + " is not prime");
  }
}

std::int64_t Valuation::value() const {
  if (infinite_) throw Error(Errc::OutOfRange, "valuation is infinite");
  return value_;
}

std::string Valuation::str() const { return infinite_ ? "inf" : std::to_string(value_); }

namespace arith {

namespace {

std::int64_t remove_count(const Int& p, const Int& x) {
  if (x == 0) return 0;
  // Fast path: one trial division settles the common unit case.
  if (!mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) return 0;
  Int tmp;
  return static_cast<std::int64_t>(mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

}  // namespace

Valuation val(const Prime& p, const Int& x) {
  if (x == 0) return Valuation::infinite();
  return Valuation(remove_count(p.value(), x));
}

Valuation val(const Prime& p, const Rat& x) {
  if (x.is_zero()) return Valuation::infinite();
  const mpq_class& q = x.mpq();
  return Valuation(remove_count(p.value(), q.get_num()) - remove_count(p.value(), q.get_den()));
}

Valuation val(const Int& p, const Rat& x) { return val(Prime(p), x); }

}  // namespace arith

}  // namespace hypred
