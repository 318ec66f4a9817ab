#include "hypred/arith/rational.hpp"

#include <cctype>

#include "hypred/error.hpp"

namespace hypred {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonPrimeModulus: return "NonPrimeModulus";
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::EvenPrime: return "EvenPrime";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::PrimeTooSmall: return "PrimeTooSmall";
    case Errc::GenusMismatch: return "GenusMismatch";
    case Errc::InvalidCurve: return "InvalidCurve";
    case Errc::NotClosed: return "NotClosed";
    case Errc::MissingEvenPrime: return "MissingEvenPrime";
    case Errc::UnsupportedField: return "UnsupportedField";
    case Errc::NotAConstellation: return "NotAConstellation";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Parse: return "Parse";
    case Errc::Checkpoint: return "Checkpoint";
    case Errc::Invariant: return "Invariant";
  }
  return "Unknown";
}

Int parse_int(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) body.remove_prefix(1);
  if (body.empty()) throw Error(Errc::Parse, "empty integer literal '" + std::string(text) + "'");
  for (char ch : body) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw Error(Errc::Parse, "malformed integer literal '" + std::string(text) + "'");
    }
  }
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  return Int(s, 10);
}

bool fits_u64(const Int& v) {
  return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const Int& v) {
  if (!fits_u64(v)) throw Error(Errc::OutOfRange, "integer " + v.get_str() + " does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

Rat::Rat(const Int& num, const Int& den) {
  if (den == 0) throw Error(Errc::ZeroInput, "rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  const Int num = parse_int(text.substr(0, slash));
  const Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(Errc::Parse, "zero denominator in '" + std::string(text) + "'");
  return Rat(num, den);
}

Rat Rat::abs() const {
  Rat r;
  r.q_ = ::abs(q_);
  return r;
}

Rat Rat::inverse() const {
  if (is_zero()) throw Error(Errc::ZeroInput, "inverse of zero");
  return Rat(den(), num());
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw Error(Errc::ZeroInput, "division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Rat::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::strong_ordering compare(const Int& a, const Int& b) {
  const int c = cmp(a, b);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool num_den_less(const Rat& a, const Rat& b) {
  const int c = cmp(a.mpq().get_num(), b.mpq().get_num());
  if (c != 0) return c < 0;
  return cmp(a.mpq().get_den(), b.mpq().get_den()) < 0;
}

std::size_t RatHash::operator()(const Rat& r) const {
  const auto limb = [](const mpz_class& z) -> std::size_t {
    return mpz_size(z.get_mpz_t()) == 0 ? 0 : static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), 0));
  };
  std::size_t h = limb(r.mpq().get_num()) * 0x9E3779B97F4A7C15ULL;
  h ^= limb(r.mpq().get_den()) + 0x7F4A7C15ULL + (h << 6) + (h >> 2);
  return h ^ static_cast<std::size_t>(r.sign() + 1);
}

}  // namespace hypred
