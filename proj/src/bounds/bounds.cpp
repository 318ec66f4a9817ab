#include "hypred/bounds/bounds.hpp"

#include <cmath>

#include "hypred/arith/factor.hpp"
#include "hypred/arith/primality.hpp"
#include "hypred/arith/primes.hpp"
#include "hypred/error.hpp"

namespace hypred::bounds {

namespace {

std::int64_t to_i64(const Int& v, std::string_view what) {
  if (!v.fits_slong_p()) throw Error(Errc::Parse, std::string(what) + " out of range");
  return v.get_si();
}

bool squarefree(std::int64_t d) {
  for (const auto& pp : arith::factor(Int(static_cast<long>(d))).factors) {
    if (pp.exponent > 1) return false;
  }
  return true;
}

void require_genus(int g) {
  if (g < 2) throw Error(Errc::InvalidArgument, "genus must be at least 2");
}

Int pi_int(std::uint64_t x) { return int_from_u64(arith::pi(x)); }

}  // namespace

FieldDescriptor FieldDescriptor::rationals() { return {}; }

FieldDescriptor FieldDescriptor::quadratic(std::int64_t d) {
  if (d == 0 || d == 1 || !squarefree(d)) {
    throw Error(Errc::InvalidArgument, "quadratic field needs squarefree d != 0, 1");
  }
  FieldDescriptor k;
  k.kind_ = Kind::Quadratic;
  k.n_ = 2;
  k.d_ = d;
  // d mod 4 with the sign folded in
  k.disc_ = (((d % 4) + 4) % 4 == 1) ? d : 4 * d;
  k.f_ = k.disc_ < 0 ? -k.disc_ : k.disc_;
  return k;
}

FieldDescriptor FieldDescriptor::abelian_prime(std::int64_t n, std::int64_t f) {
  if (n < 2 || !arith::is_prime_u64(static_cast<std::uint64_t>(n))) {
    throw Error(Errc::InvalidArgument, "abelian descriptor needs prime degree");
  }
  if (f < 3) throw Error(Errc::InvalidArgument, "conductor must be at least 3");
  FieldDescriptor k;
  k.kind_ = Kind::AbelianPrime;
  k.n_ = n;
  k.f_ = f;
  return k;
}

FieldDescriptor FieldDescriptor::primitive_non_abelian(std::int64_t n) {
  if (n < 2) throw Error(Errc::InvalidArgument, "degree must be at least 2");
  FieldDescriptor k;
  k.kind_ = Kind::PrimitiveNonAbelian;
  k.n_ = n;
  return k;
}

FieldDescriptor FieldDescriptor::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  const std::string_view tag = parts[0];
  auto arg = [&](std::size_t i) { return to_i64(parse_int(parts[i]), "field parameter"); };
  if ((tag == "q" || tag == "Q") && parts.size() == 1) return rationals();
  if (tag == "quad" && parts.size() == 2) return quadratic(arg(1));
  if (tag == "abp" && parts.size() == 3) return abelian_prime(arg(1), arg(2));
  if (tag == "pna" && parts.size() == 2) return primitive_non_abelian(arg(1));
  throw Error(Errc::Parse, "unrecognized field descriptor '" + std::string(text) + "'");
}

std::string FieldDescriptor::str() const {
  switch (kind_) {
    case Kind::Rationals: return "q";
    case Kind::Quadratic: return "quad:" + std::to_string(d_);
    case Kind::AbelianPrime: return "abp:" + std::to_string(n_) + ":" + std::to_string(f_);
    case Kind::PrimitiveNonAbelian: return "pna:" + std::to_string(n_);
  }
  return {};
}

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::Unconditional: return "unconditional";
    case Condition::PrimeTuples: return "prime-k-tuples";
    case Condition::HypothesisH: return "hypothesis-H";
    case Condition::AsymptoticOnly: return "asymptotic-only";
  }
  return "unknown";
}

std::uint64_t pi_odd(const FieldDescriptor& k, std::int64_t x) {
  using Kind = FieldDescriptor::Kind;
  if (k.kind() != Kind::Rationals && k.kind() != Kind::Quadratic) {
    throw Error(Errc::UnsupportedField, "prime counting needs Q or a quadratic field, got " + k.str());
  }
  if (x < 3) return 0;
  const auto ux = static_cast<std::uint64_t>(x);
  if (k.kind() == Kind::Rationals) return arith::pi(ux) - 1;

  const std::int64_t disc = k.discriminant();
  std::uint64_t count = 0;
  for (std::uint64_t p : arith::primes_upto(ux)) {
    if (p == 2) continue;
    const auto sp = static_cast<std::int64_t>(p);
    if (disc % sp == 0) {
      count += 1;
    } else if (arith::kronecker(disc, sp) == 1) {
      count += 2;
    } else if (p <= ux / p) {
      count += 1;
    }
  }
  return count;
}

std::uint64_t lower_bound(const FieldDescriptor& k, int g) {
  require_genus(g);
  return pi_odd(k, 2 * static_cast<std::int64_t>(g)) + 2;
}

Int upper_dickson(std::int64_t n, int g) {
  require_genus(g);
  if (n < 1) throw Error(Errc::InvalidArgument, "degree must be positive");
  return Int(2 * g - 1) + Int(static_cast<long>(n)) * pi_int(2 * static_cast<std::uint64_t>(g));
}

Asymptotic upper_linearithmic(std::int64_t n, int g) {
  require_genus(g);
  Asymptotic out;
  const double ng = static_cast<double>(n) * g;
  out.value = 2.0 * ng * std::log2(static_cast<double>(g));
  if ((g & (g - 1)) == 0) {
    long lg = 0;
    while ((1 << lg) < g) ++lg;
    out.exact = Rat(Int(2) * Int(static_cast<long>(n)) * Int(g) * Int(lg));
  }
  return out;
}

std::vector<std::int64_t> d_index_set(int g) {
  require_genus(g);
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d < 2 * g; ++d) {
    if (d < g || d % 2 == 0) out.push_back(d);
  }
  return out;
}

std::int64_t cyclotomic_relative_degree(const FieldDescriptor& k, std::int64_t d) {
  if (d < 1) throw Error(Errc::InvalidArgument, "d must be positive");
  switch (k.kind()) {
    case FieldDescriptor::Kind::Rationals: return 1;
    case FieldDescriptor::Kind::Quadratic:
    case FieldDescriptor::Kind::AbelianPrime: return d % k.conductor() == 0 ? 1 : k.degree();
    case FieldDescriptor::Kind::PrimitiveNonAbelian: return k.degree();
  }
  return k.degree();
}

Int upper_schinzel_exact(const FieldDescriptor& k, int g) {
  Int sum = 0;
  for (std::int64_t d : d_index_set(g)) {
    const std::int64_t rel = cyclotomic_relative_degree(k, d);
    if (k.degree() % rel != 0) throw Error(Errc::Invariant, "non-integral cyclotomic term");
    sum += static_cast<long>(k.degree() / rel);
  }
  return sum + 1 + Int(static_cast<long>(k.degree())) * pi_int(2 * static_cast<std::uint64_t>(g));
}

Rat upper_corollary(const FieldDescriptor& k, int g) {
  require_genus(g);
  using Kind = FieldDescriptor::Kind;
  const Rat n(static_cast<long>(k.degree()));
  const Rat tail = n * Rat(pi_int(2 * static_cast<std::uint64_t>(g)));
  const Rat three_halves_g = Rat(3 * g, 2);
  switch (k.kind()) {
    case Kind::Rationals:
      throw Error(Errc::UnsupportedField, "no closed form for Q");
    case Kind::PrimitiveNonAbelian:
      return three_halves_g + tail;
    case Kind::Quadratic:
    case Kind::AbelianPrime: {
      const Rat f(static_cast<long>(k.conductor()));
      const Rat extra = k.conductor() % 2 == 1 ? (n - 1) / f : Rat(4) * (n - 1) / (Rat(3) * f);
      return three_halves_g * (Rat(1) + extra) + 1 + tail;
    }
  }
  throw Error(Errc::UnsupportedField, k.str());
}

BoundsReport bounds_report(const FieldDescriptor& k, int g) {
  require_genus(g);
  BoundsReport r;
  r.field = k;
  r.g = g;
  try {
    r.lower = lower_bound(k, g);
  } catch (const Error& e) {
    if (e.code() != Errc::UnsupportedField) throw;
    r.lower_missing = "splitting of odd primes is not determined by " + k.str();
  }
  r.dickson = upper_dickson(k.degree(), g);
  r.linearithmic = upper_linearithmic(k.degree(), g);
  r.schinzel = upper_schinzel_exact(k, g);
  if (k.kind() != FieldDescriptor::Kind::Rationals) r.corollary = upper_corollary(k, g);
  return r;
}

}  // namespace hypred::bounds
