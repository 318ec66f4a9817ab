#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypred/arith/rational.hpp"

namespace hypred::bounds {

/// A number field described only by the data the bounds depend on.
class FieldDescriptor {
 public:
  enum class Kind { Rationals, Quadratic, AbelianPrime, PrimitiveNonAbelian };

  static FieldDescriptor rationals();
  /// d squarefree, d != 0, 1. Throws Error(InvalidArgument).
  static FieldDescriptor quadratic(std::int64_t d);
  /// Prime degree n, conductor f >= 3. Throws Error(InvalidArgument).
  static FieldDescriptor abelian_prime(std::int64_t n, std::int64_t f);
  /// Degree n >= 2 with no abelian subfield besides Q. Throws Error(InvalidArgument).
  static FieldDescriptor primitive_non_abelian(std::int64_t n);

  /// "q", "quad:d", "abp:n:f" or "pna:n". Throws Error(Parse) on malformed
  /// text and Error(InvalidArgument) on impossible parameters.
  static FieldDescriptor parse(std::string_view text);

  Kind kind() const { return kind_; }
  std::int64_t degree() const { return n_; }
  /// Conductor for the abelian kinds (|D| for quadratic fields), 1 for Q.
  std::int64_t conductor() const { return f_; }
  /// Quadratic only: the squarefree d and the field discriminant D.
  std::int64_t d() const { return d_; }
  std::int64_t discriminant() const { return disc_; }

  /// Inverse of parse.
  std::string str() const;

  bool operator==(const FieldDescriptor&) const = default;

 private:
  Kind kind_ = Kind::Rationals;
  std::int64_t n_ = 1;
  std::int64_t f_ = 1;
  std::int64_t d_ = 0;
  std::int64_t disc_ = 1;
};

/// What a reported value depends on.
enum class Condition { Unconditional, PrimeTuples, HypothesisH, AsymptoticOnly };
std::string_view to_string(Condition c);

/// Number of prime ideals of odd norm <= x. Supported for Q and quadratic
/// fields only; others throw Error(UnsupportedField).
std::uint64_t pi_odd(const FieldDescriptor& k, std::int64_t x);

/// pi_odd(K, 2g) + 2, the least value the pigeonhole argument allows.
std::uint64_t lower_bound(const FieldDescriptor& k, int g);

/// 2g - 1 + n pi(2g), conditional on the prime k-tuples conjecture.
Int upper_dickson(std::int64_t n, int g);

/// Leading term (2 / log 2) n g log g with the o(1) dropped.
struct Asymptotic {
  double value = 0;
  std::optional<Rat> exact;  // present when g is a power of two
};
Asymptotic upper_linearithmic(std::int64_t n, int g);

/// {d : 1 <= d < g} together with the even d < 2g, ascending.
std::vector<std::int64_t> d_index_set(int g);

/// [K(zeta_d) : Q(zeta_d)] as far as the descriptor determines it.
std::int64_t cyclotomic_relative_degree(const FieldDescriptor& k, std::int64_t d);

/// Sum over d_index_set(g) of n / [K(zeta_d) : Q(zeta_d)], plus 1 + n pi(2g).
Int upper_schinzel_exact(const FieldDescriptor& k, int g);

/// Closed forms for primitive abelian fields (odd and even conductor, quadratic
/// fields included) and for fields with no abelian subfield. Throws
/// Error(UnsupportedField) for Q.
Rat upper_corollary(const FieldDescriptor& k, int g);

struct BoundsReport {
  FieldDescriptor field;
  int g = 0;
  std::optional<std::uint64_t> lower;
  std::string lower_missing;  // why lower is absent
  Int dickson;
  Asymptotic linearithmic;
  Int schinzel;
  std::optional<Rat> corollary;

  static constexpr Condition kLower = Condition::Unconditional;
  static constexpr Condition kDickson = Condition::PrimeTuples;
  static constexpr Condition kLinearithmic = Condition::AsymptoticOnly;
  static constexpr Condition kSchinzel = Condition::HypothesisH;
  static constexpr Condition kCorollary = Condition::HypothesisH;
};

/// Every bound that applies to K at genus g. Throws Error(InvalidArgument) for g < 2.
BoundsReport bounds_report(const FieldDescriptor& k, int g);

}  // namespace hypred::bounds
