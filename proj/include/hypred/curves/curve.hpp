#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypred/arith/rational.hpp"
#include "hypred/arith/valuation.hpp"

namespace hypred::curves {

/// y^2 = c * prod (x - r) with 2g+1 distinct rational roots. Roots are kept
/// sorted ascending so two curves with the same root set compare equal.
class RosenhainCurve {
 public:
  /// Throws Error(InvalidCurve) on a wrong root count, repeated roots,
  /// genus < 2 or c = 0.
  RosenhainCurve(int genus, Rat twist, std::vector<Rat> roots);

  /// Genus inferred from the root count (which must be odd and >= 5).
  static RosenhainCurve from_roots(std::vector<Rat> roots, Rat twist = Rat(1));

  int genus() const { return genus_; }
  const Rat& twist() const { return twist_; }
  const std::vector<Rat>& roots() const { return roots_; }

  /// True iff 0 and 1 are both roots.
  bool normalized() const { return normalized_; }
  /// Roots other than 0 and 1. Throws Error(NotNormalized).
  std::vector<Rat> lambdas() const;

  RosenhainCurve with_twist(Rat c) const { return RosenhainCurve(genus_, std::move(c), roots_); }
  /// roots -> a*roots + b, a != 0.
  RosenhainCurve affine(const Rat& a, const Rat& b) const;

  /// "c=1 roots=0,1,2,3,4"
  std::string str() const;

  friend bool operator==(const RosenhainCurve&, const RosenhainCurve&) = default;

 private:
  int genus_;
  Rat twist_;
  std::vector<Rat> roots_;
  bool normalized_;
};

/// Comma separated rationals, e.g. "0,1,3/2". Throws Error(Parse).
std::vector<Rat> parse_roots(const std::string& text);
std::string join_roots(const std::vector<Rat>& roots);

/// Roots {0, 1, ..., 2g}. Throws Error(PrimeTooSmall) unless p > 2g, and
/// Error(EvenPrime) for p = 2.
RosenhainCurve good_example(int g, const Prime& p);

/// Deterministic pseudorandom normalized curve: 0, 1 and 2g-1 further distinct
/// roots a/b with |a| <= height, 1 <= b <= height. Requires height >= 2g+1.
RosenhainCurve random_curve(int g, std::uint64_t height, std::uint64_t seed);

/// Model discriminant 2^(4g) * disc(c * prod(x - r)).
Rat model_discriminant(const RosenhainCurve& curve);

}  // namespace hypred::curves
