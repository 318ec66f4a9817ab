#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hypred/arith/rational.hpp"

namespace hypred::curves {

/// A point of P^1 over the rationals.
struct ProjPoint {
  Rat x;
  bool infinite = false;

  static ProjPoint inf() { return {Rat(0), true}; }
  static ProjPoint finite(Rat v) { return {std::move(v), false}; }

  std::string str() const { return infinite ? "inf" : x.str(); }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
    return a.infinite == b.infinite && (a.infinite || a.x == b.x);
  }
};

/// x -> (a x + b) / (c x + d). Entries are scaled to coprime integers with
/// the first nonzero entry positive, so equal maps compare equal.
class MobiusMap {
 public:
  /// Throws Error(InvalidArgument) if ad - bc = 0.
  MobiusMap(const Rat& a, const Rat& b, const Rat& c, const Rat& d);

  static MobiusMap identity() { return MobiusMap(1, 0, 0, 1); }

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& c() const { return c_; }
  const Int& d() const { return d_; }
  Int det() const { return a_ * d_ - b_ * c_; }

  ProjPoint apply(const ProjPoint& p) const;
  ProjPoint apply(const Rat& x) const { return apply(ProjPoint::finite(x)); }
  MobiusMap inverse() const;
  /// (this ∘ other)(x) = this(other(x))
  MobiusMap compose(const MobiusMap& other) const;

  /// "(a*x+b)/(c*x+d)"
  std::string str() const;

  friend bool operator==(const MobiusMap&, const MobiusMap&) = default;

 private:
  Int a_, b_, c_, d_;
};

/// The unique map with from[i] -> to[i]; none if either triple repeats a point.
std::optional<MobiusMap> map_three_points(const std::array<ProjPoint, 3>& from,
                                          const std::array<ProjPoint, 3>& to);

/// A map sending the point set w1 onto w2, or none. Tries every ordered target
/// triple for the first three source points. Throws Error(GenusMismatch) if
/// the sizes differ.
std::optional<MobiusMap> pgl2_equivalent_points(const std::vector<ProjPoint>& w1,
                                                const std::vector<ProjPoint>& w2);

/// Same for root lists, each extended by infinity.
std::optional<MobiusMap> pgl2_equivalent(const std::vector<Rat>& roots1, const std::vector<Rat>& roots2);

/// Roots plus infinity.
std::vector<ProjPoint> weierstrass_points(const std::vector<Rat>& roots);

/// Class representative: over every choice of Weierstrass point sent to
/// infinity and both orientations, translate the minimum to 0 and scale to
/// coprime integers; keep the lexicographically smallest sorted vector.
/// Two root sets are PGL2-equivalent iff their representatives agree.
std::vector<Int> canonical_roots(const std::vector<Rat>& roots);

}  // namespace hypred::curves
