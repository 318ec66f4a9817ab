#pragma once

#include <string>
#include <vector>

#include "hypred/arith/valuation.hpp"
#include "hypred/curves/curve.hpp"

namespace hypred::curves {

/// One node of a cluster picture. Singletons carry infinite depth.
struct Cluster {
  std::vector<Rat> members;  // ascending
  Valuation depth = Valuation::infinite();
  std::vector<Cluster> children;  // ordered by smallest member

  bool is_singleton() const { return members.size() == 1; }
};

class ClusterPicture {
 public:
  ClusterPicture(Prime p, Cluster top) : p_(std::move(p)), top_(std::move(top)) {}

  const Prime& prime() const { return p_; }
  const Cluster& top() const { return top_; }

  /// Clusters of size >= 2 other than the top one.
  std::vector<const Cluster*> proper_clusters() const;
  bool is_trivial() const { return proper_clusters().empty(); }

  /// Re-derives every structural invariant from the valuations of the members.
  bool validate() const;

  /// TOP := "(" ITEM+ ")_" DEPTH, ITEM := RATIONAL | "{" ITEM+ "}_" DEPTH,
  /// items ordered by their smallest member.
  std::string render() const;

 private:
  Prime p_;
  Cluster top_;
};

/// Single-linkage tree of the roots under v_p(r - r'). Throws Error(EvenPrime)
/// for p = 2 and Error(InvalidCurve) for fewer than two or repeated roots.
ClusterPicture cluster_picture(const std::vector<Rat>& roots, const Prime& p);
ClusterPicture cluster_picture(const RosenhainCurve& curve, const Prime& p);

/// Potential good reduction at an odd prime: the picture is trivial.
bool has_pot_good_reduction_at(const RosenhainCurve& curve, const Prime& p);

/// lambda_i, lambda_i - 1 and lambda_i - lambda_j all p-units. Throws
/// Error(NotNormalized) unless 0 and 1 are roots, Error(EvenPrime) for p = 2.
bool unit_criterion_at(const RosenhainCurve& curve, const Prime& p);

/// Evidence that the cluster picture at p is not trivial: two root pairs
/// whose differences have different valuations.
struct BadPrimeWitness {
  Int p;
  Rat a1, a2;  // first pair
  Rat b1, b2;  // second pair
  Valuation va = Valuation::infinite();
  Valuation vb = Valuation::infinite();

  /// Recomputes both valuations from the roots.
  bool verify() const;
};

struct BadPrimeSet {
  std::vector<Int> primes;  // ascending, odd
  std::vector<BadPrimeWitness> witnesses;  // parallel to primes

  bool contains(const Int& p) const;
  std::size_t size() const { return primes.size(); }
  /// |B_odd ∪ {2}|; the prime 2 is always counted as bad.
  std::size_t count_with_two() const { return primes.size() + 1; }
};

/// Odd primes where the curve fails to have potential good reduction. Only
/// primes dividing some root difference can be bad, so those are the ones
/// tested.
BadPrimeSet bad_odd_primes(const RosenhainCurve& curve);
BadPrimeSet bad_odd_primes(const std::vector<Rat>& roots);

}  // namespace hypred::curves
