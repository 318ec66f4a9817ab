#pragma once

#include <array>
#include <string>
#include <vector>

#include "hypred/arith/rational.hpp"
#include "hypred/arith/valuation.hpp"

namespace hypred::sunit {

/// Sorted, deduplicated set of rational primes.
class PrimeSet {
 public:
  PrimeSet() = default;
  /// Throws Error(NonPrimeModulus) if an entry is not prime.
  explicit PrimeSet(std::vector<Int> primes);
  /// "2,3" or "" for the empty set. Throws Error(Parse) / Error(NonPrimeModulus).
  static PrimeSet parse(const std::string& text);

  const std::vector<Int>& primes() const { return primes_; }
  bool contains(const Int& p) const;
  bool empty() const { return primes_.empty(); }
  std::size_t size() const { return primes_.size(); }
  PrimeSet with(const Int& p) const;
  /// "{2,3}"
  std::string str() const;

  friend bool operator==(const PrimeSet&, const PrimeSet&) = default;

 private:
  std::vector<Int> primes_;
};

/// x != 0 and v_q(x) = 0 for every prime q outside S.
bool is_s_unit(const PrimeSet& s, const Rat& x);

struct TwoTermSolution {
  Rat x, y;  // x + y = 1
  friend bool operator==(const TwoTermSolution&, const TwoTermSolution&) = default;
};

/// Every ordered solution of x + y = 1 in S-units with x = ±prod q^e, |e| <= bound,
/// sorted by (numerator, denominator) of x. Complete only relative to the bound.
std::vector<TwoTermSolution> solve_two_term(const PrimeSet& s, unsigned bound);
std::vector<TwoTermSolution> solve_two_term(const PrimeSet& s, unsigned bound, unsigned workers);

/// x-components of solve_two_term, in the same order.
std::vector<Rat> lambda_set(const PrimeSet& s, unsigned bound);

/// Orbits under the group generated by x -> 1-x and x -> 1/x. Each orbit is
/// sorted by (numerator, denominator); orbits are ordered by their first
/// element. Throws Error(NotClosed) if the input is not a union of orbits.
std::vector<std::vector<Rat>> s3_orbits(const std::vector<Rat>& values);

/// x, y, z and their differences are T-units for T = S ∪ {p}, and the
/// p-adic valuations of those six numbers are not all equal.
struct TripleWitness {
  Int p;
  Rat x, y, z;
  std::array<Valuation, 6> valuations = {Valuation::infinite(), Valuation::infinite(), Valuation::infinite(),
                                         Valuation::infinite(), Valuation::infinite(), Valuation::infinite()};

  friend bool operator==(const TripleWitness&, const TripleWitness&) = default;
};

/// Builds the witness record (valuations of x, y, z, x-y, x-z, y-z at p).
TripleWitness make_triple(const Int& p, Rat x, Rat y, Rat z);

/// Re-checks every witness invariant from scratch.
bool verify_triple(const PrimeSet& s, const TripleWitness& w);

struct ExceptionalPrime {
  Int p;
  TripleWitness witness;  // canonical choice
  std::vector<TripleWitness> all;  // every witness found, canonical order
};

/// For each odd prime p in `primes` (primes in S are skipped), searches triples
/// (s, t, 1) with s, t in lambda_set(S ∪ {p}, bound) and s - t a T-unit, scaled
/// to coprime integers. Reports only primes that admit a witness. The
/// canonical witness minimises max |entry|, then the sorted triple
/// lexicographically; signs are fixed so the entry of largest absolute value
/// is positive.
std::vector<ExceptionalPrime> exceptional_triple_search(const PrimeSet& s, const std::vector<Int>& primes,
                                                        unsigned bound);

/// Cross-check: every primitive integer triple of T-units ±prod q^e with
/// 0 <= e <= exponent_bound, in canonical form.
std::vector<TripleWitness> direct_triple_search(const PrimeSet& s, const Int& p, unsigned exponent_bound);

}  // namespace hypred::sunit
