#pragma once

#include <cstdint>
#include <vector>

#include "hypred/curves/cluster.hpp"
#include "hypred/sunit/sunit.hpp"

namespace hypred::enumerate {

/// One geometric isomorphism class of root sets.
struct IsoClass {
  std::vector<Int> canonical;  // class representative, see curves::canonical_roots
  std::vector<std::vector<Rat>> members;  // every discovered root set, sorted
  curves::BadPrimeSet bad_primes;  // of the representative
  Rat discriminant;  // model discriminant of the representative with c = 1

  std::vector<Rat> canonical_rats() const { return {canonical.begin(), canonical.end()}; }
};

struct Enumeration {
  std::vector<IsoClass> classes;  // ordered by representative
  bool exhaustive = true;  // false when the subset cap was reached
  std::uint64_t subsets_examined = 0;
  std::size_t lambda_count = 0;
  std::size_t root_sets = 0;  // candidate root sets before deduplication
};

/// Normalized root sets {0, 1, l_1, ..., l_{2g-1}} with every l_i in
/// lambda_set(S, bound) and all l_i - l_j S-units, grouped into PGL2 classes.
/// `cap` bounds the number of partial subsets examined by the clique search.
/// Throws Error(MissingEvenPrime) if 2 is not in S.
Enumeration enumerate_genus_g(const sunit::PrimeSet& s, int g, unsigned bound, std::uint64_t cap);
Enumeration enumerate_genus_g(const sunit::PrimeSet& s, int g, unsigned bound, std::uint64_t cap, unsigned workers);

/// enumerate_genus_g with g = 2 and an effectively unbounded cap.
std::vector<IsoClass> enumerate_genus2(const sunit::PrimeSet& s, unsigned bound);

}  // namespace hypred::enumerate
