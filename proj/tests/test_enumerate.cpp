#include <algorithm>
#include <chrono>
#include <set>

#include "doctest.h"
#include "hypred/curves/mobius.hpp"
#include "hypred/enumerate/enumerate.hpp"
#include "hypred/error.hpp"

using namespace hypred;
using namespace hypred::enumerate;
using sunit::PrimeSet;

namespace {

PrimeSet S(std::initializer_list<long> ps) {
  std::vector<Int> v;
  for (long p : ps) v.push_back(Int(p));
  return PrimeSet(v);
}

std::vector<Rat> ints(std::initializer_list<long> xs) {
  std::vector<Rat> out;
  for (long x : xs) out.push_back(Rat(x));
  return out;
}

// plain triple loop over 3-subsets of the lambda set
std::set<std::vector<Rat>> brute_root_sets(const PrimeSet& s, unsigned bound) {
  const auto lam = sunit::lambda_set(s, bound);
  std::set<std::vector<Rat>> out;
  for (std::size_t a = 0; a < lam.size(); ++a) {
    for (std::size_t b = a + 1; b < lam.size(); ++b) {
      for (std::size_t c = b + 1; c < lam.size(); ++c) {
        if (!sunit::is_s_unit(s, lam[a] - lam[b]) || !sunit::is_s_unit(s, lam[a] - lam[c]) ||
            !sunit::is_s_unit(s, lam[b] - lam[c])) {
          continue;
        }
        std::vector<Rat> r = {Rat(0), Rat(1), lam[a], lam[b], lam[c]};
        std::sort(r.begin(), r.end());
        out.insert(r);
      }
    }
  }
  return out;
}

std::set<std::vector<Rat>> all_members(const std::vector<IsoClass>& classes) {
  std::set<std::vector<Rat>> out;
  for (const auto& c : classes) out.insert(c.members.begin(), c.members.end());
  return out;
}

}  // namespace

TEST_CASE("genus 2 over {2,3}") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto classes = enumerate_genus2(S({2, 3}), 40);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 10.0);
  REQUIRE(classes.size() == 2);
  const auto c1 = ints({0, 1, 2, 3, 4});
  const auto c2 = ints({0, 2, 3, 4, 6});
  int hit1 = 0, hit2 = 0;
  for (const auto& c : classes) {
    hit1 += curves::pgl2_equivalent(c.canonical_rats(), c1).has_value();
    hit2 += curves::pgl2_equivalent(c.canonical_rats(), c2).has_value();
  }
  CHECK(hit1 == 1);
  CHECK(hit2 == 1);
  CHECK(classes[0].canonical == std::vector<Int>{0, 1, 2, 3, 4});
  CHECK(classes[0].discriminant == Rat(Int(1) << 18) * Rat(81));
  for (const auto& c : classes) {
    CHECK(c.bad_primes.primes == std::vector<Int>{3});
  }
  // {0,1,3/2,2,3} is found and lands in the class of {0,2,3,4,6}
  const std::vector<Rat> normalized_c2 = {Rat(0), Rat(1), Rat(3, 2), Rat(2), Rat(3)};
  bool seen = false;
  for (const auto& c : classes) {
    if (std::find(c.members.begin(), c.members.end(), normalized_c2) != c.members.end()) {
      seen = true;
      CHECK(curves::pgl2_equivalent(c.canonical_rats(), c2));
    }
  }
  CHECK(seen);
}

TEST_CASE("root sets match a brute-force subset scan") {
  for (const PrimeSet& s : {S({2}), S({2, 3}), S({2, 5}), S({2, 3, 5})}) {
    const unsigned bound = s.size() > 2 ? 8 : 40;
    const Enumeration e = enumerate_genus_g(s, 2, bound, 100000000);
    CHECK(e.exhaustive);
    const auto expect = brute_root_sets(s, bound);
    CHECK(all_members(e.classes) == expect);
    CHECK(e.root_sets == expect.size());
  }
}

TEST_CASE("genus 2 over {2} is empty") {
  CHECK(enumerate_genus2(S({2}), 40).empty());
  CHECK(sunit::lambda_set(S({2}), 40).size() == 3);
}

TEST_CASE("genus 2 is monotone in the bound and in S") {
  const auto big = enumerate_genus2(S({2, 3}), 40);
  std::set<std::vector<Int>> keys;
  for (const auto& c : big) keys.insert(c.canonical);
  for (unsigned b = 1; b <= 6; ++b) {
    for (const auto& c : enumerate_genus2(S({2, 3}), b)) CHECK(keys.count(c.canonical) == 1);
  }
  const auto wider = enumerate_genus2(S({2, 3, 5}), 8);
  std::set<std::vector<Int>> wider_keys;
  for (const auto& c : wider) wider_keys.insert(c.canonical);
  for (const auto& c : enumerate_genus2(S({2, 3}), 8)) CHECK(wider_keys.count(c.canonical) == 1);
  CHECK(wider.size() > 2);
}

TEST_CASE("soundness, dedup and symmetry saturation") {
  for (const PrimeSet& s : {S({2, 3}), S({2, 3, 5})}) {
    // saturation needs a lambda set closed under x -> 1-x, 1/x; {2,3,5} closes from bound 8
    const unsigned bound = s.size() > 2 ? 8 : 40;
    REQUIRE_NOTHROW(sunit::s3_orbits(sunit::lambda_set(s, bound)));
    const auto classes = enumerate_genus2(s, bound);
    for (std::size_t i = 0; i < classes.size(); ++i) {
      for (std::size_t j = i + 1; j < classes.size(); ++j) {
        REQUIRE_FALSE(curves::pgl2_equivalent(classes[i].canonical_rats(), classes[j].canonical_rats()));
      }
      for (const auto& m : classes[i].members) {
        for (const Int& p : curves::bad_odd_primes(m).primes) REQUIRE(s.contains(p));
        REQUIRE(curves::pgl2_equivalent(classes[i].canonical_rats(), m));
        REQUIRE(curves::canonical_roots(m) == classes[i].canonical);
      }
    }
    // moving any ordered pair of roots to (0, 1) gives another discovered set
    const auto members = all_members(classes);
    for (const auto& m : members) {
      for (const Rat& a : m) {
        for (const Rat& b : m) {
          if (a == b) continue;
          std::vector<Rat> moved;
          for (const Rat& r : m) moved.push_back((r - a) / (b - a));
          std::sort(moved.begin(), moved.end());
          REQUIRE(members.count(moved) == 1);
        }
      }
    }
  }
}

TEST_CASE("higher genus") {
  const Enumeration e2 = enumerate_genus_g(S({2, 3}), 2, 40, 1000000);
  CHECK(e2.exhaustive);
  REQUIRE(e2.classes.size() == 2);
  const auto g2 = enumerate_genus2(S({2, 3}), 40);
  CHECK(e2.classes[0].canonical == g2[0].canonical);
  CHECK(e2.classes[1].canonical == g2[1].canonical);

  const Enumeration e3 = enumerate_genus_g(S({2}), 3, 40, 1000000);
  CHECK(e3.classes.empty());
  CHECK(e3.exhaustive);

  const Enumeration e10 = enumerate_genus_g(S({2, 3}), 10, 40, 1000000);
  CHECK(e10.classes.empty());
  CHECK(e10.exhaustive);
  CHECK(e10.lambda_count == 21);

  // genus 3 over {2,3,5}: every class is sound
  const Enumeration e35 = enumerate_genus_g(S({2, 3, 5}), 3, 6, 1000000);
  CHECK(e35.exhaustive);
  for (const auto& c : e35.classes) {
    for (const Int& p : c.bad_primes.primes) CHECK((p == 3 || p == 5));
    CHECK(c.canonical.size() == 7);
  }
}

TEST_CASE("cap truncates deterministically") {
  const PrimeSet s = S({2, 3, 5});
  const Enumeration full = enumerate_genus_g(s, 2, 6, 100000000, 1);
  CHECK(full.exhaustive);
  for (std::uint64_t cap : {1ULL, 10ULL, 57ULL, 400ULL}) {
    const Enumeration a = enumerate_genus_g(s, 2, 6, cap, 1);
    const Enumeration b = enumerate_genus_g(s, 2, 6, cap, 4);
    CHECK_FALSE(a.exhaustive);
    CHECK(a.subsets_examined == cap);
    CHECK(a.subsets_examined == b.subsets_examined);
    CHECK(a.root_sets == b.root_sets);
    CHECK(all_members(a.classes) == all_members(b.classes));
    CHECK(a.root_sets <= full.root_sets);
  }
  const Enumeration exact = enumerate_genus_g(s, 2, 6, full.subsets_examined, 3);
  CHECK(exact.exhaustive);
  CHECK(exact.root_sets == full.root_sets);
}

TEST_CASE("missing even prime") {
  try {
    enumerate_genus2(S({3}), 40);
    FAIL("expected MissingEvenPrime");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingEvenPrime);
  }
  CHECK_THROWS_AS(enumerate_genus_g(S({3, 5}), 3, 10, 100), Error);
}
