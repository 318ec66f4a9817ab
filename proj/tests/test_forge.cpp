#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include <unistd.h>

#include <json.hpp>

#include "doctest.h"
#include "hypred/arith/primes.hpp"
#include "hypred/bounds/bounds.hpp"
#include "hypred/error.hpp"
#include "hypred/forge/forge.hpp"

using namespace hypred;
using namespace hypred::forge;
namespace fs = std::filesystem;

namespace {

nlohmann::json golden() {
  std::ifstream in(std::string(HYPRED_GOLDEN_DIR) + "/forge_witnesses.json");
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  return j;
}

std::vector<Int> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

template <class F>
Errc error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::Invariant;
}

// trial-division count of distinct primes
unsigned naive_omega(std::vector<std::uint64_t> vals) {
  std::set<std::uint64_t> ps;
  for (std::uint64_t v : vals) {
    for (std::uint64_t q = 2; q * q <= v; ++q) {
      while (v % q == 0) {
        ps.insert(q);
        v /= q;
      }
    }
    if (v > 1) ps.insert(v);
  }
  return static_cast<unsigned>(ps.size());
}

// strip every prime shared with n; what is left must be a power of two
bool odd_support_within(Int d, const Int& n) {
  d = abs(d);
  while (true) {
    Int g = gcd(d, n);
    if (g == 1) break;
    d /= g;
  }
  while (d % 2 == 0) d /= 2;
  return d == 1;
}

fs::path temp_path(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("hypred_" + std::to_string(::getpid()) + "_" + name);
  fs::remove(p);
  return p;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic(1) == ints({-1, 1}));
  CHECK(cyclotomic(2) == ints({1, 1}));
  CHECK(cyclotomic(4) == ints({1, 0, 1}));
  CHECK(cyclotomic(6) == ints({1, -1, 1}));
  CHECK(cyclotomic(12) == ints({1, 0, -1, 0, 1}));
  // x^d - 1 is the product of Phi_e over e | d, checked by evaluation
  for (unsigned d = 1; d <= 40; ++d) {
    for (long x : {-3L, 2L, 5L, 11L}) {
      Int prod = 1;
      for (unsigned e = 1; e <= d; ++e) {
        if (d % e == 0) prod *= eval(cyclotomic(e), x);
      }
      Int xd;
      mpz_pow_ui(xd.get_mpz_t(), Int(x).get_mpz_t(), d);
      REQUIRE(prod == xd - 1);
    }
    REQUIRE(cyclotomic(d).size() - 1 == arith::totient(d).get_ui());
  }
  CHECK_THROWS_AS(cyclotomic(0), Error);
}

TEST_CASE("admissible tuples") {
  CHECK(admissible_tuple(2).offsets == ints({0, 24, 48}));
  CHECK(admissible_tuple(3).offsets == ints({0, 720, 1440, 2160, 2880}));
  for (int g = 2; g <= 8; ++g) {
    const auto t = admissible_tuple(g);
    CHECK(t.admissible);
    CHECK(t.offsets.size() == static_cast<std::size_t>(2 * g - 1));
    for (std::uint64_t q : arith::primes_upto(2 * g)) {
      for (const Int& h : t.offsets) CHECK(h % static_cast<unsigned long>(q) == 0);
    }
  }
  CHECK_FALSE(is_admissible(ints({0, 1})));
  CHECK_FALSE(is_admissible(ints({0, 2, 4})));
  CHECK(is_admissible(ints({0, 2, 6})));
}

TEST_CASE("tuple witnesses") {
  const auto gold = golden();
  CHECK(find_tuple_witness(2, 10000) == Int(5));
  CHECK_FALSE(find_tuple_witness(2, 4).has_value());
  for (int g : {3, 4}) {
    const auto w = find_tuple_witness(g, 1000000);
    REQUIRE(w.has_value());
    CHECK(w->get_str() == gold["tuple"][std::to_string(g)].get<std::string>());
    CHECK(tuple_constellation(g).holds(*w));
  }
}

TEST_CASE("tuple family, corrected and paper-exact") {
  const FamilyWitness c = build_tuple_curve(2, Int(5), Mode::Corrected);
  CHECK(c.curve.roots() == std::vector<Rat>{0, 5, 29, 53, 58});
  CHECK(c.bad.primes == ints({3, 5, 29, 53}));
  CHECK(c.budget == 5);
  CHECK(c.bad_count() == 5);
  CHECK(c.pass);
  CHECK(c.certificates.size() == 3);
  CHECK(c.reverify());

  const FamilyWitness e = build_tuple_curve(2, Int(5), Mode::PaperExact);
  CHECK(e.curve.roots() == std::vector<Rat>{0, 5, 29, 53, 106});
  for (long p : {3, 5, 7, 11, 29, 53, 101}) CHECK(e.bad.contains(Int(p)));
  CHECK(e.bad_count() == 8);
  CHECK_FALSE(e.pass);
  CHECK(e.reverify());

  CHECK(error_of([] { build_tuple_curve(2, Int(7)); }) == Errc::NotAConstellation);
  CHECK(error_of([] { build_tuple_curve(2, Int(9)); }) == Errc::NotAConstellation);
}

TEST_CASE("corrected tuple differences stay inside the tuple") {
  std::mt19937_64 rng(11);
  for (int g : {2, 3, 4}) {
    const Int fact2 = 2 * arith::factorial(static_cast<unsigned>(2 * g));
    const auto offsets = admissible_tuple(g).offsets;
    for (int trial = 0; trial < 100; ++trial) {
      const Int p = Int(static_cast<unsigned long>(rng() % 1000000000ULL + 1));
      std::vector<Int> members;
      for (const Int& h : offsets) members.push_back(p + h);
      const auto roots = tuple_roots(g, p, Mode::Corrected);
      for (std::size_t i = 0; i < roots.size(); ++i) {
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
          const Int d = abs(roots[j] - roots[i]);
          bool ok = odd_support_within(d, fact2);
          for (const Int& t : members) ok = ok || (d % t == 0 && odd_support_within(d / t, fact2));
          REQUIRE(ok);
        }
      }
    }
  }
}

TEST_CASE("paper-exact last root leaves the tuple") {
  for (int g = 2; g <= 6; ++g) {
    const Int f = arith::factorial(static_cast<unsigned>(2 * g));
    const auto offsets = admissible_tuple(g).offsets;
    const std::set<Int> offs(offsets.begin(), offsets.end());
    // last - (p + h_1) = p + 2g (2g)!,  last - (p + h_2) = p + (2g-1)(2g)!
    CHECK(offs.count(2 * g * f) == 0);
    CHECK(offs.count((2 * g - 1) * f) == 0);
    const Int p = 1000003;
    const auto roots = tuple_roots(g, p, Mode::PaperExact);
    const Int last = 2 * p + 2 * g * f;
    CHECK(roots.back() == last);
    CHECK(last - (p + offsets[0]) == p + 2 * g * f);
    CHECK(last - (p + offsets[1]) == p + (2 * g - 1) * f);
    // the corrected last root pairs every tuple member with another one
    const auto fixed = tuple_roots(g, p, Mode::Corrected);
    for (const Int& h : offsets) CHECK(offs.count(fixed.back() - (p + h) - p) == 1);
  }
}

TEST_CASE("cyclotomic family") {
  const auto gold = golden();
  CHECK(find_cyclotomic_witness(2, 100000) == Int(gold["cyclotomic"]["2"].get<std::string>()));
  CHECK_FALSE(find_cyclotomic_witness(3, 1).has_value());
  CHECK_FALSE(find_cyclotomic_witness(2, 1).has_value());
  const auto k3 = find_cyclotomic_witness(3, 10000000);
  REQUIRE(k3.has_value());
  CHECK(k3->get_str() == gold["cyclotomic"]["3"].get<std::string>());

  const FamilyWitness w3 = build_cyclotomic_curve(3, *k3);
  CHECK(w3.curve.roots().size() == 7);
  CHECK(w3.budget == 7);
  CHECK(w3.budget == bounds::upper_schinzel_exact(bounds::FieldDescriptor::rationals(), 3));
  CHECK(w3.pass);
  CHECK(w3.reverify());

  const Int k2(gold["cyclotomic"]["2"].get<std::string>());
  const FamilyWitness w2 = build_cyclotomic_curve(2, k2);
  const Int m = 24 * k2;
  CHECK(w2.curve.roots() == std::vector<Rat>{Rat(-m), -1, 0, 1, Rat(m)});
  for (const Int& p : w2.bad.primes) CHECK((p == 3 || p == m - 1 || p == m + 1));
  CHECK(w2.bad_count() <= 5);
  CHECK(w2.pass);

  CHECK(error_of([] { build_cyclotomic_curve(3, Int(1)); }) == Errc::NotAConstellation);
}

TEST_CASE("genus 5 support identities") {
  std::mt19937_64 rng(5040);
  for (int trial = 0; trial < 1000; ++trial) {
    const Int m = 5040 * Int(static_cast<unsigned long>(rng() % 1000000000000ULL + 1));
    const Int n = m * (m * m - 1) * (m * m + 1) * (m * m - 2 * m - 1) * (m * m + 2 * m - 1) * 105;
    const auto roots = genus5_roots(m);
    REQUIRE(roots.size() == 11);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      for (std::size_t j = i + 1; j < roots.size(); ++j) REQUIRE(odd_support_within(roots[j] - roots[i], n));
    }
    const Int u = m - 1, v = m + 1;
    REQUIRE(m * u * u - m * v * v == -4 * m * m);
    REQUIRE(m * (u * u + v * v) == 2 * m * (m * m + 1));
    REQUIRE(m * v - u == m * m + 1);
    REQUIRE(m * v + u == m * m + 2 * m - 1);
    REQUIRE(m * u - v == m * m - 2 * m - 1);
  }
}

TEST_CASE("the literal sixth genus 5 condition is a square") {
  const Constellation exact = genus5_constellation(Mode::PaperExact);
  for (long m = 3; m <= 20000; ++m) {
    const Int sq = Int(m - 1) * (m - 1);
    REQUIRE_FALSE(arith::is_probable_prime(sq));
  }
  for (long k = 1; k <= 200; ++k) {
    const Int m = 5040 * Int(k);
    REQUIRE(eval(exact.members.back(), Int(k)) == (m - 1) * (m - 1));
    REQUIRE_FALSE(exact.holds(Int(k)));
  }
}

TEST_CASE("genus 5 witness") {
  const auto gold = golden();
  SearchOptions opt;
  opt.limit = 1;
  CHECK_FALSE(find_genus5_witness(opt).witness.has_value());
  opt.limit = 100000;
  const SearchResult r = find_genus5_witness(opt);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->get_str() == gold["genus5"].get<std::string>());

  const FamilyWitness w = build_genus5_curve(*r.witness);
  CHECK(w.g == 5);
  CHECK(w.curve.genus() == 5);
  CHECK(w.certificates.size() == 6);
  CHECK(w.budget == 10);
  CHECK(w.pass);
  CHECK(w.bad_count() <= 10);
  const Int k = *r.witness, m = 5040 * k;
  const std::set<Int> allowed = {3, 5, 7, k, m - 1, m + 1, m * m + 1, m * m - 2 * m - 1, m * m + 2 * m - 1};
  for (const Int& p : w.bad.primes) CHECK(allowed.count(p) == 1);
  CHECK(w.reverify());
  CHECK(error_of([] { build_genus5_curve(Int(2)); }) == Errc::NotAConstellation);
}

TEST_CASE("stale witnesses do not reverify") {
  FamilyWitness w = build_tuple_curve(2, Int(5));
  REQUIRE(w.reverify());
  FamilyWitness flipped = w;
  flipped.pass = false;
  CHECK_FALSE(flipped.reverify());
  FamilyWitness dropped = w;
  dropped.bad.primes.pop_back();
  CHECK_FALSE(dropped.reverify());
  FamilyWitness forged = w;
  forged.certificates[1].n += 2;
  CHECK_FALSE(forged.reverify());
  FamilyWitness moved = w;
  moved.parameter = 11;
  CHECK_FALSE(moved.reverify());
}

TEST_CASE("low omega search") {
  const auto gold = golden();
  const OmegaResult r = low_omega_search(2, 10000);
  CHECK(r.k == gold["low_omega"]["g2_limit10000"][0].get<std::uint64_t>());
  CHECK(r.omega == gold["low_omega"]["g2_limit10000"][1].get<unsigned>());
  CHECK(r.omega <= 5);
  const OmegaResult small = low_omega_search(2, 4);
  CHECK(small.k == 1);
  CHECK(small.omega == 3);
  // against trial division
  OmegaResult best{0, 1000};
  for (std::uint64_t k = 1; k <= 2000; ++k) {
    const unsigned w = naive_omega({k, k + 24, k + 48, 2 * k + 48});
    REQUIRE(omega_of(2, k) == w);
    if (w < best.omega) best = {k, w};
  }
  const OmegaResult r2000 = low_omega_search(2, 2000);
  CHECK(r2000.k == best.k);
  CHECK(r2000.omega == best.omega);
  for (int g : {3, 4}) CHECK(low_omega_search(g, 500).omega <= static_cast<unsigned>(2 * g + 1));
}

TEST_CASE("search is independent of workers and block size") {
  const Constellation c = cyclotomic_constellation(3);
  std::optional<Int> first;
  for (unsigned workers : {1u, 2u, 4u}) {
    for (std::uint64_t block : {7ULL, 64ULL, 1ULL << 20}) {
      SearchOptions opt;
      opt.limit = 10000000;
      opt.workers = workers;
      opt.block_size = block;
      const SearchResult r = search(c, opt);
      REQUIRE(r.witness.has_value());
      if (!first) first = r.witness;
      CHECK(*r.witness == *first);
      CHECK(r.scanned_upto == r.witness->get_ui());
    }
  }
  SearchOptions none;
  none.limit = 18;
  const SearchResult r = search(c, none);
  CHECK_FALSE(r.witness.has_value());
  CHECK(r.finished);
  CHECK(r.scanned_upto == 18);
}

TEST_CASE("checkpoint interruption and resume") {
  const Constellation c = tuple_constellation(4);
  const fs::path cp = temp_path("tuple4.json");
  SearchOptions opt;
  opt.limit = 1000000;
  opt.block_size = 1000;
  opt.workers = 3;
  opt.checkpoint = cp;
  opt.max_blocks = 3;
  SearchResult r = search(c, opt);
  CHECK_FALSE(r.finished);
  CHECK_FALSE(r.witness.has_value());
  CHECK(r.scanned_upto == 3000);
  {
    std::ifstream in(cp);
    nlohmann::json j;
    in >> j;
    CHECK(j["kind"] == "tuple");
    CHECK(j["g"] == 4);
    CHECK(j["alpha"] == "40320");
    CHECK(j["scanned_upto"] == 3000);
    CHECK(j["witnesses"].empty());
    CHECK(j["version"] == 1);
  }
  int rounds = 0;
  while (r.finished == false && rounds < 1000) {
    opt.workers = 1 + static_cast<unsigned>(rounds % 4);
    r = search(c, opt);
    ++rounds;
  }
  REQUIRE(r.witness.has_value());
  CHECK(*r.witness == *find_tuple_witness(4, 1000000));
  CHECK_FALSE(fs::exists(cp.string() + ".tmp"));
  // a finished checkpoint answers immediately
  opt.max_blocks = 0;
  CHECK(search(c, opt).witness == r.witness);
  // and a smaller limit than the stored witness means none below it
  opt.limit = 100;
  CHECK_FALSE(search(c, opt).witness.has_value());
  fs::remove(cp);
}

TEST_CASE("mismatched or corrupt checkpoints are rejected") {
  const fs::path cp = temp_path("mismatch.json");
  SearchOptions opt;
  opt.limit = 100000;
  opt.block_size = 100;
  opt.checkpoint = cp;
  opt.max_blocks = 1;
  search(tuple_constellation(3), opt);
  REQUIRE(fs::exists(cp));
  CHECK(error_of([&] { search(tuple_constellation(4), opt); }) == Errc::Checkpoint);
  CHECK(error_of([&] { search(cyclotomic_constellation(3), opt); }) == Errc::Checkpoint);
  {
    std::ofstream out(cp, std::ios::trunc);
    out << "{\"kind\": \"tuple\", \"g\": 3";
  }
  CHECK(error_of([&] { search(tuple_constellation(3), opt); }) == Errc::Checkpoint);
  {
    std::ofstream out(cp, std::ios::trunc);
    out << R"({"kind":"tuple","g":3,"alpha":"720","scanned_upto":0,"witnesses":[],"version":2})";
  }
  CHECK(error_of([&] { search(tuple_constellation(3), opt); }) == Errc::Checkpoint);
  fs::remove(cp);
}
