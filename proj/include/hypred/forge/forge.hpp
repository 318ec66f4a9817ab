#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypred/arith/primality.hpp"
#include "hypred/arith/rational.hpp"
#include "hypred/curves/cluster.hpp"

namespace hypred::forge {

/// Integer polynomial, constant coefficient first.
using Poly = std::vector<Int>;

Int eval(const Poly& f, const Int& x);
/// The d-th cyclotomic polynomial. Throws Error(InvalidArgument) for d < 1.
Poly cyclotomic(unsigned d);

/// Offsets that miss at least one residue class modulo every prime q <= their count.
bool is_admissible(const std::vector<Int>& offsets);

struct AdmissibleTuple {
  int g = 0;
  std::vector<Int> offsets;  // 0, (2g)!, 2(2g)!, ..., (2g-2)(2g)!
  bool admissible = false;
};
AdmissibleTuple admissible_tuple(int g);

enum class FamilyKind { Tuple, Cyclotomic, Genus5 };
enum class Mode { Corrected, PaperExact };
std::string_view to_string(FamilyKind k);
std::string_view to_string(Mode m);
/// "corrected" or "paper-exact". Throws Error(Parse).
Mode parse_mode(std::string_view text);

/// Polynomials in the search variable that must all take prime values.
struct Constellation {
  FamilyKind kind = FamilyKind::Tuple;
  Mode mode = Mode::Corrected;
  int g = 0;
  Int alpha;  // (2g)! for the tuple and cyclotomic families, 7! for genus 5
  std::vector<Poly> members;  // ascending degree, the identity first
  std::vector<std::string> labels;

  std::vector<Int> values(const Int& x) const;
  /// Every member value is prime.
  bool holds(const Int& x) const;
};

/// x + h_i over the admissible tuple.
Constellation tuple_constellation(int g);
/// x and Phi_d(alpha x) for d in d_index_set(g).
Constellation cyclotomic_constellation(int g);
/// x, m - 1, m + 1, m^2 + 1, m^2 - 2m - 1 and, in corrected mode, m^2 + 2m - 1
/// (paper-exact mode uses m^2 - 2m + 1), with m = 5040 x.
Constellation genus5_constellation(Mode mode = Mode::Corrected);

struct SearchOptions {
  std::uint64_t limit = 0;
  unsigned workers = 0;  // 0 picks default_workers()
  std::uint64_t block_size = std::uint64_t{1} << 20;
  /// Read on start when it exists, rewritten atomically after every block.
  std::optional<std::filesystem::path> checkpoint;
  /// Stop after this many blocks in this call, leaving the checkpoint behind.
  std::optional<std::uint64_t> max_blocks;
};

struct SearchResult {
  std::optional<Int> witness;  // smallest prime x <= limit satisfying the constellation
  std::uint64_t scanned_upto = 0;
  bool finished = true;  // false when max_blocks interrupted the scan
};

/// Ascending scan over primes x <= limit in blocks, each block split across
/// workers. The answer does not depend on the worker count or on
/// interruptions. Throws Error(Checkpoint) for an unreadable or mismatched
/// checkpoint file.
SearchResult search(const Constellation& c, const SearchOptions& opt);

std::optional<Int> find_tuple_witness(int g, std::uint64_t limit);
std::optional<Int> find_cyclotomic_witness(int g, std::uint64_t limit);
SearchResult find_genus5_witness(const SearchOptions& opt);

struct FamilyWitness {
  FamilyKind kind = FamilyKind::Tuple;
  Mode mode = Mode::Corrected;
  int g = 0;
  Int parameter;  // p for the tuple family, k otherwise
  curves::RosenhainCurve curve;
  curves::BadPrimeSet bad;
  std::size_t budget = 0;  // allowed bad primes, the prime 2 included
  std::vector<arith::PrimalityCertificate> certificates;
  bool pass = false;

  std::size_t bad_count() const { return bad.count_with_two(); }
  /// Replays every certificate and recomputes the bad primes and the verdict.
  bool reverify() const;
};

/// Roots {0, p + h_i, last} with last = 2p + (2g-2)(2g)! (corrected) or
/// 2p + 2g (2g)! (paper-exact); budget 2g - 1 + pi(2g).
/// Throws Error(NotAConstellation) unless every p + h_i is prime.
FamilyWitness build_tuple_curve(int g, const Int& p, Mode mode = Mode::Corrected);

/// Roots {0} and +-(alpha k)^j for 0 <= j < g; budget upper_schinzel_exact(Q, g).
FamilyWitness build_cyclotomic_curve(int g, const Int& k);

/// Eleven roots {0, +-m^2 uv, +-m uv, +-uv, +-m u^2, +-m v^2} with m = 5040 k,
/// u = m - 1, v = m + 1; budget 10.
FamilyWitness build_genus5_curve(const Int& k);

/// Root lists of the families without any primality requirement.
std::vector<Int> tuple_roots(int g, const Int& p, Mode mode);
std::vector<Int> cyclotomic_roots(int g, const Int& k);
std::vector<Int> genus5_roots(const Int& m);

struct OmegaResult {
  std::uint64_t k = 0;
  unsigned omega = 0;
};
/// k <= limit minimizing the number of distinct primes of
/// prod (k + h_i) * (2k + (2g-2)(2g)!), smallest k on ties.
OmegaResult low_omega_search(int g, std::uint64_t limit);
unsigned omega_of(int g, std::uint64_t k);

}  // namespace hypred::forge
