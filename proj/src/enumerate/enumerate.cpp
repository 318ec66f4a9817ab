#include "hypred/enumerate/enumerate.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "hypred/curves/mobius.hpp"
#include "hypred/error.hpp"
#include "hypred/parallel.hpp"

namespace hypred::enumerate {

namespace {

struct Found {
  std::uint64_t ordinal;  // position in the depth-first order of the subtree
  std::vector<std::size_t> clique;
};

struct Subtree {
  std::uint64_t nodes = 0;
  bool truncated = false;
  std::vector<Found> found;
};

// Cliques of size k that start at vertex `first`, each extension counted as one examined subset.
class CliqueSearch {
 public:
  CliqueSearch(const std::vector<std::vector<bool>>& adj, std::size_t k, std::uint64_t cap)
      : adj_(adj), k_(k), cap_(cap) {}

  Subtree run(std::size_t first) {
    Subtree out;
    std::vector<std::size_t> chosen = {first};
    std::vector<std::size_t> cand;
    for (std::size_t j = first + 1; j < adj_.size(); ++j) {
      if (adj_[first][j]) cand.push_back(j);
    }
    out.nodes = 1;
    if (k_ == 1) {
      out.found.push_back({1, chosen});
    } else {
      extend(chosen, cand, out);
    }
    return out;
  }

 private:
  void extend(std::vector<std::size_t>& chosen, const std::vector<std::size_t>& cand, Subtree& out) {
    if (chosen.size() + cand.size() < k_) return;
    for (std::size_t a = 0; a < cand.size(); ++a) {
      if (out.nodes >= cap_) {
        out.truncated = true;
        return;
      }
      ++out.nodes;
      chosen.push_back(cand[a]);
      if (chosen.size() == k_) {
        out.found.push_back({out.nodes, chosen});
      } else {
        std::vector<std::size_t> next;
        for (std::size_t b = a + 1; b < cand.size(); ++b) {
          if (adj_[cand[a]][cand[b]]) next.push_back(cand[b]);
        }
        extend(chosen, next, out);
      }
      chosen.pop_back();
      if (out.truncated) return;
    }
  }

  const std::vector<std::vector<bool>>& adj_;
  std::size_t k_;
  std::uint64_t cap_;
};

bool int_vec_less(const std::vector<Int>& a, const std::vector<Int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const Int& x, const Int& y) { return cmp(x, y) < 0; });
}

}  // namespace

Enumeration enumerate_genus_g(const sunit::PrimeSet& s, int g, unsigned bound, std::uint64_t cap) {
  return enumerate_genus_g(s, g, bound, cap, default_workers());
}

Enumeration enumerate_genus_g(const sunit::PrimeSet& s, int g, unsigned bound, std::uint64_t cap, unsigned workers) {
  if (!s.contains(Int(2))) throw Error(Errc::MissingEvenPrime, "the prime set must contain 2");
  if (g < 2) throw Error(Errc::InvalidArgument, "genus must be at least 2");
  Enumeration result;
  const std::vector<Rat> lam = sunit::lambda_set(s, bound);
  result.lambda_count = lam.size();
  const auto k = static_cast<std::size_t>(2 * g - 1);

  const std::size_t n = lam.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) adj[i][j] = adj[j][i] = sunit::is_s_unit(s, lam[i] - lam[j]);
  }

  std::vector<Subtree> trees(n);
  workers = std::max(1u, workers);
  run_workers(workers, [&](unsigned w) {
    CliqueSearch search(adj, k, cap);
    // strided so that the heavy low-index subtrees spread across workers
    for (std::size_t i = w; i < n; i += workers) trees[i] = search.run(i);
  });

  // Merge in depth-first order so the cap cuts the same prefix for any worker count.
  std::vector<std::vector<std::size_t>> cliques;
  std::uint64_t offset = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Subtree& t = trees[i];
    for (const Found& f : t.found) {
      if (offset + f.ordinal <= cap) cliques.push_back(f.clique);
    }
    offset += t.nodes;
    if (t.truncated || offset > cap) {
      result.exhaustive = false;
      offset = std::min(offset, cap);
      break;
    }
  }
  result.subsets_examined = offset;
  result.root_sets = cliques.size();

  std::map<std::vector<Int>, IsoClass, decltype(&int_vec_less)> by_key(&int_vec_less);
  for (const auto& c : cliques) {
    std::vector<Rat> roots = {Rat(0), Rat(1)};
    for (std::size_t i : c) roots.push_back(lam[i]);
    std::sort(roots.begin(), roots.end());
    std::vector<Int> key = curves::canonical_roots(roots);
    auto [it, fresh] = by_key.try_emplace(key);
    if (fresh) it->second.canonical = key;
    it->second.members.push_back(std::move(roots));
  }

  for (auto& [key, cls] : by_key) {
    std::sort(cls.members.begin(), cls.members.end());
    const std::vector<Rat> rep = cls.canonical_rats();
    for (const auto& m : cls.members) {
      if (!curves::pgl2_equivalent(rep, m)) {
        throw Error(Errc::Invariant, "class member not equivalent to its representative");
      }
    }
    const curves::RosenhainCurve curve(g, Rat(1), rep);
    cls.bad_primes = curves::bad_odd_primes(curve);
    for (const Int& p : cls.bad_primes.primes) {
      if (!s.contains(p)) throw Error(Errc::Invariant, "bad prime " + p.get_str() + " outside S");
    }
    cls.discriminant = curves::model_discriminant(curve);
    result.classes.push_back(std::move(cls));
  }
  return result;
}

std::vector<IsoClass> enumerate_genus2(const sunit::PrimeSet& s, unsigned bound) {
  return enumerate_genus_g(s, 2, bound, std::numeric_limits<std::uint64_t>::max()).classes;
}

}  // namespace hypred::enumerate
