#include "hypred/sunit/sunit.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "hypred/arith/primality.hpp"
#include "hypred/error.hpp"
#include "hypred/parallel.hpp"

namespace hypred::sunit {

namespace {

bool int_less(const Int& a, const Int& b) { return cmp(a, b) < 0; }

// Strips every prime of S from |v|; true iff nothing else remains.
bool smooth_over(const std::vector<Int>& primes, Int v) {
  if (v == 0) return false;
  if (v < 0) v = -v;
  for (const Int& q : primes) {
    if (v == 1) return true;
    if (mpz_divisible_p(v.get_mpz_t(), q.get_mpz_t())) mpz_remove(v.get_mpz_t(), v.get_mpz_t(), q.get_mpz_t());
  }
  return v == 1;
}

Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

using Triple = std::array<Int, 3>;

bool triple_less(const Triple& a, const Triple& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), int_less);
}

Int max_abs(const Triple& t) {
  Int m = 0;
  for (const Int& v : t) m = std::max(m, Int(abs(v)), int_less);
  return m;
}

// Coprime integers, sorted, with the largest |entry| positive (ties: lexicographically smaller).
Triple normalize(const Rat& x, const Rat& y, const Rat& z) {
  const Int den = lcm(lcm(x.den(), y.den()), z.den());
  Triple t = {x.num() * (den / x.den()), y.num() * (den / y.den()), z.num() * (den / z.den())};
  const Int g = gcd(gcd(t[0], t[1]), t[2]);
  for (Int& v : t) v /= g;
  const Int m = max_abs(t);
  std::vector<Triple> options;
  for (int sign : {1, -1}) {
    Triple c = t;
    if (sign < 0) {
      for (Int& v : c) v = -v;
    }
    if (std::none_of(c.begin(), c.end(), [&](const Int& v) { return v == m; })) continue;
    std::sort(c.begin(), c.end(), int_less);
    options.push_back(c);
  }
  return *std::min_element(options.begin(), options.end(), triple_less);
}

bool canonical_less(const Triple& a, const Triple& b) {
  const int c = cmp(max_abs(a), max_abs(b));
  if (c != 0) return c < 0;
  return triple_less(a, b);
}

struct CanonicalLess {
  bool operator()(const Triple& a, const Triple& b) const { return canonical_less(a, b); }
};

bool valuations_vary(const std::array<Valuation, 6>& v) {
  return std::any_of(v.begin(), v.end(), [&](const Valuation& w) { return w != v[0]; });
}

TripleWitness witness_from(const Int& p, const Triple& t) { return make_triple(p, Rat(t[0]), Rat(t[1]), Rat(t[2])); }

}  // namespace

PrimeSet::PrimeSet(std::vector<Int> primes) : primes_(std::move(primes)) {
  for (const Int& p : primes_) {
    if (p < 2 || !arith::is_probable_prime(p)) throw Error(Errc::NonPrimeModulus, p.get_str() + " is not prime");
  }
  std::sort(primes_.begin(), primes_.end(), int_less);
  primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

PrimeSet PrimeSet::parse(const std::string& text) {
  std::vector<Int> out;
  std::size_t start = 0;
  const auto first = text.find_first_not_of(" \t{}");
  if (first == std::string::npos) return PrimeSet();
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    std::string item = text.substr(start, end - start);
    std::erase_if(item, [](char ch) { return ch == ' ' || ch == '\t' || ch == '{' || ch == '}'; });
    out.push_back(parse_int(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return PrimeSet(std::move(out));
}

bool PrimeSet::contains(const Int& p) const { return std::binary_search(primes_.begin(), primes_.end(), p, int_less); }

PrimeSet PrimeSet::with(const Int& p) const {
  std::vector<Int> v = primes_;
  v.push_back(p);
  return PrimeSet(std::move(v));
}

std::string PrimeSet::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (i) s += ',';
    s += primes_[i].get_str();
  }
  return s + "}";
}

bool is_s_unit(const PrimeSet& s, const Rat& x) {
  if (x.is_zero()) return false;
  return smooth_over(s.primes(), x.num()) && smooth_over(s.primes(), x.den());
}

std::vector<TwoTermSolution> solve_two_term(const PrimeSet& s, unsigned bound) {
  return solve_two_term(s, bound, default_workers());
}

std::vector<TwoTermSolution> solve_two_term(const PrimeSet& s, unsigned bound, unsigned workers) {
  if (bound < 1) throw Error(Errc::InvalidArgument, "exponent bound must be at least 1");
  const auto& primes = s.primes();
  const std::size_t k = primes.size();
  const std::size_t side = 2 * static_cast<std::size_t>(bound) + 1;

  // powers[i][e] = q_i^e for 0 <= e <= bound
  std::vector<std::vector<Int>> powers(k);
  for (std::size_t i = 0; i < k; ++i) {
    powers[i].push_back(1);
    for (unsigned e = 1; e <= bound; ++e) powers[i].push_back(powers[i].back() * primes[i]);
  }

  std::size_t total = 2;
  for (std::size_t i = 0; i < k; ++i) total *= side;

  workers = std::max(1u, workers);
  std::vector<std::vector<TwoTermSolution>> found(workers);
  run_workers(workers, [&](unsigned w) {
    const Slice sl = slice_for(total, w, workers);
    for (std::size_t idx = sl.begin; idx < sl.end; ++idx) {
      std::size_t rest = idx;
      const int sign = (rest % 2) ? -1 : 1;
      rest /= 2;
      Int num = 1, den = 1;
      for (std::size_t i = 0; i < k; ++i) {
        const long e = static_cast<long>(rest % side) - static_cast<long>(bound);
        rest /= side;
        if (e > 0) num *= powers[i][static_cast<std::size_t>(e)];
        if (e < 0) den *= powers[i][static_cast<std::size_t>(-e)];
      }
      if (sign < 0) num = -num;
      // 1 - num/den = (den - num)/den, and den is already S-smooth
      if (!smooth_over(primes, den - num)) continue;
      const Rat x(num, den);
      found[w].push_back({x, Rat(1) - x});
    }
  });

  std::vector<TwoTermSolution> out;
  for (auto& part : found) out.insert(out.end(), part.begin(), part.end());
  std::sort(out.begin(), out.end(), [](const TwoTermSolution& a, const TwoTermSolution& b) { return num_den_less(a.x, b.x); });
  return out;
}

std::vector<Rat> lambda_set(const PrimeSet& s, unsigned bound) {
  std::vector<Rat> out;
  for (const auto& sol : solve_two_term(s, bound)) out.push_back(sol.x);
  return out;
}

std::vector<std::vector<Rat>> s3_orbits(const std::vector<Rat>& values) {
  auto less = [](const Rat& a, const Rat& b) { return num_den_less(a, b); };
  std::set<Rat, decltype(less)> pool(values.begin(), values.end(), less);
  std::set<Rat, decltype(less)> seen(less);
  std::vector<std::vector<Rat>> orbits;
  for (const Rat& start : pool) {
    if (seen.count(start)) continue;
    std::vector<Rat> orbit;
    std::vector<Rat> stack = {start};
    seen.insert(start);
    while (!stack.empty()) {
      const Rat v = stack.back();
      stack.pop_back();
      orbit.push_back(v);
      if (v.is_zero() || v == Rat(1)) {
        throw Error(Errc::NotClosed, v.str() + " is not moved inside the set by the S3 action");
      }
      for (const Rat& img : {Rat(1) - v, v.inverse()}) {
        if (!pool.count(img)) {
          throw Error(Errc::NotClosed, "image " + img.str() + " of " + v.str() + " is missing from the set");
        }
        if (seen.insert(img).second) stack.push_back(img);
      }
    }
    std::sort(orbit.begin(), orbit.end(), less);
    orbits.push_back(std::move(orbit));
  }
  std::sort(orbits.begin(), orbits.end(), [&](const auto& a, const auto& b) { return less(a.front(), b.front()); });
  return orbits;
}

TripleWitness make_triple(const Int& p, Rat x, Rat y, Rat z) {
  const Prime q(p);
  TripleWitness w;
  w.p = p;
  w.valuations = {arith::val(q, x), arith::val(q, y), arith::val(q, z),
                  arith::val(q, x - y), arith::val(q, x - z), arith::val(q, y - z)};
  w.x = std::move(x);
  w.y = std::move(y);
  w.z = std::move(z);
  return w;
}

bool verify_triple(const PrimeSet& s, const TripleWitness& w) {
  if (w.p < 3 || !arith::is_probable_prime(w.p)) return false;
  if (w.x == w.y || w.x == w.z || w.y == w.z) return false;
  const PrimeSet t = s.with(w.p);
  const std::array<Rat, 6> q = {w.x, w.y, w.z, w.x - w.y, w.x - w.z, w.y - w.z};
  for (const Rat& v : q) {
    if (!is_s_unit(t, v)) return false;
  }
  const Prime pp = Prime::trusted(w.p);
  for (std::size_t i = 0; i < 6; ++i) {
    if (arith::val(pp, q[i]) != w.valuations[i]) return false;
  }
  return valuations_vary(w.valuations);
}

std::vector<ExceptionalPrime> exceptional_triple_search(const PrimeSet& s, const std::vector<Int>& primes,
                                                        unsigned bound) {
  std::vector<Int> todo;
  for (const Int& p : primes) {
    if (p == 2 || s.contains(p)) continue;
    if (p < 2 || !arith::is_probable_prime(p)) throw Error(Errc::NonPrimeModulus, p.get_str() + " is not prime");
    todo.push_back(p);
  }
  std::sort(todo.begin(), todo.end(), int_less);
  todo.erase(std::unique(todo.begin(), todo.end()), todo.end());

  std::vector<std::optional<ExceptionalPrime>> results(todo.size());
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(default_workers(), std::max<std::size_t>(todo.size(), 1)));
  run_workers(workers, [&](unsigned w) {
    const Slice sl = slice_for(todo.size(), w, workers);
    for (std::size_t i = sl.begin; i < sl.end; ++i) {
      const Int& p = todo[i];
      const PrimeSet t = s.with(p);
      const Prime pp = Prime::trusted(p);
      const std::vector<Rat> lam = lambda_set(t, bound);
      std::vector<Valuation> v_lam, v_lam1;
      for (const Rat& l : lam) {
        v_lam.push_back(arith::val(pp, l));
        v_lam1.push_back(arith::val(pp, l - Rat(1)));
      }
      std::set<Triple, CanonicalLess> triples;
      for (std::size_t a = 0; a < lam.size(); ++a) {
        for (std::size_t b = a + 1; b < lam.size(); ++b) {
          const Rat diff = lam[a] - lam[b];
          if (!is_s_unit(t, diff)) continue;
          // valuations of (s, t, 1, s-t, s-1, t-1)
          const std::array<Valuation, 6> v = {v_lam[a], v_lam[b], Valuation(0), arith::val(pp, diff), v_lam1[a], v_lam1[b]};
          if (!valuations_vary(v)) continue;
          triples.insert(normalize(lam[a], lam[b], Rat(1)));
        }
      }
      if (triples.empty()) continue;
      ExceptionalPrime ep;
      ep.p = p;
      for (const Triple& tr : triples) ep.all.push_back(witness_from(p, tr));
      ep.witness = ep.all.front();
      results[i] = std::move(ep);
    }
  });

  std::vector<ExceptionalPrime> out;
  for (auto& r : results) {
    if (r) out.push_back(std::move(*r));
  }
  return out;
}

std::vector<TripleWitness> direct_triple_search(const PrimeSet& s, const Int& p, unsigned exponent_bound) {
  if (p == 2 || !arith::is_probable_prime(p)) throw Error(Errc::InvalidArgument, "need an odd prime");
  const PrimeSet t = s.with(p);
  std::vector<Int> units = {1};
  for (const Int& q : t.primes()) {
    std::vector<Int> next;
    for (const Int& u : units) {
      Int v = u;
      for (unsigned e = 0; e <= exponent_bound; ++e) {
        next.push_back(v);
        v *= q;
      }
    }
    units = std::move(next);
  }
  const std::size_t half = units.size();
  for (std::size_t i = 0; i < half; ++i) units.push_back(-units[i]);

  const Prime pp = Prime::trusted(p);
  std::set<Triple, CanonicalLess> triples;
  for (std::size_t i = 0; i < units.size(); ++i) {
    for (std::size_t j = i + 1; j < units.size(); ++j) {
      if (!smooth_over(t.primes(), units[i] - units[j])) continue;
      for (std::size_t k = j + 1; k < units.size(); ++k) {
        const Int& x = units[i];
        const Int& y = units[j];
        const Int& z = units[k];
        if (gcd(gcd(x, y), z) != 1) continue;
        if (!smooth_over(t.primes(), x - z) || !smooth_over(t.primes(), y - z)) continue;
        const std::array<Valuation, 6> v = {arith::val(pp, x), arith::val(pp, y), arith::val(pp, z),
                                            arith::val(pp, Int(x - y)), arith::val(pp, Int(x - z)), arith::val(pp, Int(y - z))};
        if (!valuations_vary(v)) continue;
        triples.insert(normalize(Rat(x), Rat(y), Rat(z)));
      }
    }
  }
  std::vector<TripleWitness> out;
  for (const Triple& tr : triples) out.push_back(witness_from(p, tr));
  return out;
}

}  // namespace hypred::sunit
