#include <algorithm>
#include <map>
#include <mutex>

#include "hypred/arith/factor.hpp"
#include "hypred/arith/primes.hpp"
#include "hypred/bounds/bounds.hpp"
#include "hypred/error.hpp"
#include "hypred/forge/forge.hpp"

namespace hypred::forge {

namespace {

Poly trim(Poly f) {
  while (f.size() > 1 && f.back() == 0) f.pop_back();
  return f;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return trim(out);
}

// Exact division by a monic polynomial.
Poly div_exact(Poly num, const Poly& den) {
  const std::size_t dd = den.size() - 1;
  if (num.size() - 1 < dd) throw Error(Errc::Invariant, "polynomial division degree");
  Poly q(num.size() - dd, Int(0));
  for (std::size_t i = num.size(); i-- > dd;) {
    const Int c = num[i];
    q[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  for (const Int& r : num) {
    if (r != 0) throw Error(Errc::Invariant, "polynomial division left a remainder");
  }
  return trim(q);
}

// f(s x) for a scalar s
Poly scale_arg(const Poly& f, const Int& s) {
  Poly out = f;
  Int pw = 1;
  for (Int& c : out) {
    c *= pw;
    pw *= s;
  }
  return out;
}

Poly linear(const Int& c0, const Int& c1) { return trim({c0, c1}); }

void require_genus(int g) {
  if (g < 2) throw Error(Errc::InvalidArgument, "genus must be at least 2");
}

std::vector<Rat> to_rats(const std::vector<Int>& v) { return {v.begin(), v.end()}; }

FamilyWitness certify(FamilyKind kind, Mode mode, int g, const Int& parameter, const Constellation& c,
                      const std::vector<Int>& roots, std::size_t budget) {
  std::vector<arith::PrimalityCertificate> certs;
  const std::vector<Int> vals = c.values(parameter);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] < 2) {
      throw Error(Errc::NotAConstellation, c.labels[i] + " = " + vals[i].get_str() + " is not prime");
    }
    auto cert = arith::is_prime(vals[i]);
    if (!cert.prime) {
      throw Error(Errc::NotAConstellation, c.labels[i] + " = " + vals[i].get_str() + " is composite");
    }
    certs.push_back(std::move(cert));
  }
  auto curve = curves::RosenhainCurve::from_roots(to_rats(roots));
  auto bad = curves::bad_odd_primes(curve);
  const bool pass = bad.count_with_two() <= budget;
  return FamilyWitness{kind, mode, g, parameter, std::move(curve), std::move(bad), budget, std::move(certs), pass};
}

}  // namespace

Int eval(const Poly& f, const Int& x) {
  Int acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

Poly cyclotomic(unsigned d) {
  if (d < 1) throw Error(Errc::InvalidArgument, "cyclotomic index must be positive");
  static std::mutex mu;
  static std::map<unsigned, Poly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(d); it != cache.end()) return it->second;
  }
  Poly f(d + 1, Int(0));
  f[0] = -1;
  f[d] = 1;
  for (unsigned e = 1; e < d; ++e) {
    if (d % e == 0) f = div_exact(f, cyclotomic(e));
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(d, f);
  return f;
}

bool is_admissible(const std::vector<Int>& offsets) {
  for (std::uint64_t q : arith::primes_upto(offsets.size())) {
    std::vector<bool> hit(q, false);
    for (const Int& h : offsets) {
      Int r = h % static_cast<unsigned long>(q);
      if (r < 0) r += static_cast<unsigned long>(q);
      hit[r.get_ui()] = true;
    }
    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) return false;
  }
  return true;
}

AdmissibleTuple admissible_tuple(int g) {
  require_genus(g);
  AdmissibleTuple t;
  t.g = g;
  const Int step = arith::factorial(static_cast<unsigned>(2 * g));
  for (int i = 0; i <= 2 * g - 2; ++i) t.offsets.push_back(step * i);
  t.admissible = is_admissible(t.offsets);
  return t;
}

std::string_view to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::Tuple: return "tuple";
    case FamilyKind::Cyclotomic: return "cyclotomic";
    case FamilyKind::Genus5: return "genus5";
  }
  return "unknown";
}

std::string_view to_string(Mode m) { return m == Mode::Corrected ? "corrected" : "paper-exact"; }

Mode parse_mode(std::string_view text) {
  if (text == "corrected") return Mode::Corrected;
  if (text == "paper-exact") return Mode::PaperExact;
  throw Error(Errc::Parse, "mode must be corrected or paper-exact");
}

std::vector<Int> Constellation::values(const Int& x) const {
  std::vector<Int> out;
  out.reserve(members.size());
  for (const Poly& f : members) out.push_back(eval(f, x));
  return out;
}

bool Constellation::holds(const Int& x) const {
  for (const Poly& f : members) {
    if (!arith::is_probable_prime(eval(f, x))) return false;
  }
  return true;
}

Constellation tuple_constellation(int g) {
  const AdmissibleTuple t = admissible_tuple(g);
  Constellation c;
  c.kind = FamilyKind::Tuple;
  c.g = g;
  c.alpha = arith::factorial(static_cast<unsigned>(2 * g));
  for (const Int& h : t.offsets) {
    c.members.push_back(linear(h, 1));
    c.labels.push_back(h == 0 ? "p" : "p+" + h.get_str());
  }
  return c;
}

Constellation cyclotomic_constellation(int g) {
  require_genus(g);
  Constellation c;
  c.kind = FamilyKind::Cyclotomic;
  c.g = g;
  c.alpha = arith::factorial(static_cast<unsigned>(2 * g));
  c.members.push_back(linear(0, 1));
  c.labels.push_back("k");
  std::vector<std::pair<std::size_t, std::int64_t>> order;
  for (std::int64_t d : bounds::d_index_set(g)) order.emplace_back(cyclotomic(static_cast<unsigned>(d)).size(), d);
  std::sort(order.begin(), order.end());
  for (const auto& [deg, d] : order) {
    c.members.push_back(scale_arg(cyclotomic(static_cast<unsigned>(d)), c.alpha));
    c.labels.push_back("Phi_" + std::to_string(d) + "(" + c.alpha.get_str() + "k)");
  }
  return c;
}

Constellation genus5_constellation(Mode mode) {
  Constellation c;
  c.kind = FamilyKind::Genus5;
  c.mode = mode;
  c.g = 5;
  c.alpha = 5040;
  const Int a = c.alpha;
  const Poly m = linear(0, a);
  auto add = [&](Poly f, std::string label) {
    c.members.push_back(trim(std::move(f)));
    c.labels.push_back(std::move(label));
  };
  add(linear(0, 1), "k");
  add(linear(-1, a), "m-1");
  add(linear(1, a), "m+1");
  const Poly m2 = mul(m, m);
  add({Int(1), Int(0), m2[2]}, "m^2+1");
  add({Int(-1), Int(-2) * a, m2[2]}, "m^2-2m-1");
  if (mode == Mode::Corrected) {
    add({Int(-1), Int(2) * a, m2[2]}, "m^2+2m-1");
  } else {
    add({Int(1), Int(-2) * a, m2[2]}, "m^2-2m+1");
  }
  return c;
}

std::optional<Int> find_tuple_witness(int g, std::uint64_t limit) {
  SearchOptions opt;
  opt.limit = limit;
  return search(tuple_constellation(g), opt).witness;
}

std::optional<Int> find_cyclotomic_witness(int g, std::uint64_t limit) {
  SearchOptions opt;
  opt.limit = limit;
  return search(cyclotomic_constellation(g), opt).witness;
}

SearchResult find_genus5_witness(const SearchOptions& opt) { return search(genus5_constellation(), opt); }

std::vector<Int> tuple_roots(int g, const Int& p, Mode mode) {
  const AdmissibleTuple t = admissible_tuple(g);
  std::vector<Int> roots = {Int(0)};
  for (const Int& h : t.offsets) roots.push_back(p + h);
  const Int step = arith::factorial(static_cast<unsigned>(2 * g));
  const int mult = mode == Mode::Corrected ? 2 * g - 2 : 2 * g;
  roots.push_back(2 * p + mult * step);
  return roots;
}

std::vector<Int> cyclotomic_roots(int g, const Int& k) {
  require_genus(g);
  const Int m = arith::factorial(static_cast<unsigned>(2 * g)) * k;
  std::vector<Int> roots = {Int(0)};
  Int pw = 1;
  for (int j = 0; j < g; ++j) {
    roots.push_back(pw);
    roots.push_back(-pw);
    pw *= m;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<Int> genus5_roots(const Int& m) {
  const Int u = m - 1, v = m + 1;
  std::vector<Int> roots = {Int(0)};
  for (const Int& r : {Int(m * m * u * v), Int(m * u * v), Int(u * v), Int(m * u * u), Int(m * v * v)}) {
    roots.push_back(r);
    roots.push_back(-r);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

FamilyWitness build_tuple_curve(int g, const Int& p, Mode mode) {
  const Constellation c = tuple_constellation(g);
  const std::size_t budget = static_cast<std::size_t>(2 * g - 1) + arith::pi(static_cast<std::uint64_t>(2 * g));
  return certify(FamilyKind::Tuple, mode, g, p, c, tuple_roots(g, p, mode), budget);
}

FamilyWitness build_cyclotomic_curve(int g, const Int& k) {
  const Constellation c = cyclotomic_constellation(g);
  const Int budget = bounds::upper_schinzel_exact(bounds::FieldDescriptor::rationals(), g);
  return certify(FamilyKind::Cyclotomic, Mode::Corrected, g, k, c, cyclotomic_roots(g, k), budget.get_ui());
}

FamilyWitness build_genus5_curve(const Int& k) {
  const Constellation c = genus5_constellation(Mode::Corrected);
  return certify(FamilyKind::Genus5, Mode::Corrected, 5, k, c, genus5_roots(c.alpha * k), 10);
}

bool FamilyWitness::reverify() const {
  for (const auto& cert : certificates) {
    if (!cert.prime || !arith::reverify(cert)) return false;
  }
  const Constellation c = kind == FamilyKind::Tuple        ? tuple_constellation(g)
                          : kind == FamilyKind::Cyclotomic ? cyclotomic_constellation(g)
                                                           : genus5_constellation(Mode::Corrected);
  if (c.values(parameter) != [&] {
        std::vector<Int> ns;
        for (const auto& cert : certificates) ns.push_back(cert.n);
        return ns;
      }()) {
    return false;
  }
  const std::vector<Int> roots = kind == FamilyKind::Tuple        ? tuple_roots(g, parameter, mode)
                                 : kind == FamilyKind::Cyclotomic ? cyclotomic_roots(g, parameter)
                                                                  : genus5_roots(c.alpha * parameter);
  const auto fresh = curves::RosenhainCurve::from_roots(to_rats(roots));
  if (!(fresh == curve)) return false;
  const auto again = curves::bad_odd_primes(fresh);
  if (again.primes != bad.primes) return false;
  for (const auto& w : again.witnesses) {
    if (!w.verify()) return false;
  }
  return pass == (again.count_with_two() <= budget);
}

unsigned omega_of(int g, std::uint64_t k) {
  const AdmissibleTuple t = admissible_tuple(g);
  const Int kk = int_from_u64(k);
  std::vector<Int> vals;
  for (const Int& h : t.offsets) vals.push_back(kk + h);
  vals.push_back(2 * kk + (2 * g - 2) * arith::factorial(static_cast<unsigned>(2 * g)));
  return static_cast<unsigned>(arith::prime_support(vals).size());
}

OmegaResult low_omega_search(int g, std::uint64_t limit) {
  require_genus(g);
  if (limit < 1) throw Error(Errc::InvalidArgument, "limit must be at least 1");
  OmegaResult best{1, omega_of(g, 1)};
  for (std::uint64_t k = 2; k <= limit; ++k) {
    const unsigned w = omega_of(g, k);
    if (w < best.omega) best = {k, w};
  }
  return best;
}

}  // namespace hypred::forge
