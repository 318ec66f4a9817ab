#include "hypred/curves/cluster.hpp"

#include <algorithm>

#include "hypred/arith/factor.hpp"
#include "hypred/error.hpp"

namespace hypred::curves {

namespace {

using Matrix = std::vector<std::vector<Valuation>>;

Matrix valuation_matrix(const std::vector<Rat>& roots, const Prime& p) {
  const std::size_t n = roots.size();
  Matrix m(n, std::vector<Valuation>(n, Valuation::infinite()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m[i][j] = m[j][i] = arith::val(p, roots[i] - roots[j]);
    }
  }
  return m;
}

Cluster build(const std::vector<std::size_t>& idx, const std::vector<Rat>& roots, const Matrix& v) {
  Cluster c;
  for (std::size_t i : idx) c.members.push_back(roots[i]);
  if (idx.size() == 1) return c;

  Valuation depth = Valuation::infinite();
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) depth = std::min(depth, v[idx[a]][idx[b]]);
  }
  c.depth = depth;

  // idx is ascending in root value, so groups come out ordered by their smallest member
  std::vector<bool> used(idx.size(), false);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (used[a]) continue;
    std::vector<std::size_t> group = {idx[a]};
    used[a] = true;
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (!used[b] && v[idx[a]][idx[b]] > depth) {
        group.push_back(idx[b]);
        used[b] = true;
      }
    }
    c.children.push_back(build(group, roots, v));
  }
  return c;
}

void collect_proper(const Cluster& c, bool is_top, std::vector<const Cluster*>& out) {
  if (!is_top && c.members.size() >= 2) out.push_back(&c);
  for (const Cluster& ch : c.children) collect_proper(ch, false, out);
}

bool validate_node(const Cluster& c, const Prime& p) {
  if (c.members.empty() || !std::is_sorted(c.members.begin(), c.members.end())) return false;
  if (c.is_singleton()) return c.children.empty() && c.depth.is_infinite();
  if (c.children.size() < 2) return false;

  Valuation least = Valuation::infinite();
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    for (std::size_t j = i + 1; j < c.members.size(); ++j) {
      least = std::min(least, arith::val(p, c.members[i] - c.members[j]));
    }
  }
  if (least != c.depth) return false;

  std::vector<Rat> united;
  for (std::size_t k = 0; k < c.children.size(); ++k) {
    const Cluster& ch = c.children[k];
    if (!(ch.depth > c.depth)) return false;
    if (k && !(c.children[k - 1].members.front() < ch.members.front())) return false;
    if (!validate_node(ch, p)) return false;
    united.insert(united.end(), ch.members.begin(), ch.members.end());
    // maximality: members of different children meet exactly at depth
    for (std::size_t l = k + 1; l < c.children.size(); ++l) {
      if (arith::val(p, ch.members.front() - c.children[l].members.front()) != c.depth) return false;
    }
  }
  std::sort(united.begin(), united.end());
  return united == c.members;
}

void render_item(const Cluster& c, std::string& out) {
  if (c.is_singleton()) {
    out += c.members.front().str();
    return;
  }
  out += '{';
  for (std::size_t k = 0; k < c.children.size(); ++k) {
    if (k) out += ' ';
    render_item(c.children[k], out);
  }
  out += "}_" + c.depth.str();
}

void require_odd(const Prime& p) {
  if (!p.is_odd()) throw Error(Errc::EvenPrime, "cluster pictures are only defined here at odd primes");
}

}  // namespace

std::vector<const Cluster*> ClusterPicture::proper_clusters() const {
  std::vector<const Cluster*> out;
  collect_proper(top_, true, out);
  return out;
}

bool ClusterPicture::validate() const { return top_.members.size() >= 2 && validate_node(top_, p_); }

std::string ClusterPicture::render() const {
  std::string out = "(";
  for (std::size_t k = 0; k < top_.children.size(); ++k) {
    if (k) out += ' ';
    render_item(top_.children[k], out);
  }
  out += ")_" + top_.depth.str();
  return out;
}

ClusterPicture cluster_picture(const std::vector<Rat>& roots, const Prime& p) {
  require_odd(p);
  std::vector<Rat> sorted = roots;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.size() < 2) throw Error(Errc::InvalidCurve, "a cluster picture needs at least two roots");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(Errc::InvalidCurve, "roots must be distinct");
  }
  const Matrix v = valuation_matrix(sorted, p);
  std::vector<std::size_t> idx(sorted.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return ClusterPicture(p, build(idx, sorted, v));
}

ClusterPicture cluster_picture(const RosenhainCurve& curve, const Prime& p) {
  return cluster_picture(curve.roots(), p);
}

bool has_pot_good_reduction_at(const RosenhainCurve& curve, const Prime& p) {
  return cluster_picture(curve, p).is_trivial();
}

bool unit_criterion_at(const RosenhainCurve& curve, const Prime& p) {
  require_odd(p);
  const std::vector<Rat> lam = curve.lambdas();
  const Valuation zero(0);
  for (std::size_t i = 0; i < lam.size(); ++i) {
    if (arith::val(p, lam[i]) != zero || arith::val(p, lam[i] - Rat(1)) != zero) return false;
    for (std::size_t j = i + 1; j < lam.size(); ++j) {
      if (arith::val(p, lam[i] - lam[j]) != zero) return false;
    }
  }
  return true;
}

bool BadPrimeWitness::verify() const {
  const Prime q(p);
  if (!q.is_odd()) return false;
  const Valuation x = arith::val(q, a1 - a2);
  const Valuation y = arith::val(q, b1 - b2);
  return x == va && y == vb && x != y && x.is_finite() && y.is_finite();
}

bool BadPrimeSet::contains(const Int& p) const {
  return std::binary_search(primes.begin(), primes.end(), p, [](const Int& a, const Int& b) { return cmp(a, b) < 0; });
}

BadPrimeSet bad_odd_primes(const std::vector<Rat>& roots_in) {
  std::vector<Rat> roots = roots_in;
  std::sort(roots.begin(), roots.end());
  if (std::adjacent_find(roots.begin(), roots.end()) != roots.end()) {
    throw Error(Errc::InvalidCurve, "roots must be distinct");
  }
  struct Pair {
    std::size_t i, j;
    Rat diff;
  };
  std::vector<Pair> pairs;
  std::vector<Int> parts;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      Rat d = roots[j] - roots[i];
      parts.push_back(d.num());
      parts.push_back(d.den());
      pairs.push_back({i, j, std::move(d)});
    }
  }

  BadPrimeSet out;
  for (const Int& q : arith::prime_support(parts)) {
    if (q == 2) continue;
    const Prime p = Prime::trusted(q);
    const Valuation v0 = arith::val(p, pairs.front().diff);
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      const Valuation vk = arith::val(p, pairs[k].diff);
      if (vk == v0) continue;
      const Pair& a = pairs.front();
      const Pair& b = pairs[k];
      out.primes.push_back(q);
      out.witnesses.push_back({q, roots[a.j], roots[a.i], roots[b.j], roots[b.i], v0, vk});
      break;
    }
  }
  return out;
}

BadPrimeSet bad_odd_primes(const RosenhainCurve& curve) { return bad_odd_primes(curve.roots()); }

}  // namespace hypred::curves
