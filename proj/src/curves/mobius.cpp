#include "hypred/curves/mobius.hpp"

#include <algorithm>

#include "hypred/error.hpp"

namespace hypred::curves {

namespace {

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Homogeneous coordinates (x : y).
struct Hom {
  Rat x, y;
};

Hom hom(const ProjPoint& p) { return p.infinite ? Hom{Rat(1), Rat(0)} : Hom{p.x, Rat(1)}; }

Rat det2(const Hom& u, const Hom& v) { return u.x * v.y - v.x * u.y; }

struct Mat {
  Rat a, b, c, d;
};

// Columns l1*v1, l2*v2 with l1*v1 + l2*v2 = v3; sends 0 -> v2, inf -> v1, 1 -> v3.
std::optional<Mat> frame(const std::array<ProjPoint, 3>& pts) {
  const Hom v1 = hom(pts[0]), v2 = hom(pts[1]), v3 = hom(pts[2]);
  const Rat det = det2(v1, v2);
  if (det.is_zero()) return std::nullopt;
  const Rat l1 = det2(v3, v2) / det;
  const Rat l2 = det2(v1, v3) / det;
  if (l1.is_zero() || l2.is_zero()) return std::nullopt;
  return Mat{l1 * v1.x, l2 * v2.x, l1 * v1.y, l2 * v2.y};
}

bool contains(const std::vector<ProjPoint>& pts, const ProjPoint& p) {
  return std::find(pts.begin(), pts.end(), p) != pts.end();
}

bool lex_less(const std::vector<Int>& a, const std::vector<Int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const Int& x, const Int& y) { return cmp(x, y) < 0; });
}

// Translate the minimum to 0 and scale to coprime nonnegative integers.
std::vector<Int> affine_normal_form(std::vector<Rat> v) {
  const Rat lo = *std::min_element(v.begin(), v.end());
  Int den = 1;
  for (Rat& x : v) {
    x -= lo;
    den = lcm(den, x.den());
  }
  std::vector<Int> out;
  Int g = 0;
  for (const Rat& x : v) {
    Int n = x.num() * (den / x.den());
    g = gcd(g, n);
    out.push_back(std::move(n));
  }
  for (Int& n : out) n /= g;
  std::sort(out.begin(), out.end(), [](const Int& x, const Int& y) { return cmp(x, y) < 0; });
  return out;
}

}  // namespace

MobiusMap::MobiusMap(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
  if ((a * d - b * c).is_zero()) throw Error(Errc::InvalidArgument, "singular Mobius map");
  Int den = 1;
  for (const Rat* r : {&a, &b, &c, &d}) den = lcm(den, r->den());
  Int e[4];
  Int g = 0;
  int k = 0;
  for (const Rat* r : {&a, &b, &c, &d}) {
    e[k] = r->num() * (den / r->den());
    g = gcd(g, e[k]);
    ++k;
  }
  for (Int& x : e) x /= g;
  const Int& lead = e[0] != 0 ? e[0] : e[1] != 0 ? e[1] : e[2];
  if (lead < 0) {
    for (Int& x : e) x = -x;
  }
  a_ = e[0];
  b_ = e[1];
  c_ = e[2];
  d_ = e[3];
}

ProjPoint MobiusMap::apply(const ProjPoint& p) const {
  Rat num, den;
  if (p.infinite) {
    num = Rat(a_);
    den = Rat(c_);
  } else {
    num = Rat(a_) * p.x + Rat(b_);
    den = Rat(c_) * p.x + Rat(d_);
  }
  if (den.is_zero()) return ProjPoint::inf();
  return ProjPoint::finite(num / den);
}

MobiusMap MobiusMap::inverse() const { return MobiusMap(Rat(d_), Rat(-b_), Rat(-c_), Rat(a_)); }

MobiusMap MobiusMap::compose(const MobiusMap& o) const {
  return MobiusMap(Rat(a_ * o.a_ + b_ * o.c_), Rat(a_ * o.b_ + b_ * o.d_), Rat(c_ * o.a_ + d_ * o.c_),
                   Rat(c_ * o.b_ + d_ * o.d_));
}

std::string MobiusMap::str() const {
  return "(" + a_.get_str() + "*x+" + b_.get_str() + ")/(" + c_.get_str() + "*x+" + d_.get_str() + ")";
}

std::optional<MobiusMap> map_three_points(const std::array<ProjPoint, 3>& from, const std::array<ProjPoint, 3>& to) {
  const auto fz = frame(from);
  const auto fw = frame(to);
  if (!fz || !fw) return std::nullopt;
  // M = A_w * adj(A_z)
  const Mat& z = *fz;
  const Mat& w = *fw;
  const Rat ia = z.d, ib = -z.b, ic = -z.c, id = z.a;
  return MobiusMap(w.a * ia + w.b * ic, w.a * ib + w.b * id, w.c * ia + w.d * ic, w.c * ib + w.d * id);
}

std::optional<MobiusMap> pgl2_equivalent_points(const std::vector<ProjPoint>& w1, const std::vector<ProjPoint>& w2) {
  if (w1.size() != w2.size()) {
    throw Error(Errc::GenusMismatch, "point sets of sizes " + std::to_string(w1.size()) + " and " +
                                         std::to_string(w2.size()));
  }
  const std::size_t n = w1.size();
  if (n < 3) throw Error(Errc::InvalidArgument, "need at least three points");
  const std::array<ProjPoint, 3> src = {w1[0], w1[1], w1[2]};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const auto m = map_three_points(src, {w2[i], w2[j], w2[k]});
        if (!m) continue;
        bool ok = true;
        for (std::size_t t = 3; t < n && ok; ++t) ok = contains(w2, m->apply(w1[t]));
        if (ok) return m;
      }
    }
  }
  return std::nullopt;
}

std::vector<ProjPoint> weierstrass_points(const std::vector<Rat>& roots) {
  std::vector<Rat> sorted = roots;
  std::sort(sorted.begin(), sorted.end());
  std::vector<ProjPoint> out;
  out.reserve(sorted.size() + 1);
  for (Rat& r : sorted) out.push_back(ProjPoint::finite(std::move(r)));
  out.push_back(ProjPoint::inf());
  return out;
}

std::optional<MobiusMap> pgl2_equivalent(const std::vector<Rat>& roots1, const std::vector<Rat>& roots2) {
  if (roots1.size() != roots2.size()) {
    throw Error(Errc::GenusMismatch, "root lists of sizes " + std::to_string(roots1.size()) + " and " +
                                         std::to_string(roots2.size()));
  }
  return pgl2_equivalent_points(weierstrass_points(roots1), weierstrass_points(roots2));
}

std::vector<Int> canonical_roots(const std::vector<Rat>& roots) {
  std::vector<Int> best;
  auto consider = [&](const std::vector<Rat>& pts) {
    for (int s : {1, -1}) {
      std::vector<Rat> v = pts;
      if (s < 0) {
        for (Rat& x : v) x = -x;
      }
      std::vector<Int> cand = affine_normal_form(std::move(v));
      if (best.empty() || lex_less(cand, best)) best = std::move(cand);
    }
  };
  consider(roots);
  for (const Rat& w : roots) {
    // x -> 1/(x - w) sends w to infinity and infinity to 0
    std::vector<Rat> moved = {Rat(0)};
    for (const Rat& r : roots) {
      if (r != w) moved.push_back((r - w).inverse());
    }
    consider(moved);
  }
  return best;
}

}  // namespace hypred::curves
