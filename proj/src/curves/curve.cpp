#include "hypred/curves/curve.hpp"

#include <algorithm>
#include <random>

#include "hypred/error.hpp"

namespace hypred::curves {

RosenhainCurve::RosenhainCurve(int genus, Rat twist, std::vector<Rat> roots)
    : genus_(genus), twist_(std::move(twist)), roots_(std::move(roots)) {
  if (genus_ < 2) throw Error(Errc::InvalidCurve, "genus must be at least 2");
  if (twist_.is_zero()) throw Error(Errc::InvalidCurve, "twist c must be nonzero");
  const auto expected = static_cast<std::size_t>(2 * genus_ + 1);
  if (roots_.size() != expected) {
    throw Error(Errc::InvalidCurve, "genus " + std::to_string(genus_) + " needs " + std::to_string(expected) +
                                        " roots, got " + std::to_string(roots_.size()));
  }
  std::sort(roots_.begin(), roots_.end());
  const auto dup = std::adjacent_find(roots_.begin(), roots_.end());
  if (dup != roots_.end()) throw Error(Errc::InvalidCurve, "repeated root " + dup->str());
  normalized_ = std::binary_search(roots_.begin(), roots_.end(), Rat(0)) &&
                std::binary_search(roots_.begin(), roots_.end(), Rat(1));
}

RosenhainCurve RosenhainCurve::from_roots(std::vector<Rat> roots, Rat twist) {
  const std::size_t n = roots.size();
  if (n < 5 || n % 2 == 0) {
    throw Error(Errc::InvalidCurve, "root count must be odd and at least 5, got " + std::to_string(n));
  }
  return RosenhainCurve(static_cast<int>((n - 1) / 2), std::move(twist), std::move(roots));
}

std::vector<Rat> RosenhainCurve::lambdas() const {
  if (!normalized_) throw Error(Errc::NotNormalized, "curve does not have 0 and 1 among its roots");
  std::vector<Rat> out;
  for (const Rat& r : roots_) {
    if (r != Rat(0) && r != Rat(1)) out.push_back(r);
  }
  return out;
}

RosenhainCurve RosenhainCurve::affine(const Rat& a, const Rat& b) const {
  if (a.is_zero()) throw Error(Errc::InvalidArgument, "affine map needs a != 0");
  std::vector<Rat> moved;
  moved.reserve(roots_.size());
  for (const Rat& r : roots_) moved.push_back(a * r + b);
  return RosenhainCurve(genus_, twist_, std::move(moved));
}

std::string RosenhainCurve::str() const { return "c=" + twist_.str() + " roots=" + join_roots(roots_); }

std::vector<Rat> parse_roots(const std::string& text) {
  std::vector<Rat> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    std::string item = text.substr(start, end - start);
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw Error(Errc::Parse, "empty root in list \"" + text + "\"");
    out.push_back(Rat::parse(item.substr(first, last - first + 1)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join_roots(const std::vector<Rat>& roots) {
  std::string s;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i) s += ',';
    s += roots[i].str();
  }
  return s;
}

RosenhainCurve good_example(int g, const Prime& p) {
  if (!p.is_odd()) throw Error(Errc::EvenPrime, "good_example needs an odd prime");
  if (p.value() <= 2 * g) {
    throw Error(Errc::PrimeTooSmall, "need p > 2g = " + std::to_string(2 * g) + ", got " + p.value().get_str());
  }
  std::vector<Rat> roots;
  for (int i = 0; i <= 2 * g; ++i) roots.push_back(Rat(i));
  return RosenhainCurve(g, Rat(1), std::move(roots));
}

namespace {

// Uniform integer in [lo, hi] by rejection, independent of the standard
// library's distribution implementation.
std::int64_t uniform(std::mt19937_64& gen, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} - span + 1) % span;
  for (;;) {
    const std::uint64_t r = gen();
    if (span == 0) return static_cast<std::int64_t>(r);
    if (r >= limit) return lo + static_cast<std::int64_t>(r % span);
  }
}

}  // namespace

RosenhainCurve random_curve(int g, std::uint64_t height, std::uint64_t seed) {
  if (g < 2) throw Error(Errc::InvalidArgument, "genus must be at least 2");
  if (height < static_cast<std::uint64_t>(2 * g + 1)) {
    throw Error(Errc::InvalidArgument, "height must be at least 2g+1");
  }
  const auto h = static_cast<std::int64_t>(height);
  std::mt19937_64 gen(seed);
  std::vector<Rat> roots = {Rat(0), Rat(1)};
  while (roots.size() < static_cast<std::size_t>(2 * g + 1)) {
    const Rat r(Int(static_cast<long>(uniform(gen, -h, h))), Int(static_cast<long>(uniform(gen, 1, h))));
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  }
  return RosenhainCurve(g, Rat(1), std::move(roots));
}

Rat model_discriminant(const RosenhainCurve& curve) {
  const auto& r = curve.roots();
  Rat prod(1);
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = i + 1; j < r.size(); ++j) {
      const Rat d = r[i] - r[j];
      prod *= d * d;
    }
  }
  // disc(c f) = c^(2n-2) disc(f) with n = 2g+1
  const int g = curve.genus();
  Rat scale(1);
  const Rat two_c = Rat(2) * curve.twist();
  for (int i = 0; i < 4 * g; ++i) scale *= two_c;
  return scale * prod;
}

}  // namespace hypred::curves
