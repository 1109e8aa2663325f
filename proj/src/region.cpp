#include "icstab/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "icstab/errors.hpp"

namespace icstab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Oriented {
  double line_rate;
  double box_rate;
};

Oriented orient(const SubRegion& s, double lambda1, double lambda2) {
  return s.box_axis == Axis::Lambda2 ? Oriented{lambda1, lambda2} : Oriented{lambda2, lambda1};
}

double busy_fraction(const SubRegion& s, double box_rate) {
  if (box_rate == 0.0) return 0.0;
  return s.box_value > 0.0 ? box_rate / s.box_value : kInf;
}

// Sub-region with the given dominant-system service rates.
SubRegion make_sub(Axis box_axis, double box_value, double solo_rate, double coupling) {
  return SubRegion{box_axis, std::max(box_value, 0.0), std::max(solo_rate, 0.0), coupling};
}

void check_probability(double q, const char* name) {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

double SubRegion::c1() const {
  if (box_axis == Axis::Lambda2) return solo_rate > 0.0 ? 1.0 / solo_rate : kInf;
  return (solo_rate > 0.0 && box_value > 0.0) ? coupling / (solo_rate * box_value) : kInf;
}

double SubRegion::c2() const {
  if (box_axis == Axis::Lambda1) return solo_rate > 0.0 ? 1.0 / solo_rate : kInf;
  return (solo_rate > 0.0 && box_value > 0.0) ? coupling / (solo_rate * box_value) : kInf;
}

bool SubRegion::contains(double lambda1, double lambda2) const {
  const auto [x, y] = orient(*this, lambda1, lambda2);
  if (y > 0.0 && !(y < box_value)) return false;
  if (x == 0.0) return true;
  return x < solo_rate - coupling * busy_fraction(*this, y);
}

double SubRegion::sup_lambda2(double lambda1) const {
  if (lambda1 < 0.0) return 0.0;
  if (box_axis == Axis::Lambda2) {
    if (lambda1 > 0.0 && !(lambda1 < solo_rate)) return 0.0;
    double sup = box_value;
    if (lambda1 > 0.0 && coupling > 0.0) sup = std::min(sup, box_value * (solo_rate - lambda1) / coupling);
    return std::max(sup, 0.0);
  }
  if (lambda1 > 0.0 && !(lambda1 < box_value)) return 0.0;
  return std::max(solo_rate - coupling * busy_fraction(*this, lambda1), 0.0);
}

double SubRegion::lambda1_extent() const { return box_axis == Axis::Lambda2 ? solo_rate : box_value; }

double SubRegion::closure_lambda2(double lambda1) const {
  if (lambda1 < 0.0 || lambda1 > lambda1_extent()) return 0.0;
  if (box_axis == Axis::Lambda2) {
    double sup = box_value;
    if (coupling > 0.0) sup = std::min(sup, box_value * (solo_rate - lambda1) / coupling);
    return std::max(sup, 0.0);
  }
  if (box_value <= 0.0) return solo_rate;
  return std::max(solo_rate - coupling * lambda1 / box_value, 0.0);
}

void AccessProbabilities::validate() const {
  check_probability(q1, "q1");
  check_probability(q2, "q2");
}

StabilityRegion region_general(const SuccessProfile& p) {
  if (!p.in_unit_interval()) throw DomainError("success probabilities must lie in [0, 1]");
  StabilityRegion r;
  r.profile = p;
  r.access = AccessMode::Saturated;
  r.sub1 = make_sub(Axis::Lambda2, p.p2_both, p.p1_alone, p.p1_alone - p.p1_both);
  r.sub2 = make_sub(Axis::Lambda1, p.p1_both, p.p2_alone, p.p2_alone - p.p2_both);
  r.degenerate = p.has_zero_entry();
  return r;
}

StabilityRegion region_random_access(const SuccessProfile& p, double q1, double q2) {
  if (!p.in_unit_interval()) throw DomainError("success probabilities must lie in [0, 1]");
  check_probability(q1, "q1");
  check_probability(q2, "q2");
  StabilityRegion r;
  r.profile = p;
  r.access = AccessMode::RandomAccess;
  r.q = {q1, q2};
  // Service of the box user when the other source always has a packet.
  const double served2 = (1.0 - q1) * p.p2_alone + q1 * p.p2_both;
  const double served1 = (1.0 - q2) * p.p1_alone + q2 * p.p1_both;
  r.sub1 = make_sub(Axis::Lambda2, q2 * served2, q1 * p.p1_alone, q1 * q2 * (p.p1_alone - p.p1_both));
  r.sub2 = make_sub(Axis::Lambda1, q1 * served1, q2 * p.p2_alone, q1 * q2 * (p.p2_alone - p.p2_both));
  r.degenerate = p.has_zero_entry() || q1 == 0.0 || q2 == 0.0;
  return r;
}

RatePoint corner_point(const SuccessProfile& p) { return {p.p1_both, p.p2_both}; }

RatePoint shared_corner(const StabilityRegion& r) { return {r.sub2.box_value, r.sub1.box_value}; }

bool is_convex(const SuccessProfile& p) {
  auto share = [](double both, double alone) { return alone > 0.0 ? both / alone : 1.0; };
  return share(p.p1_both, p.p1_alone) + share(p.p2_both, p.p2_alone) >= 1.0;
}

double ian_convexity_threshold(const Topology& t) {
  t.validate();
  const double direct = t.gain(Link::One, Link::One) * t.gain(Link::Two, Link::Two);
  const double cross = t.gain(Link::One, Link::Two) * t.gain(Link::Two, Link::One);
  return direct / cross;
}

bool sic_preferred(Link link, const ChannelParams& params) {
  const Link j = other(link);
  const auto& topo = params.topology;
  const double gi = params.thresholds[link];
  const double gj = params.thresholds[j];
  const double own = params.power[link] * topo.gain(link, link);
  const double cross = params.power[j] * topo.gain(j, link);
  auto ratio = [](double num, double den) {
    if (num == 0.0) return 0.0;
    return den == 0.0 ? kInf : num / den;
  };
  const double lhs = (1.0 + ratio(gj * own, cross)) / (1.0 + ratio(gi * cross, own));
  const double rhs = std::exp(-ratio(gj * (1.0 + gi), cross));
  return lhs < rhs;
}

bool contains(const StabilityRegion& r, double lambda1, double lambda2) {
  if (lambda1 < 0.0 || lambda2 < 0.0) return false;
  return r.sub1.contains(lambda1, lambda2) || r.sub2.contains(lambda1, lambda2);
}

double boundary_lambda2(const StabilityRegion& r, double lambda1) {
  return std::max(r.sub1.sup_lambda2(lambda1), r.sub2.sup_lambda2(lambda1));
}

std::vector<RatePoint> vertices(const StabilityRegion& r) {
  const SubRegion* subs[] = {&r.sub1, &r.sub2};

  std::vector<double> xs{0.0};
  for (const SubRegion* s : subs) {
    xs.push_back(s->lambda1_extent());
    if (s->box_axis == Axis::Lambda2 && s->coupling > 0.0) xs.push_back(s->solo_rate - s->coupling);
  }
  const double x_max = std::max(r.sub1.lambda1_extent(), r.sub2.lambda1_extent());
  std::erase_if(xs, [&](double x) { return !(x >= 0.0 && x <= x_max); });
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  // Inclusive value at x, and the value just to the right of x.
  auto at = [&](double x) {
    double v = 0.0;
    for (const SubRegion* s : subs)
      if (x <= s->lambda1_extent()) v = std::max(v, s->closure_lambda2(x));
    return v;
  };
  auto right_of = [&](double x) {
    double v = 0.0;
    for (const SubRegion* s : subs)
      if (x < s->lambda1_extent()) v = std::max(v, s->closure_lambda2(x));
    return v;
  };

  // Crossings of the two subregion boundaries between breakpoints.
  std::vector<double> crossings;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double a = xs[i], b = xs[i + 1];
    const double da = r.sub1.closure_lambda2(a) - r.sub2.closure_lambda2(a);
    const double db = r.sub1.closure_lambda2(b) - r.sub2.closure_lambda2(b);
    if (b <= std::min(r.sub1.lambda1_extent(), r.sub2.lambda1_extent()) && da * db < 0.0)
      crossings.push_back(a + (b - a) * da / (da - db));
  }
  xs.insert(xs.end(), crossings.begin(), crossings.end());
  std::sort(xs.begin(), xs.end());

  std::vector<RatePoint> pts;
  for (double x : xs) {
    const double v = at(x);
    pts.push_back({x, v});
    const double rv = right_of(x);
    if (rv < v) pts.push_back({x, rv});
  }

  std::vector<RatePoint> out;
  for (const RatePoint& p : pts) {
    if (!out.empty() && out.back() == p) continue;
    out.push_back(p);
    while (out.size() >= 3) {
      const RatePoint& a = out[out.size() - 3];
      const RatePoint& b = out[out.size() - 2];
      const RatePoint& c = out.back();
      const double cross = (b.lambda1 - a.lambda1) * (c.lambda2 - a.lambda2) -
                           (b.lambda2 - a.lambda2) * (c.lambda1 - a.lambda1);
      if (std::abs(cross) > 1e-14) break;
      out.erase(out.end() - 2);
    }
  }
  return out;
}

}  // namespace icstab
