#pragma once

// Stable-throughput regions of the two coupled queues.
//
// Each region is the union of two subregions, one per dominant system. In the
// subregion where S_k sends dummy packets, the other user's queue is served at
// a fixed rate (the box bound), and user k's service rate falls linearly with
// the other queue's busy fraction (the line constraint).

#include <utility>
#include <vector>

#include "icstab/channel.hpp"

namespace icstab {

enum class Axis { Lambda1 = 1, Lambda2 = 2 };

struct RatePoint {
  double lambda1 = 0.0;
  double lambda2 = 0.0;

  friend bool operator==(const RatePoint&, const RatePoint&) = default;
};

// Line user: the dummy-transmitting source of the dominant system.
// Box user: the source that keeps its own queue discipline.
//
//   box user:  rate < box_value
//   line user: rate < solo_rate - coupling * (box rate / box_value)
//
// equivalently c1*lambda1 + c2*lambda2 < 1 together with the box bound.
// A user offering zero traffic is always stable, which keeps subregions with
// a zero service rate well defined (they collapse onto an axis).
struct SubRegion {
  Axis box_axis = Axis::Lambda2;
  double box_value = 0.0;
  double solo_rate = 0.0;
  double coupling = 0.0;

  double c1() const;
  double c2() const;
  bool degenerate() const { return box_value <= 0.0 || solo_rate <= 0.0; }
  bool contains(double lambda1, double lambda2) const;
  // sup { lambda2 : contains(lambda1, lambda2) }, 0 when the set is empty.
  double sup_lambda2(double lambda1) const;
  // Largest lambda1 in the closure of the subregion.
  double lambda1_extent() const;
  // Same supremum over the closure, defined for 0 <= lambda1 <= lambda1_extent().
  double closure_lambda2(double lambda1) const;
};

struct AccessProbabilities {
  double q1 = 1.0;
  double q2 = 1.0;

  void validate() const;
  bool saturated() const { return q1 == 1.0 && q2 == 1.0; }
};

enum class AccessMode { Saturated, RandomAccess };

struct StabilityRegion {
  SubRegion sub1;  // S1 dummy-transmits; box on lambda2
  SubRegion sub2;  // S2 dummy-transmits; box on lambda1
  SuccessProfile profile;
  AccessMode access = AccessMode::Saturated;
  AccessProbabilities q;
  bool degenerate = false;
};

StabilityRegion region_general(const SuccessProfile& profile);
StabilityRegion region_random_access(const SuccessProfile& profile, double q1, double q2);

// (p1_both, p2_both): where both line constraints of the saturated region meet.
RatePoint corner_point(const SuccessProfile& profile);
// Point shared by both subregion boundaries for any access probabilities.
RatePoint shared_corner(const StabilityRegion& region);

bool is_convex(const SuccessProfile& profile);
// The IAN region is convex iff gamma1 * gamma2 <= this value (for every power).
double ian_convexity_threshold(const Topology& topology);
// Whether SIC at D_link beats IAN, via the closed-form inequality.
bool sic_preferred(Link link, const ChannelParams& params);

bool contains(const StabilityRegion& region, double lambda1, double lambda2);
double boundary_lambda2(const StabilityRegion& region, double lambda1);
// Upper boundary of the closure, ordered by increasing lambda1, from the
// lambda2 axis to the lambda1 axis. Degenerate regions give the endpoints of
// the surviving segment.
std::vector<RatePoint> vertices(const StabilityRegion& region);

}  // namespace icstab
