#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace disksep {

// Scalar used across the library. Packings of subdivision-heavy triangulations
// contain disks many orders of magnitude smaller than the boundary ones; the
// extended mantissa keeps tangency residuals measurable relative to such radii.
using Real = long double;

struct Point2 {
  Real x{0};
  Real y{0};
};

struct Disk {
  Point2 center;
  Real radius{0};
};

/// Closed interval of cut radii. Empty iff hi < lo.
struct Interval {
  Real lo{0};
  Real hi{0};
};

/// Nine unit disks whose union covers the closed disk of radius 2 at the
/// origin: one at the origin, eight centered at distance 1.5 every 45 degrees.
struct CoverWitness {
  std::array<Disk, 9> disks;
};

Real norm(Point2 p);
Real dist(Point2 a, Point2 b);

/// [|c| - r, |c| + r]; the circle of radius x > 0 centered at the origin meets
/// the closed disk d iff x lies in this interval.
Interval circle_hit_interval(const Disk& d);

/// Closed-set convention: tangency counts as intersection.
bool circle_intersects_disk(const Disk& d, Real x);

/// Area of the intersection of two closed disks. Zero when disjoint or
/// externally tangent, pi * min(r)^2 when one contains the other.
Real lens_area(const Disk& a, const Disk& b);

/// Radius of a disk with the same area as b's overlap with d2: b.radius when b
/// lies inside d2, sqrt(lens_area / pi) otherwise. Always within
/// [0, min(b.radius, d2.radius)].
Real surrogate_radius(const Disk& b, const Disk& d2);

/// Minimum-radius closed disk containing all points. Throws on empty input.
/// The returned radius is the exact maximum center-to-point distance, so every
/// input point satisfies the closed containment test in floating point.
Disk smallest_enclosing_disk(std::span<const Point2> points);

/// Input sizes up to this bound use exact enumeration of all disks determined
/// by 1, 2 or 3 input points; larger inputs use a grid-shifted (1 + eps)
/// approximation with eps = 0.1.
inline constexpr std::size_t kExactEnumerationLimit = 200;
inline constexpr Real kApproxEpsilon = 0.1L;

/// Minimum-radius closed disk containing at least k of the points. Exact below
/// exact_limit, (1 + 0.1)-approximate above. Ties between optimal disks go to
/// the lexicographically smallest center (x, then y). Throws when k is out of
/// range. The returned radius is an exact kth-smallest distance, so the closed
/// count of the result is >= k in floating point, not merely up to rounding.
Disk smallest_k_enclosing_disk(std::span<const Point2> points, std::size_t k,
                               std::size_t exact_limit = kExactEnumerationLimit);

/// Number of points in the closed disk.
std::size_t count_in_disk(std::span<const Point2> points, const Disk& d);

CoverWitness nine_cover_witness();
bool witness_covers(const CoverWitness& w, Point2 p);

}  // namespace disksep
