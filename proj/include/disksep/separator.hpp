#pragma once

#include <cstdint>
#include <vector>

#include "disksep/geometry.hpp"
#include "disksep/packing.hpp"

namespace disksep {

/// Packing translated and scaled so that the smallest k-enclosing disk of the
/// centers, k = ceil(n/10), is the unit disk at the origin. The transform maps
/// an original center c to (c + translation) * scale.
struct NormalizedPacking {
  std::vector<Disk> disks;
  int k = 0;
  Point2 translation;
  Real scale = 1;
};

enum class SelectionMode { randomized, derandomized };

/// Partition of the vertices induced by the cutting circle of radius x at the
/// origin: separator holds every vertex whose disk meets the circle (closed),
/// inside/outside split the rest by center norm. All three lists are sorted.
struct SeparatorResult {
  Real x = 0;
  std::vector<int> separator;
  std::vector<int> inside;
  std::vector<int> outside;
  SelectionMode mode = SelectionMode::randomized;
};

/// Size-bound certificate: rho[i] = surrogate_radius(disk_i, disk of radius 2
/// at the origin). sum_rho_sq <= 4 for interior-disjoint packings,
/// expected_bound = sum of 2 rho_i bounds the expected separator size,
/// cs_bound = 2 sqrt(n) sqrt(sum_rho_sq) <= theorem_bound = 4 sqrt(n).
struct Certificate {
  std::vector<Real> rho;
  Real sum_rho_sq = 0;
  Real expected_bound = 0;
  Real cs_bound = 0;
  Real theorem_bound = 0;
};

struct SizeEstimate {
  Real mean = 0;
  Real std_dev = 0;
};

/// Smallest instance the pipeline accepts; below this k = ceil(n/10) < 2 and
/// the caller should treat the whole graph as small.
inline constexpr int kRecursionBaseSize = 11;

/// Throws std::invalid_argument("below recursion base") for n < 11 and
/// std::invalid_argument("degenerate normalization") when the k-enclosing disk
/// of the centers has zero radius.
NormalizedPacking normalize(const Packing& p);

/// x drawn uniformly from [1, 2) via mt19937_64(seed) and uniform01.
SeparatorResult select_random(const NormalizedPacking& np, std::uint64_t seed);

/// Evaluates |S(x)| at every breakpoint |c_i| +- r_i clipped to [1, 2], at 1
/// and 2, and at the midpoint of every open interval between consecutive
/// breakpoints; returns the smallest minimizing x. The minimum over a
/// partition of [1, 2] is at most the mean, so |S| <= floor(4 sqrt(n)).
SeparatorResult select_derandomized(const NormalizedPacking& np);

Certificate certificate(const NormalizedPacking& np);

/// Monte Carlo mean and sample standard deviation of |S| over independent
/// uniform draws of x. Deterministic function of (np, samples, seed).
SizeEstimate estimate_expected_size(const NormalizedPacking& np, int samples,
                                    std::uint64_t seed);

}  // namespace disksep
