#include "disksep/separator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "disksep/rng.hpp"

namespace disksep {

namespace {

struct HitIntervals {
  std::vector<Real> lo, hi, center_norm;

  explicit HitIntervals(const NormalizedPacking& np) {
    const std::size_t n = np.disks.size();
    lo.reserve(n);
    hi.reserve(n);
    center_norm.reserve(n);
    for (const Disk& d : np.disks) {
      const Interval iv = circle_hit_interval(d);
      lo.push_back(iv.lo);
      hi.push_back(iv.hi);
      center_norm.push_back(norm(d.center));
    }
  }

  int count_hits(Real x) const {
    int c = 0;
    for (std::size_t i = 0; i < lo.size(); ++i)
      c += lo[i] <= x && x <= hi[i];
    return c;
  }
};

SeparatorResult build_result(const HitIntervals& iv, Real x,
                             SelectionMode mode) {
  SeparatorResult r;
  r.x = x;
  r.mode = mode;
  for (std::size_t i = 0; i < iv.lo.size(); ++i) {
    const int v = static_cast<int>(i);
    if (iv.lo[i] <= x && x <= iv.hi[i])
      r.separator.push_back(v);
    else if (iv.center_norm[i] < x)
      r.inside.push_back(v);
    else
      r.outside.push_back(v);
  }
  return r;
}

}  // namespace

NormalizedPacking normalize(const Packing& p) {
  const auto n = static_cast<int>(p.disks.size());
  if (n < kRecursionBaseSize)
    throw std::invalid_argument(
        "normalize: below recursion base (n < 11, treat the graph as small)");

  std::vector<Point2> centers;
  centers.reserve(p.disks.size());
  for (const Disk& d : p.disks) centers.push_back(d.center);

  const int k = (n + 9) / 10;
  const Disk enclosing =
      smallest_k_enclosing_disk(centers, static_cast<std::size_t>(k));
  if (!(enclosing.radius > 0))
    throw std::invalid_argument(
        "normalize: degenerate normalization (zero-radius k-enclosing disk)");

  NormalizedPacking np;
  np.k = k;
  np.translation = {-enclosing.center.x, -enclosing.center.y};
  np.scale = 1 / enclosing.radius;
  np.disks.reserve(p.disks.size());
  for (const Disk& d : p.disks)
    np.disks.push_back({{(d.center.x + np.translation.x) * np.scale,
                         (d.center.y + np.translation.y) * np.scale},
                        d.radius * np.scale});
  return np;
}

SeparatorResult select_random(const NormalizedPacking& np, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const Real x = 1 + static_cast<Real>(uniform01(gen));
  return build_result(HitIntervals(np), x, SelectionMode::randomized);
}

SeparatorResult select_derandomized(const NormalizedPacking& np) {
  const HitIntervals iv(np);

  std::vector<Real> breakpoints{1.0L, 2.0L};
  for (std::size_t i = 0; i < iv.lo.size(); ++i) {
    if (iv.lo[i] >= 1 && iv.lo[i] <= 2) breakpoints.push_back(iv.lo[i]);
    if (iv.hi[i] >= 1 && iv.hi[i] <= 2) breakpoints.push_back(iv.hi[i]);
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                    breakpoints.end());

  std::vector<Real> candidates;
  candidates.reserve(breakpoints.size() * 2);
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    candidates.push_back(breakpoints[i]);
    if (i + 1 < breakpoints.size())
      candidates.push_back((breakpoints[i] + breakpoints[i + 1]) / 2);
  }

  Real best_x = candidates.front();
  int best_count = iv.count_hits(best_x);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const int c = iv.count_hits(candidates[i]);
    if (c < best_count) {
      best_count = c;
      best_x = candidates[i];
    }
  }
  return build_result(iv, best_x, SelectionMode::derandomized);
}

Certificate certificate(const NormalizedPacking& np) {
  const Disk d2{{0, 0}, 2};
  Certificate cert;
  cert.rho.reserve(np.disks.size());
  for (const Disk& d : np.disks) cert.rho.push_back(surrogate_radius(d, d2));

  for (const Real rho : cert.rho) {
    cert.sum_rho_sq += rho * rho;
    cert.expected_bound += 2 * rho;
  }
  const Real root_n = std::sqrt(static_cast<Real>(np.disks.size()));
  cert.cs_bound = 2 * root_n * std::sqrt(cert.sum_rho_sq);
  cert.theorem_bound = 4 * root_n;
  return cert;
}

SizeEstimate estimate_expected_size(const NormalizedPacking& np, int samples,
                                    std::uint64_t seed) {
  if (samples < 1)
    throw std::invalid_argument("estimate_expected_size: samples must be >= 1");
  const HitIntervals iv(np);
  std::mt19937_64 gen(seed);

  std::vector<int> counts;
  counts.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    const Real x = 1 + static_cast<Real>(uniform01(gen));
    counts.push_back(iv.count_hits(x));
  }

  SizeEstimate est;
  Real sum = 0;
  for (int c : counts) sum += c;
  est.mean = sum / static_cast<Real>(samples);
  if (samples > 1) {
    Real ss = 0;
    for (int c : counts) {
      const Real d = c - est.mean;
      ss += d * d;
    }
    est.std_dev = std::sqrt(ss / static_cast<Real>(samples - 1));
  }
  return est;
}

}  // namespace disksep
