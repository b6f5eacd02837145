#pragma once

#include <array>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "disksep/geometry.hpp"

namespace disksep {

/// Triangulation of the sphere with one designated outer face. Vertex ids are
/// dense and 0-based; faces are unordered triples.
struct Triangulation {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::array<int, 3>> faces;
  std::array<int, 3> outer_face{};

  /// Checks the structural invariants: simple graph, |E| = 3n - 6,
  /// |F| = 2n - 4, every face a triangle of existing edges, every edge on
  /// exactly two faces, outer_face present. Throws std::invalid_argument.
  void validate() const;
};

/// Vertex-indexed disks realizing a triangulation by tangency.
struct Packing {
  std::vector<Disk> disks;
};

struct PackingReport {
  Real max_tangency_residual = 0;
  Real min_separation_slack = std::numeric_limits<Real>::infinity();
  bool ok = false;
};

struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& msg, Real residual, int sweeps_used)
      : std::runtime_error(msg), max_residual(residual), sweeps(sweeps_used) {}
  Real max_residual;
  int sweeps;
};

// The angle-sum tolerance drives the achievable tangency residual through the
// scale hierarchy (deep instances amplify radius errors by roughly the inverse
// of the smallest radius), so the default sits close to the extended-precision
// noise floor rather than at the validation tolerance.
inline constexpr Real kDefaultAngleTol = 1e-15L;
inline constexpr Real kDefaultPackingTolRel = 1e-6L;
inline constexpr int kDefaultMaxIterations = 100000;

/// Kissing-disk realization of t: the three outer-face disks are fixed at
/// boundary_radius and mutually tangent, interior radii are adjusted until
/// every interior angle sum is within tol of 2*pi, then centers are placed by
/// layout(). Throws ConvergenceError after max_iter sweeps, or
/// std::invalid_argument for an invalid triangulation.
Packing compute_packing(const Triangulation& t, Real tol = kDefaultAngleTol,
                        int max_iter = kDefaultMaxIterations,
                        Real boundary_radius = 1.0L);

/// Places centers for converged radii: the first outer edge goes on the
/// positive x-axis, the rest follows by breadth-first traversal of faces,
/// each new center fixed by the law of cosines from two placed neighbors.
/// Deterministic: identical input yields bit-identical output.
std::vector<Point2> layout(const std::vector<Real>& radii,
                           const Triangulation& t);

/// Checks the packing invariants at relative tolerance tol_rel: every edge
/// tangent within tol_rel * (r_u + r_v), every non-adjacent pair separated by
/// at least -tol_rel relative slack, all radii positive and finite.
/// Non-adjacent pairs are enumerated exhaustively for n <= 500 and through a
/// radius-class grid above; pairs the grid skips have relative slack > 0, so
/// ok is exact and min_separation_slack is exact whenever it is below ~1.
PackingReport validate_packing(const Packing& p, const Triangulation& t,
                               Real tol_rel = kDefaultPackingTolRel);
PackingReport validate_packing(const Packing& p, int n,
                               std::span<const std::pair<int, int>> edges,
                               Real tol_rel = kDefaultPackingTolRel);

}  // namespace disksep
