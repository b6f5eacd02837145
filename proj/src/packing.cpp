#include "disksep/packing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace disksep {

namespace {

std::uint64_t edge_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

std::array<int, 3> sorted_triple(const std::array<int, 3>& f) {
  std::array<int, 3> s = f;
  std::sort(s.begin(), s.end());
  return s;
}

// Corner pairs per interior vertex, flattened: for every face incident to an
// interior vertex v, the other two corners (u, w).
struct AngleIndex {
  std::vector<int> interior;                   // ascending vertex ids
  std::vector<std::size_t> begin;              // CSR offsets, size interior+1
  std::vector<std::pair<int, int>> corners;    // (u, w) per incident face
  std::vector<Real> sin_pi_over_deg;           // sin(pi / face count), per vertex
};

AngleIndex build_angle_index(const Triangulation& t) {
  std::vector<bool> boundary(t.n, false);
  for (int v : t.outer_face) boundary[v] = true;

  std::vector<std::vector<std::pair<int, int>>> per_vertex(t.n);
  for (const auto& f : t.faces) {
    for (int c = 0; c < 3; ++c) {
      const int v = f[c];
      if (boundary[v]) continue;
      per_vertex[v].emplace_back(f[(c + 1) % 3], f[(c + 2) % 3]);
    }
  }

  AngleIndex ix;
  ix.begin.push_back(0);
  for (int v = 0; v < t.n; ++v) {
    if (boundary[v]) continue;
    ix.interior.push_back(v);
    ix.corners.insert(ix.corners.end(), per_vertex[v].begin(),
                      per_vertex[v].end());
    ix.begin.push_back(ix.corners.size());
    const auto deg = static_cast<Real>(per_vertex[v].size());
    ix.sin_pi_over_deg.push_back(std::sin(std::numbers::pi_v<Real> / deg));
  }
  return ix;
}

// Angle at the vertex of radius rv in the triangle of three pairwise tangent
// circles. The law-of-cosines form cancels catastrophically when the radii
// span many scales; the half-angle identity tan^2(a/2) = ru rw / (rv s) with
// s = rv + ru + rw is exact for tangent circles and stays fully conditioned.
template <class S>
S angle_at(S rv, S ru, S rw) {
  return 2 * std::atan2(std::sqrt(ru * rw), std::sqrt(rv * (rv + ru + rw)));
}

template <class S>
S angle_sum(const AngleIndex& ix, std::size_t vi, const std::vector<S>& r) {
  const S rv = r[static_cast<std::size_t>(ix.interior[vi])];
  S theta = 0;
  for (std::size_t p = ix.begin[vi]; p < ix.begin[vi + 1]; ++p) {
    const auto [u, w] = ix.corners[p];
    theta += angle_at(rv, r[static_cast<std::size_t>(u)],
                      r[static_cast<std::size_t>(w)]);
  }
  return theta;
}

template <class S>
S max_defect(const AngleIndex& ix, const std::vector<S>& r) {
  constexpr S two_pi = 2 * std::numbers::pi_v<S>;
  S worst = 0;
  for (std::size_t vi = 0; vi < ix.interior.size(); ++vi)
    worst = std::max(worst, std::abs(angle_sum(ix, vi, r) - two_pi));
  return worst;
}

// One Gauss-Seidel sweep of the uniform-neighbor angle-sum correction: replace
// each interior radius by the one that would make the angle sum exactly 2*pi
// if all neighbors had the uniform radius matching the current sum. The
// multiplicative step is clamped to [0.5, 2].
template <class S>
S sweep(const AngleIndex& ix, std::vector<S>& r) {
  constexpr S two_pi = 2 * std::numbers::pi_v<S>;
  S worst = 0;
  for (std::size_t vi = 0; vi < ix.interior.size(); ++vi) {
    const auto v = static_cast<std::size_t>(ix.interior[vi]);
    const S rv = r[v];
    const S theta = angle_sum(ix, vi, r);
    worst = std::max(worst, std::abs(theta - two_pi));
    const auto deg = static_cast<S>(ix.begin[vi + 1] - ix.begin[vi]);
    const S s = std::sin(theta / (2 * deg));
    const S uniform = rv * s / (1 - s);
    const S st = static_cast<S>(ix.sin_pi_over_deg[vi]);
    const S target = uniform * (1 - st) / st;
    const S factor = std::clamp(target / rv, S(0.5), S(2));
    r[v] = rv * factor;
  }
  return worst;
}

// Iterates until the true residual drops below tol or the sweep budget runs
// out. Returns (sweeps used, final residual). Every `window` sweeps the
// remaining geometric tail of the log-radius increments is extrapolated in one
// superstep (accepted only when it actually lowers the defect), which turns
// the slow linear tail into a handful of jumps.
template <class S>
std::pair<int, S> iterate_radii(const AngleIndex& ix, std::vector<S>& r, S tol,
                                int max_sweeps) {
  if (ix.interior.empty()) return {0, 0};
  constexpr int window = 8;
  constexpr S max_boost = 50;

  int used = 0;
  std::vector<S> snapshot;
  std::vector<S> candidate;
  S snapshot_defect = -1;

  while (used < max_sweeps) {
    if ((used % window) == 0) {
      snapshot = r;
      snapshot_defect = -2;  // filled by the first sweep of the window
    }
    const S in_sweep = sweep(ix, r);
    ++used;
    if (snapshot_defect == -2) snapshot_defect = in_sweep;
    if (in_sweep < tol) {
      const S residual = max_defect(ix, r);
      if (residual < tol) return {used, residual};
    }

    if ((used % window) == 0 && snapshot_defect > 0 && in_sweep > 0 &&
        in_sweep < snapshot_defect) {
      const S q = in_sweep / snapshot_defect;
      const S boost = std::min(q / (1 - q), max_boost);
      if (boost > 1) {
        candidate.assign(r.begin(), r.end());
        for (const int v : ix.interior) {
          const auto vs = static_cast<std::size_t>(v);
          candidate[vs] =
              r[vs] * std::exp(boost * std::log(r[vs] / snapshot[vs]));
        }
        const S before = max_defect(ix, r);
        std::swap(r, candidate);
        const S after = max_defect(ix, r);
        if (!(after < before)) std::swap(r, candidate);  // revert
      }
    }
  }
  return {used, max_defect(ix, r)};
}

// Face indices are stored shifted by one so that 0 marks an empty slot.
std::unordered_map<std::uint64_t, std::array<int, 2>> face_map(
    const Triangulation& t) {
  std::unordered_map<std::uint64_t, std::array<int, 2>> m;
  m.reserve(t.edges.size() * 2);
  for (std::size_t fi = 0; fi < t.faces.size(); ++fi) {
    const auto& f = t.faces[fi];
    for (int c = 0; c < 3; ++c) {
      auto& slot = m[edge_key(f[c], f[(c + 1) % 3])];
      if (slot[0] == 0)
        slot[0] = static_cast<int>(fi) + 1;
      else
        slot[1] = static_cast<int>(fi) + 1;
    }
  }
  return m;
}

}  // namespace

void Triangulation::validate() const {
  if (n < 3) throw std::invalid_argument("triangulation: needs n >= 3");
  const auto expect_edges = static_cast<std::size_t>(3 * n - 6);
  const auto expect_faces = static_cast<std::size_t>(2 * n - 4);
  if (edges.size() != expect_edges)
    throw std::invalid_argument("triangulation: edge count is not 3n - 6");
  if (faces.size() != expect_faces)
    throw std::invalid_argument("triangulation: face count is not 2n - 4");

  std::unordered_set<std::uint64_t> edge_set;
  edge_set.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("triangulation: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("triangulation: self-loop");
    if (!edge_set.insert(edge_key(u, v)).second)
      throw std::invalid_argument("triangulation: duplicate edge");
  }

  std::unordered_map<std::uint64_t, int> face_count;
  face_count.reserve(edges.size() * 2);
  for (const auto& f : faces) {
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
      throw std::invalid_argument("triangulation: degenerate face");
    for (int c = 0; c < 3; ++c) {
      const int u = f[c], v = f[(c + 1) % 3];
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw std::invalid_argument("triangulation: face vertex out of range");
      if (!edge_set.count(edge_key(u, v)))
        throw std::invalid_argument("triangulation: face side is not an edge");
      ++face_count[edge_key(u, v)];
    }
  }
  for (const auto& [key, cnt] : face_count)
    if (cnt != 2)
      throw std::invalid_argument(
          "triangulation: an edge does not lie on exactly two faces");
  if (face_count.size() != edges.size())
    throw std::invalid_argument("triangulation: an edge lies on no face");

  const auto outer = sorted_triple(outer_face);
  const bool present = std::any_of(
      faces.begin(), faces.end(),
      [&](const std::array<int, 3>& f) { return sorted_triple(f) == outer; });
  if (!present)
    throw std::invalid_argument("triangulation: outer face not in face list");
}

namespace {

// Propagates a consistent combinatorial orientation over the faces, starting
// from the outer face's stored triple: an edge shared by two faces appears in
// opposite directions in their oriented triples. Drawn with the outer triple
// counterclockwise, every internal face then winds clockwise.
std::vector<std::array<int, 3>> orient_faces(const Triangulation& t,
                                             int outer_idx) {
  const auto faces_of = face_map(t);
  std::vector<std::array<int, 3>> oriented(t.faces.size());
  std::vector<bool> done(t.faces.size(), false);

  oriented[static_cast<std::size_t>(outer_idx)] = t.outer_face;
  done[static_cast<std::size_t>(outer_idx)] = true;
  std::queue<int> queue;
  queue.push(outer_idx);
  while (!queue.empty()) {
    const int fi = queue.front();
    queue.pop();
    const auto& o = oriented[static_cast<std::size_t>(fi)];
    for (int c = 0; c < 3; ++c) {
      const int u = o[c], v = o[(c + 1) % 3];
      const auto& slot = faces_of.at(edge_key(u, v));
      const int gi = (slot[0] - 1 == fi) ? slot[1] - 1 : slot[0] - 1;
      if (gi < 0 || done[static_cast<std::size_t>(gi)]) continue;
      const auto& g = t.faces[static_cast<std::size_t>(gi)];
      // Orient g so that it contains the reversed edge v -> u.
      std::array<int, 3> og = g;
      const bool forward = (g[0] == v && g[1] == u) || (g[1] == v && g[2] == u) ||
                           (g[2] == v && g[0] == u);
      if (!forward) og = {g[0], g[2], g[1]};
      oriented[static_cast<std::size_t>(gi)] = og;
      done[static_cast<std::size_t>(gi)] = true;
      queue.push(gi);
    }
  }
  for (bool d : done)
    if (!d) throw std::invalid_argument("layout: disconnected face structure");
  return oriented;
}

// Straightens every center toward the tangency distances of its neighbors,
// weighting each edge by 1/target^2 so that relative (not absolute) residuals
// equalize across the size hierarchy. Vertices move in decreasing radius
// order; the first two outer vertices stay pinned as the gauge. Fixed sweep
// count keeps the result deterministic.
constexpr int kPolishSweeps = 50;

void polish_positions(const Triangulation& t, const std::vector<Real>& radii,
                      std::vector<Point2>& pos) {
  std::vector<std::vector<int>> neighbors(static_cast<std::size_t>(t.n));
  for (const auto& [u, v] : t.edges) {
    neighbors[static_cast<std::size_t>(u)].push_back(v);
    neighbors[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<int> order(static_cast<std::size_t>(t.n));
  for (int v = 0; v < t.n; ++v) order[static_cast<std::size_t>(v)] = v;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Real ra = radii[static_cast<std::size_t>(a)];
    const Real rb = radii[static_cast<std::size_t>(b)];
    return ra > rb || (ra == rb && a < b);
  });

  for (int sweep = 0; sweep < kPolishSweeps; ++sweep) {
    for (const int v : order) {
      if (v == t.outer_face[0] || v == t.outer_face[1]) continue;
      const auto vs = static_cast<std::size_t>(v);
      Real sx = 0, sy = 0, sw = 0;
      for (const int u : neighbors[vs]) {
        const auto us = static_cast<std::size_t>(u);
        const Real dx = pos[vs].x - pos[us].x, dy = pos[vs].y - pos[us].y;
        const Real len = std::sqrt(dx * dx + dy * dy);
        const Real target = radii[vs] + radii[us];
        const Real w = 1 / (target * target);
        sx += w * (pos[us].x + dx * (target / len));
        sy += w * (pos[us].y + dy * (target / len));
        sw += w;
      }
      pos[vs] = {sx / sw, sy / sw};
    }
  }
}

}  // namespace

std::vector<Point2> layout(const std::vector<Real>& radii,
                           const Triangulation& t) {
  t.validate();
  if (radii.size() != static_cast<std::size_t>(t.n))
    throw std::invalid_argument("layout: radii count does not match n");

  const auto outer_sorted = sorted_triple(t.outer_face);
  int outer_idx = -1;
  for (std::size_t fi = 0; fi < t.faces.size(); ++fi)
    if (sorted_triple(t.faces[fi]) == outer_sorted) {
      outer_idx = static_cast<int>(fi);
      break;
    }
  const auto oriented = orient_faces(t, outer_idx);

  std::vector<std::vector<int>> faces_at(static_cast<std::size_t>(t.n));
  for (std::size_t fi = 0; fi < t.faces.size(); ++fi)
    for (int v : t.faces[fi])
      faces_at[static_cast<std::size_t>(v)].push_back(static_cast<int>(fi));

  std::vector<Point2> pos(static_cast<std::size_t>(t.n));
  std::vector<bool> placed(static_cast<std::size_t>(t.n), false);
  std::vector<int> placed_count(t.faces.size(), 0);

  // Placeable vertices, largest radius first; ties go to the smaller id.
  auto heap_less = [&](const std::pair<Real, int>& a,
                       const std::pair<Real, int>& b) {
    return a.first < b.first || (a.first == b.first && a.second > b.second);
  };
  std::priority_queue<std::pair<Real, int>, std::vector<std::pair<Real, int>>,
                      decltype(heap_less)>
      ready(heap_less);

  auto mark_placed = [&](int v) {
    placed[static_cast<std::size_t>(v)] = true;
    for (const int fi : faces_at[static_cast<std::size_t>(v)]) {
      if (++placed_count[static_cast<std::size_t>(fi)] != 2) continue;
      for (const int w : t.faces[static_cast<std::size_t>(fi)])
        if (!placed[static_cast<std::size_t>(w)])
          ready.emplace(radii[static_cast<std::size_t>(w)], w);
    }
  };

  const int a = t.outer_face[0], b = t.outer_face[1], c = t.outer_face[2];
  pos[static_cast<std::size_t>(a)] = {0, 0};
  pos[static_cast<std::size_t>(b)] = {radii[static_cast<std::size_t>(a)] +
                                          radii[static_cast<std::size_t>(b)],
                                      0};
  {
    // Third outer vertex above the x-axis: the outer triple reads
    // counterclockwise, which orient_faces() assumed.
    const Real d = pos[static_cast<std::size_t>(b)].x;
    const Real ra = radii[static_cast<std::size_t>(a)] +
                    radii[static_cast<std::size_t>(c)];
    const Real rb = radii[static_cast<std::size_t>(b)] +
                    radii[static_cast<std::size_t>(c)];
    const Real along = (d * d + ra * ra - rb * rb) / (2 * d);
    const Real up = std::sqrt(std::max(ra * ra - along * along, 0.0L));
    pos[static_cast<std::size_t>(c)] = {along, up};
  }
  mark_placed(a);
  mark_placed(b);
  mark_placed(c);

  auto place_from = [&](int fi, int v) {
    // Anchors are the two placed vertices of face fi; the side follows from
    // the face orientation: internal faces wind clockwise in this drawing.
    const auto& o = oriented[static_cast<std::size_t>(fi)];
    int p = -1, q = -1;
    for (int i = 0; i < 3; ++i) {
      if (o[i] == v) {
        p = o[(i + 1) % 3];
        q = o[(i + 2) % 3];
        break;
      }
    }
    // Oriented face reads (v, p, q): it contains directed edge p -> q, so v
    // lies clockwise of p -> q, i.e. cross(q - p, v - p) < 0.
    const auto ps = static_cast<std::size_t>(p), qs = static_cast<std::size_t>(q);
    const Real ex = pos[qs].x - pos[ps].x, ey = pos[qs].y - pos[ps].y;
    const Real blen = std::sqrt(ex * ex + ey * ey);
    const Real alen = radii[ps] + radii[static_cast<std::size_t>(v)];
    const Real clen = radii[qs] + radii[static_cast<std::size_t>(v)];
    const Real cosphi = std::clamp(
        (alen * alen + blen * blen - clen * clen) / (2 * alen * blen), -1.0L,
        1.0L);
    const Real sinphi = std::sqrt(std::max(1 - cosphi * cosphi, 0.0L));
    const Real ux = ex / blen, uy = ey / blen;
    const Real side = -1.0L;
    pos[static_cast<std::size_t>(v)] = {
        pos[ps].x + alen * (cosphi * ux - side * sinphi * uy),
        pos[ps].y + alen * (cosphi * uy + side * sinphi * ux)};
  };

  while (!ready.empty()) {
    const auto [rv, v] = ready.top();
    ready.pop();
    if (placed[static_cast<std::size_t>(v)]) continue;

    // Among the faces that can anchor v, prefer the largest anchor pair.
    int best_face = -1;
    Real best_anchor = -1;
    for (const int fi : faces_at[static_cast<std::size_t>(v)]) {
      if (placed_count[static_cast<std::size_t>(fi)] != 2) continue;
      Real anchor = std::numeric_limits<Real>::infinity();
      for (const int w : t.faces[static_cast<std::size_t>(fi)])
        if (w != v) anchor = std::min(anchor, radii[static_cast<std::size_t>(w)]);
      if (anchor > best_anchor) {
        best_anchor = anchor;
        best_face = fi;
      }
    }
    if (best_face < 0) continue;
    place_from(best_face, v);
    mark_placed(v);
  }

  for (int v = 0; v < t.n; ++v)
    if (!placed[static_cast<std::size_t>(v)])
      throw std::invalid_argument("layout: disconnected face structure");

  polish_positions(t, radii, pos);
  return pos;
}

Packing compute_packing(const Triangulation& t, Real tol, int max_iter,
                        Real boundary_radius) {
  t.validate();
  if (!(tol > 0) || max_iter < 0 || !(boundary_radius > 0))
    throw std::invalid_argument("compute_packing: bad tolerance or budget");

  const AngleIndex ix = build_angle_index(t);
  std::vector<Real> radii(static_cast<std::size_t>(t.n), boundary_radius);

  if (!ix.interior.empty()) {
    // Bulk of the convergence in double, final polish in Real.
    int budget = max_iter;
    const double coarse_tol = static_cast<double>(std::max(tol, 1e-12L));
    std::vector<double> rd(radii.begin(), radii.end());
    const auto [used_d, res_d] =
        iterate_radii<double>(ix, rd, coarse_tol, std::max(budget / 2, 1));
    budget -= used_d;
    std::copy(rd.begin(), rd.end(), radii.begin());

    const auto [used, residual] = iterate_radii<Real>(ix, radii, tol, budget);
    budget -= used;
    if (residual >= tol)
      throw ConvergenceError("compute_packing: no convergence after " +
                                 std::to_string(max_iter) + " sweeps",
                             residual, max_iter);
  }

  const std::vector<Point2> centers = layout(radii, t);
  Packing p;
  p.disks.reserve(static_cast<std::size_t>(t.n));
  for (int v = 0; v < t.n; ++v)
    p.disks.push_back({centers[static_cast<std::size_t>(v)],
                       radii[static_cast<std::size_t>(v)]});
  return p;
}

namespace {

constexpr std::size_t kExhaustivePairLimit = 500;

struct SlackScan {
  Real min_slack = std::numeric_limits<Real>::infinity();

  void pair(const Disk& a, const Disk& b) {
    const Real sum = a.radius + b.radius;
    const Real slack = (dist(a.center, b.center) - sum) / sum;
    min_slack = std::min(min_slack, slack);
  }
};

}  // namespace

PackingReport validate_packing(const Packing& p, int n,
                               std::span<const std::pair<int, int>> edges,
                               Real tol_rel) {
  if (p.disks.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("validate_packing: size mismatch");

  PackingReport report;
  bool radii_ok = true;
  for (const Disk& d : p.disks)
    radii_ok = radii_ok && std::isfinite(d.radius) && d.radius > 0 &&
               std::isfinite(d.center.x) && std::isfinite(d.center.y);

  std::unordered_set<std::uint64_t> edge_set;
  edge_set.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("validate_packing: edge out of range");
    edge_set.insert(edge_key(u, v));
    const Disk& du = p.disks[static_cast<std::size_t>(u)];
    const Disk& dv = p.disks[static_cast<std::size_t>(v)];
    const Real sum = du.radius + dv.radius;
    const Real residual = std::abs(dist(du.center, dv.center) - sum) / sum;
    report.max_tangency_residual =
        std::max(report.max_tangency_residual, residual);
  }

  SlackScan scan;
  const auto nn = static_cast<std::size_t>(n);
  if (nn <= kExhaustivePairLimit) {
    for (std::size_t i = 0; i < nn; ++i)
      for (std::size_t j = i + 1; j < nn; ++j)
        if (!edge_set.count(edge_key(static_cast<int>(i), static_cast<int>(j))))
          scan.pair(p.disks[i], p.disks[j]);
  } else {
    // Radius-class grids: disks are visited largest first and checked against
    // every class of equal or larger radius with cell size 4 * 2^class, so any
    // pair at distance up to one cell shares a 3x3 neighborhood. Pairs the
    // grid skips are separated by more than their radius sum (positive slack).
    std::vector<std::size_t> order(nn);
    for (std::size_t i = 0; i < nn; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return p.disks[a].radius > p.disks[b].radius ||
             (p.disks[a].radius == p.disks[b].radius && a < b);
    });
    using CellId = std::pair<std::int64_t, std::int64_t>;
    std::map<int, std::map<CellId, std::vector<std::size_t>>> grids;
    for (std::size_t oi = 0; oi < nn; ++oi) {
      const std::size_t i = order[oi];
      const Disk& di = p.disks[i];
      if (!(di.radius > 0)) continue;
      const int cls = std::ilogb(di.radius);
      for (const auto& [gcls, grid] : grids) {
        const Real cell = std::ldexp(1.0L, gcls + 2);
        const auto cx = static_cast<std::int64_t>(std::floor(di.center.x / cell));
        const auto cy = static_cast<std::int64_t>(std::floor(di.center.y / cell));
        for (std::int64_t dx = -1; dx <= 1; ++dx)
          for (std::int64_t dy = -1; dy <= 1; ++dy) {
            const auto it = grid.find({cx + dx, cy + dy});
            if (it == grid.end()) continue;
            for (std::size_t j : it->second)
              if (!edge_set.count(
                      edge_key(static_cast<int>(i), static_cast<int>(j))))
                scan.pair(di, p.disks[j]);
          }
      }
      const Real cell = std::ldexp(1.0L, cls + 2);
      grids[cls][{static_cast<std::int64_t>(std::floor(di.center.x / cell)),
                  static_cast<std::int64_t>(std::floor(di.center.y / cell))}]
          .push_back(i);
    }
  }
  report.min_separation_slack = scan.min_slack;
  report.ok = radii_ok && report.max_tangency_residual <= tol_rel &&
              report.min_separation_slack >= -tol_rel;
  return report;
}

PackingReport validate_packing(const Packing& p, const Triangulation& t,
                               Real tol_rel) {
  return validate_packing(p, t.n, t.edges, tol_rel);
}

}  // namespace disksep
