#include "disksep/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace disksep {

namespace {

constexpr Real kPi = std::numbers::pi_v<Real>;

Real sq_dist(Point2 a, Point2 b) {
  const Real dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

bool lex_less(Point2 a, Point2 b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

std::optional<Point2> circumcenter(Point2 a, Point2 b, Point2 c) {
  const Real bx = b.x - a.x, by = b.y - a.y;
  const Real cx = c.x - a.x, cy = c.y - a.y;
  const Real d = 2 * (bx * cy - by * cx);
  if (d == 0) return std::nullopt;
  const Real b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  return Point2{a.x + (cy * b2 - by * c2) / d, a.y + (bx * c2 - cx * b2) / d};
}

}  // namespace

Real norm(Point2 p) { return std::sqrt(p.x * p.x + p.y * p.y); }

Real dist(Point2 a, Point2 b) { return std::sqrt(sq_dist(a, b)); }

Interval circle_hit_interval(const Disk& d) {
  const Real c = norm(d.center);
  return {c - d.radius, c + d.radius};
}

bool circle_intersects_disk(const Disk& d, Real x) {
  const Interval iv = circle_hit_interval(d);
  return iv.lo <= x && x <= iv.hi;
}

Real lens_area(const Disk& a, const Disk& b) {
  const Real ra = a.radius, rb = b.radius;
  const Real d2 = sq_dist(a.center, b.center);
  const Real sum = ra + rb, diff = ra - rb;
  if (d2 >= sum * sum) return 0.0L;
  const Real rmin = std::min(ra, rb);
  const Real nested = kPi * rmin * rmin;
  if (d2 <= diff * diff) return nested;
  const Real d = std::sqrt(d2);
  const Real ca = std::clamp((d2 + ra * ra - rb * rb) / (2 * d * ra), -1.0L, 1.0L);
  const Real cb = std::clamp((d2 + rb * rb - ra * ra) / (2 * d * rb), -1.0L, 1.0L);
  const Real chord2 = std::max((sum * sum - d2) * (d2 - diff * diff), 0.0L);
  const Real area =
      ra * ra * std::acos(ca) + rb * rb * std::acos(cb) - 0.5L * std::sqrt(chord2);
  return std::clamp(area, 0.0L, nested);
}

Real surrogate_radius(const Disk& b, const Disk& d2) {
  const Real reach = dist(b.center, d2.center) + b.radius;
  if (reach <= d2.radius) return b.radius;
  const Real rho = std::sqrt(lens_area(b, d2) / kPi);
  return std::min(rho, std::min(b.radius, d2.radius));
}

std::size_t count_in_disk(std::span<const Point2> points, const Disk& d) {
  std::size_t c = 0;
  for (const Point2& p : points) c += dist(p, d.center) <= d.radius;
  return c;
}

Disk smallest_enclosing_disk(std::span<const Point2> points) {
  if (points.empty())
    throw std::invalid_argument("smallest_enclosing_disk: empty point set");

  std::vector<Point2> p(points.begin(), points.end());
  std::mt19937_64 gen(0x5d15ea5e0b5e55edULL);
  std::shuffle(p.begin(), p.end(), gen);

  Point2 c = p[0];
  Real r2 = 0;
  auto covers = [&](Point2 q) { return sq_dist(q, c) <= r2 * (1 + 1e-18L); };

  for (std::size_t i = 1; i < p.size(); ++i) {
    if (covers(p[i])) continue;
    c = p[i];
    r2 = 0;
    for (std::size_t j = 0; j < i; ++j) {
      if (covers(p[j])) continue;
      c = {(p[i].x + p[j].x) / 2, (p[i].y + p[j].y) / 2};
      r2 = sq_dist(c, p[i]);
      for (std::size_t l = 0; l < j; ++l) {
        if (covers(p[l])) continue;
        if (auto cc = circumcenter(p[i], p[j], p[l])) {
          c = *cc;
          r2 = sq_dist(c, p[i]);
        }
      }
    }
  }

  // Exact closed containment: the radius is the measured farthest distance.
  Real r = 0;
  for (const Point2& q : points) r = std::max(r, dist(q, c));
  return {c, r};
}

namespace {

struct KDiskSearch {
  KDiskSearch(std::span<const Point2> points, std::size_t want)
      : pts(points), k(want) {}

  std::span<const Point2> pts;
  std::size_t k;
  std::vector<Real> scratch;
  Point2 best_c{};
  Real best_r2 = std::numeric_limits<Real>::infinity();
  bool have = false;

  void consider(Point2 c, std::span<const std::size_t> subset = {}) {
    scratch.clear();
    if (subset.empty()) {
      if (have) {
        std::size_t cnt = 0;
        for (const Point2& p : pts) cnt += sq_dist(p, c) <= best_r2;
        if (cnt < k) return;
      }
      for (const Point2& p : pts) scratch.push_back(sq_dist(p, c));
    } else {
      if (have) {
        std::size_t cnt = 0;
        for (std::size_t i : subset) cnt += sq_dist(pts[i], c) <= best_r2;
        if (cnt < k) return;
      }
      for (std::size_t i : subset) scratch.push_back(sq_dist(pts[i], c));
    }
    if (scratch.size() < k) return;
    std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end());
    const Real r2 = scratch[k - 1];
    if (!have || r2 < best_r2 || (r2 == best_r2 && lex_less(c, best_c))) {
      have = true;
      best_c = c;
      best_r2 = r2;
    }
  }

  Disk result() const { return {best_c, std::sqrt(best_r2)}; }
};

Disk smallest_k_enclosing_exact(std::span<const Point2> pts, std::size_t k) {
  const std::size_t n = pts.size();
  KDiskSearch search(pts, k);
  for (std::size_t i = 0; i < n; ++i) search.consider(pts[i]);
  if (k >= 2) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        search.consider({(pts[i].x + pts[j].x) / 2, (pts[i].y + pts[j].y) / 2});
  }
  if (k >= 3) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t l = j + 1; l < n; ++l)
          if (auto cc = circumcenter(pts[i], pts[j], pts[l]))
            search.consider(*cc);
  }
  return search.result();
}

// Grid-shifted (1 + eps) approximation. Stage one tries every input point as a
// center, which is a 2-approximation; stage two refines over a grid of pitch
// eps * r1 / sqrt(2) restricted to cells whose 3x3 block (cell size 2 * r1)
// holds at least k points. The nearest grid vertex to the optimal center is
// within eps * r* of it, so the result radius is at most (1 + eps) * r*.
Disk smallest_k_enclosing_approx(std::span<const Point2> pts, std::size_t k) {
  const std::size_t n = pts.size();
  KDiskSearch search(pts, k);
  for (std::size_t i = 0; i < n; ++i) search.consider(pts[i]);
  const Real r1 = std::sqrt(search.best_r2);
  if (r1 == 0) return search.result();

  const Real big = 2 * r1;
  const Real pitch = kApproxEpsilon * r1 / std::numbers::sqrt2_v<Real>;

  using CellId = std::pair<std::int64_t, std::int64_t>;
  std::map<CellId, std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i) {
    const CellId id{static_cast<std::int64_t>(std::floor(pts[i].x / big)),
                    static_cast<std::int64_t>(std::floor(pts[i].y / big))};
    cells[id].push_back(i);
  }

  std::vector<std::size_t> block;
  auto gather_block = [&](const CellId& id) {
    block.clear();
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = cells.find({id.first + dx, id.second + dy});
        if (it != cells.end())
          block.insert(block.end(), it->second.begin(), it->second.end());
      }
  };

  for (const auto& [id, members] : cells) {
    gather_block(id);
    if (block.size() < k) continue;  // not heavy
    const Real x0 = static_cast<Real>(id.first) * big;
    const Real y0 = static_cast<Real>(id.second) * big;
    const auto gi_lo = static_cast<std::int64_t>(std::floor(x0 / pitch)) - 1;
    const auto gi_hi = static_cast<std::int64_t>(std::ceil((x0 + big) / pitch)) + 1;
    const auto gj_lo = static_cast<std::int64_t>(std::floor(y0 / pitch)) - 1;
    const auto gj_hi = static_cast<std::int64_t>(std::ceil((y0 + big) / pitch)) + 1;
    for (std::int64_t gi = gi_lo; gi <= gi_hi; ++gi)
      for (std::int64_t gj = gj_lo; gj <= gj_hi; ++gj)
        search.consider({static_cast<Real>(gi) * pitch,
                         static_cast<Real>(gj) * pitch},
                        block);
  }
  return search.result();
}

}  // namespace

Disk smallest_k_enclosing_disk(std::span<const Point2> points, std::size_t k,
                               std::size_t exact_limit) {
  if (points.empty() || k < 1 || k > points.size())
    throw std::invalid_argument("smallest_k_enclosing_disk: k out of range");
  if (k == points.size()) return smallest_enclosing_disk(points);
  if (points.size() <= exact_limit)
    return smallest_k_enclosing_exact(points, k);
  return smallest_k_enclosing_approx(points, k);
}

CoverWitness nine_cover_witness() {
  CoverWitness w;
  w.disks[0] = {{0, 0}, 1};
  for (int i = 0; i < 8; ++i) {
    const Real ang = kPi * static_cast<Real>(i) / 4;
    w.disks[i + 1] = {{1.5L * std::cos(ang), 1.5L * std::sin(ang)}, 1};
  }
  return w;
}

bool witness_covers(const CoverWitness& w, Point2 p) {
  for (const Disk& d : w.disks)
    if (dist(p, d.center) <= d.radius) return true;
  return false;
}

}  // namespace disksep
