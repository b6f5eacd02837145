#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "disksep/graph.hpp"
#include "disksep/io.hpp"
#include "disksep/separator.hpp"
#include "oracles.hpp"

using namespace disksep;

namespace {

bool is_partition(const SeparatorResult& r, int n) {
  std::vector<int> all;
  all.insert(all.end(), r.separator.begin(), r.separator.end());
  all.insert(all.end(), r.inside.begin(), r.inside.end());
  all.insert(all.end(), r.outside.begin(), r.outside.end());
  std::sort(all.begin(), all.end());
  if (static_cast<int>(all.size()) != n) return false;
  for (int i = 0; i < n; ++i)
    if (all[static_cast<std::size_t>(i)] != i) return false;
  return true;
}

}  // namespace

TEST_CASE("normalize maps the k-enclosing disk of centers to the unit disk") {
  const Packing p = oracle::packed_apollonian(60, 21);
  const NormalizedPacking np = normalize(p);
  CHECK(np.k == 6);

  std::vector<Point2> centers;
  for (const Disk& d : np.disks) centers.push_back(d.center);
  const Disk check = smallest_k_enclosing_disk(centers, 6);
  CHECK(std::abs(check.radius - 1) <= 1e-9L);
  CHECK(std::abs(check.center.x) <= 1e-9L);
  CHECK(std::abs(check.center.y) <= 1e-9L);
  CHECK(count_in_disk(centers, {{0, 0}, 1 + 1e-12L}) >= 6);
}

TEST_CASE("normalize is equivariant under translation and scaling") {
  const Packing p = oracle::packed_apollonian(50, 22);
  Packing moved = p;
  for (Disk& d : moved.disks) {
    d.center.x = d.center.x * 7 + 5;
    d.center.y = d.center.y * 7 - 3;
    d.radius *= 7;
  }
  const NormalizedPacking a = normalize(p);
  const NormalizedPacking b = normalize(moved);
  for (std::size_t i = 0; i < a.disks.size(); ++i) {
    CHECK(std::abs(a.disks[i].center.x - b.disks[i].center.x) <= 1e-9L);
    CHECK(std::abs(a.disks[i].center.y - b.disks[i].center.y) <= 1e-9L);
    CHECK(std::abs(a.disks[i].radius - b.disks[i].radius) <= 1e-9L);
  }
}

TEST_CASE("normalize is idempotent") {
  const Packing p = oracle::packed_apollonian(70, 23);
  const NormalizedPacking once = normalize(p);
  const NormalizedPacking twice = normalize(Packing{once.disks});
  CHECK(std::abs(twice.scale - 1) <= 1e-9L);
  CHECK(std::abs(twice.translation.x) <= 1e-9L);
  CHECK(std::abs(twice.translation.y) <= 1e-9L);
}

TEST_CASE("normalize rejects instances below the recursion base") {
  const Packing p = oracle::packed_apollonian(10, 24);
  CHECK_THROWS_WITH_AS(normalize(p),
                       doctest::Contains("below recursion base"),
                       std::invalid_argument);
  CHECK_NOTHROW(normalize(oracle::packed_apollonian(11, 24)));
}

TEST_CASE("normalize rejects a degenerate zero-radius cluster") {
  Packing p;
  for (int i = 0; i < 12; ++i) p.disks.push_back({{0, 0}, 1});
  CHECK_THROWS_WITH_AS(normalize(p),
                       doctest::Contains("degenerate normalization"),
                       std::invalid_argument);
}

TEST_CASE("select_random is reproducible and partitions the vertices") {
  const Packing p = oracle::packed_apollonian(90, 25);
  const NormalizedPacking np = normalize(p);

  const SeparatorResult a = select_random(np, 777);
  const SeparatorResult b = select_random(np, 777);
  CHECK(a.x == b.x);
  CHECK(a.separator == b.separator);
  CHECK(a.inside == b.inside);
  CHECK(a.outside == b.outside);
  CHECK(a.mode == SelectionMode::randomized);

  CHECK(a.x >= 1.0L);
  CHECK(a.x < 2.0L);
  CHECK(is_partition(a, static_cast<int>(np.disks.size())));
  for (int v : a.separator)
    CHECK(circle_intersects_disk(np.disks[static_cast<std::size_t>(v)], a.x));
  for (int v : a.inside)
    CHECK(norm(np.disks[static_cast<std::size_t>(v)].center) <= a.x);
  for (int v : a.outside)
    CHECK(norm(np.disks[static_cast<std::size_t>(v)].center) >= a.x);

  const SeparatorResult c = select_random(np, 778);
  CHECK(c.x != a.x);
}

TEST_CASE("a packing clear of the [1,2] band yields an empty separator") {
  NormalizedPacking np;
  np.k = 2;
  for (int i = 0; i < 6; ++i)
    np.disks.push_back({{0.1L * i, 0}, 0.05L});        // all inside radius 1
  for (int i = 0; i < 6; ++i)
    np.disks.push_back({{10.0L + i, 0}, 0.05L});       // all outside radius 2

  const SeparatorResult r = select_random(np, 3);
  CHECK(r.separator.empty());
  CHECK(r.inside.size() == 6);
  CHECK(r.outside.size() == 6);

  const SeparatorResult d = select_derandomized(np);
  CHECK(d.separator.empty());
}

TEST_CASE("derandomized selection avoids a single hit interval") {
  NormalizedPacking np;
  np.k = 1;
  np.disks.push_back({{1.3L, 0}, 0.1L});               // hit interval [1.2, 1.4]
  np.disks.push_back({{0.2L, 0}, 0.01L});
  np.disks.push_back({{5.0L, 0}, 0.01L});

  const SeparatorResult r = select_derandomized(np);
  CHECK(r.separator.empty());
  const bool in_gap = r.x < 1.2L || r.x > 1.4L;
  CHECK(in_gap);
  CHECK(r.mode == SelectionMode::derandomized);
}

TEST_CASE("derandomized tie-break picks the smallest x") {
  NormalizedPacking np;
  np.k = 1;
  for (int i = 0; i < 5; ++i) np.disks.push_back({{1.5L, 0}, 1.0L});
  // Every disk hits every x in [1,2]: |S| is constantly 5, so x = 1 wins.
  const SeparatorResult r = select_derandomized(np);
  CHECK(r.x == 1.0L);
  CHECK(r.separator.size() == 5);
}

TEST_CASE("derandomized size is at most the randomized mean and the bound") {
  const Packing p = oracle::packed_apollonian(120, 26);
  const NormalizedPacking np = normalize(p);

  const SeparatorResult der = select_derandomized(np);
  CHECK(is_partition(der, static_cast<int>(np.disks.size())));

  Real mean = 0;
  const int trials = 10000;
  for (int s = 0; s < trials; ++s)
    mean += static_cast<Real>(select_random(np, 1000 + s).separator.size());
  mean /= trials;
  CHECK(static_cast<Real>(der.separator.size()) <= mean);

  CHECK(static_cast<int>(der.separator.size()) <= separator_size_bound(120));
  const Certificate cert = certificate(np);
  CHECK(static_cast<Real>(der.separator.size()) <=
        std::floor(cert.expected_bound));
}

TEST_CASE("certificate fields satisfy the bound chain") {
  const Packing p = oracle::packed_apollonian(150, 27);
  const NormalizedPacking np = normalize(p);
  const Certificate cert = certificate(np);

  REQUIRE(cert.rho.size() == np.disks.size());
  const Disk d2{{0, 0}, 2};
  for (std::size_t i = 0; i < np.disks.size(); ++i)
    CHECK(cert.rho[i] == surrogate_radius(np.disks[i], d2));

  CHECK(cert.sum_rho_sq <= 4 + 1e-6L);
  CHECK(cert.expected_bound <= cert.cs_bound + 1e-9L);
  CHECK(cert.cs_bound <= cert.theorem_bound + 1e-6L);
  CHECK(cert.theorem_bound ==
        doctest::Approx(4 * std::sqrt(150.0)).epsilon(1e-15));
}

TEST_CASE("rho equals the disk radius when everything fits in radius 2") {
  NormalizedPacking np;
  np.k = 1;
  np.disks.push_back({{0.5L, 0.5L}, 0.3L});
  np.disks.push_back({{-1, 0}, 0.9L});
  const Certificate cert = certificate(np);
  CHECK(cert.rho[0] == 0.3L);
  CHECK(cert.rho[1] == 0.9L);
}

TEST_CASE("estimate_expected_size converges to the closed form") {
  NormalizedPacking np;
  np.k = 1;
  np.disks.push_back({{1.5L, 0}, 0.25L});  // hit interval [1.25, 1.75]

  const SizeEstimate one = estimate_expected_size(np, 1, 5);
  const SeparatorResult first = select_random(np, 5);
  CHECK(one.mean == static_cast<Real>(first.separator.size()));
  CHECK(one.std_dev == 0.0L);

  const int samples = 100000;
  const SizeEstimate est = estimate_expected_size(np, samples, 6);
  const Real sigma_of_mean = est.std_dev / std::sqrt(static_cast<Real>(samples));
  CHECK(std::abs(est.mean - 0.5L) <= 3 * sigma_of_mean);

  CHECK_THROWS_AS(estimate_expected_size(np, 0, 1), std::invalid_argument);
}

TEST_CASE("Monte Carlo mean stays below the certificate bound") {
  const Packing p = oracle::packed_apollonian(100, 28);
  const NormalizedPacking np = normalize(p);
  const Certificate cert = certificate(np);
  const int samples = 10000;
  const SizeEstimate est = estimate_expected_size(np, samples, 29);
  const Real closed = oracle::expected_separator_size(np);
  const Real sigma_of_mean = est.std_dev / std::sqrt(static_cast<Real>(samples));
  CHECK(std::abs(est.mean - closed) <= 3 * sigma_of_mean);
  CHECK(closed <= cert.expected_bound + 1e-9L);
  CHECK(est.mean <= cert.expected_bound + 3 * sigma_of_mean);
}

TEST_CASE("separator files round-trip") {
  const Packing p = oracle::packed_apollonian(40, 30);
  const NormalizedPacking np = normalize(p);
  const SeparatorResult r = select_derandomized(np);
  const Certificate cert = certificate(np);

  std::ostringstream out;
  write_separator(out, r, cert);
  std::istringstream in(out.str());
  const auto [r2, cert2] = read_separator(in);

  CHECK(r2.x == r.x);
  CHECK(r2.separator == r.separator);
  CHECK(r2.inside == r.inside);
  CHECK(r2.outside == r.outside);
  CHECK(cert2.sum_rho_sq == cert.sum_rho_sq);
  CHECK(cert2.expected_bound == cert.expected_bound);
  CHECK(cert2.cs_bound == cert.cs_bound);
  CHECK(cert2.theorem_bound == cert.theorem_bound);
}
