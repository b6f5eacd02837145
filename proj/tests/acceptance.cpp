// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exit code is the number of failures.
// Usage: acceptance [criterion numbers]; no arguments runs all ten.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "disksep/graph.hpp"
#include "disksep/io.hpp"
#include "disksep/packing.hpp"
#include "disksep/rng.hpp"
#include "disksep/separator.hpp"
#include "disksep/svg.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace disksep;

namespace {

struct Criterion {
  int id;
  const char* title;
  bool (*run)(std::string& detail);
};

// ---------------------------------------------------------------------------
// Shared pipeline cache for criteria 1, 2 and 5: 4 sizes x 50 seeds.

struct InstanceStats {
  int n = 0;
  std::uint64_t seed = 0;
  bool valid = false;
  bool size_ok = false;
  bool balance_ok = false;
  int separator_size = 0;
  int max_component = 0;
  Real sum_rho_sq = 0;
  Real expected_bound = 0;
  Real cs_bound = 0;
  Real theorem_bound = 0;
  Real max_tangency_residual = 0;
  Real min_separation_slack = 0;
};

const std::vector<int>& pipeline_sizes() {
  static const std::vector<int> sizes{100, 500, 1000, 2000};
  return sizes;
}
constexpr int kSeedsPerSize = 50;

const std::vector<InstanceStats>& pipeline_stats() {
  static const std::vector<InstanceStats> stats = [] {
    std::vector<InstanceStats> all;
    for (const int n : pipeline_sizes()) {
      for (int s = 0; s < kSeedsPerSize; ++s) {
        InstanceStats st;
        st.n = n;
        st.seed = static_cast<std::uint64_t>(s) + 1;
        const Triangulation t = generate_apollonian(n, st.seed);
        const Packing p = compute_packing(t);
        const PackingReport prep = validate_packing(p, t);
        st.max_tangency_residual = prep.max_tangency_residual;
        st.min_separation_slack = prep.min_separation_slack;
        const NormalizedPacking np = normalize(p);
        const SeparatorResult r = select_derandomized(np);
        const Certificate cert = certificate(np);
        st.sum_rho_sq = cert.sum_rho_sq;
        st.expected_bound = cert.expected_bound;
        st.cs_bound = cert.cs_bound;
        st.theorem_bound = cert.theorem_bound;
        const VerifyReport rep = verify_separator(graph_from(t), r);
        st.valid = rep.valid;
        st.size_ok = rep.size_ok;
        st.balance_ok = rep.balance_ok;
        st.separator_size = rep.separator_size;
        st.max_component = rep.max_component;
        all.push_back(st);
      }
    }
    return all;
  }();
  return stats;
}

NormalizedPacking normalized_instance(int n, std::uint64_t seed) {
  return normalize(compute_packing(generate_apollonian(n, seed)));
}

// ---------------------------------------------------------------------------

bool criterion_1(std::string& detail) {
  int failures = 0, worst_size = 0, worst_component = 0;
  for (const InstanceStats& st : pipeline_stats()) {
    const bool ok = st.valid && st.size_ok && st.balance_ok;
    if (!ok) ++failures;
    worst_size = std::max(worst_size, st.separator_size);
    worst_component = std::max(worst_component, st.max_component);
  }
  std::ostringstream out;
  out << pipeline_stats().size() << " runs, " << failures
      << " failures; max |S| seen " << worst_size;
  detail = out.str();
  return failures == 0;
}

bool criterion_2(std::string& detail) {
  int failures = 0;
  Real worst_sum = 0;
  for (const InstanceStats& st : pipeline_stats()) {
    worst_sum = std::max(worst_sum, st.sum_rho_sq);
    const bool ok = st.sum_rho_sq <= 4 + 1e-6L &&
                    st.expected_bound <= st.cs_bound + 1e-9L &&
                    st.cs_bound <= st.theorem_bound + 1e-6L;
    if (!ok) ++failures;
  }
  std::ostringstream out;
  out << "max sum rho^2 = " << static_cast<double>(worst_sum) << ", "
      << failures << " failures";
  detail = out.str();
  return failures == 0;
}

bool criterion_3(std::string& detail) {
  const int samples = 10000;
  bool ok = true;
  std::ostringstream out;
  for (const int n : pipeline_sizes()) {
    const NormalizedPacking np = normalized_instance(n, 1);
    const Certificate cert = certificate(np);
    const SizeEstimate est = estimate_expected_size(np, samples, 12345);
    const Real closed = oracle::expected_separator_size(np);
    const Real sigma_of_mean =
        est.std_dev / std::sqrt(static_cast<Real>(samples));
    const bool mean_ok = std::abs(est.mean - closed) <= 3 * sigma_of_mean;
    const bool bound_ok = closed <= cert.expected_bound + 1e-9L;
    ok = ok && mean_ok && bound_ok;
    out << "n=" << n << " |mean-closed|/sigma="
        << static_cast<double>(std::abs(est.mean - closed) /
                               (sigma_of_mean > 0 ? sigma_of_mean : 1))
        << (mean_ok && bound_ok ? " " : " FAIL ");
  }
  detail = out.str();
  return ok;
}

bool criterion_4(std::string& detail) {
  const Disk d2{{0, 0}, 2};
  int checked = 0, failures = 0;
  // One class of random disks per pipeline size, seeded differently.
  for (const int n : pipeline_sizes()) {
    std::mt19937_64 gen(static_cast<std::uint64_t>(n) * 7919);
    auto unit = [&] { return static_cast<Real>(gen() >> 11) * 0x1.0p-53L; };
    for (int i = 0; i < 1000; ++i) {
      const Disk b{{6 * (2 * unit() - 1), 6 * (2 * unit() - 1)}, 3 * unit()};
      const Interval iv = circle_hit_interval(b);
      const Real len =
          std::max(std::min(iv.hi, 2.0L) - std::max(iv.lo, 1.0L), 0.0L);
      const Real rho = surrogate_radius(b, d2);
      ++checked;
      if (!(len <= 2 * rho + 1e-9L)) ++failures;
    }
  }
  std::ostringstream out;
  out << checked << " disks, " << failures << " violations";
  detail = out.str();
  return failures == 0;
}

bool criterion_5(std::string& detail) {
  Real worst_residual = 0;
  Real worst_slack = std::numeric_limits<Real>::infinity();
  for (const InstanceStats& st : pipeline_stats()) {
    worst_residual = std::max(worst_residual, st.max_tangency_residual);
    worst_slack = std::min(worst_slack, st.min_separation_slack);
  }
  const bool residual_ok = worst_residual <= 1e-6L;
  const bool slack_ok = worst_slack >= -1e-6L;

  const Packing k4 = compute_packing(generate_apollonian(4, 0));
  const Real descartes = 1.0L / (3.0L + 2.0L * std::sqrt(3.0L));
  const bool k4_ok = std::abs(k4.disks[3].radius - descartes) <= 1e-8L;

  std::ostringstream out;
  out << "max residual " << static_cast<double>(worst_residual)
      << ", min slack " << static_cast<double>(worst_slack)
      << ", K4 radius error "
      << static_cast<double>(std::abs(k4.disks[3].radius - descartes));
  detail = out.str();
  return residual_ok && slack_ok && k4_ok;
}

bool criterion_6(std::string& detail) {
  std::mt19937_64 gen(161803);
  auto unit = [&] { return static_cast<Real>(gen() >> 11) * 0x1.0p-53L; };
  int checked = 0, failures = 0;
  Real worst = 0;
  for (int instance = 0; instance < 100; ++instance) {
    const std::size_t n = 12 + gen() % 29;  // 12..40
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < n; ++i)
      pts.push_back({8 * (2 * unit() - 1), 8 * (2 * unit() - 1)});
    for (std::size_t k = 2; k <= 10; ++k) {
      const Disk d = smallest_k_enclosing_disk(pts, k);
      const Real brute = oracle::brute_k_enclosing_radius(pts, k);
      const Real err = std::abs(d.radius - brute);
      worst = std::max(worst, err);
      ++checked;
      if (!(err <= 1e-9L)) ++failures;
      if (count_in_disk(pts, d) < k) ++failures;
    }
  }
  std::ostringstream out;
  out << checked << " (instance, k) pairs, worst radius gap "
      << static_cast<double>(worst);
  detail = out.str();
  return failures == 0;
}

bool criterion_7(std::string& detail) {
  std::mt19937_64 gen(271828);
  auto unit = [&] { return static_cast<Real>(gen() >> 11) * 0x1.0p-53L; };
  int failures = 0;
  Real worst_pull = 0;
  for (int i = 0; i < 20; ++i) {
    // Overlapping but non-nested pairs keep the Monte Carlo informative.
    const Real ra = 0.5L + 2 * unit(), rb = 0.5L + 2 * unit();
    const Real d = std::abs(ra - rb) + (ra + rb - std::abs(ra - rb)) * unit();
    const Disk a{{0, 0}, ra};
    const Disk b{{d, 0}, rb};
    const auto mc = oracle::mc_lens_area(a, b, 1000000, 1000 + i);
    const Real analytic = lens_area(a, b);
    const Real pull = std::abs(analytic - mc.mean) / mc.sigma;
    worst_pull = std::max(worst_pull, pull);
    if (!(pull <= 3)) ++failures;
  }

  // Exact anchors.
  const bool tangent_ok = lens_area({{0, 0}, 0.75L}, {{1.25L, 0}, 0.5L}) == 0.0L;
  const Real rmin = 0.25L;
  const bool nested_ok = lens_area({{0, 0}, 2}, {{0.5L, 0}, rmin}) ==
                         std::numbers::pi_v<Real> * rmin * rmin;

  std::ostringstream out;
  out << "20 pairs, worst |analytic-MC| = " << static_cast<double>(worst_pull)
      << " sigma; tangent exact " << tangent_ok << ", nested exact "
      << nested_ok;
  detail = out.str();
  return failures == 0 && tangent_ok && nested_ok;
}

bool criterion_8(std::string& detail) {
  const CoverWitness w = nine_cover_witness();
  const int grid = 2000;
  long long tested = 0, misses = 0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const Point2 p{-2 + 4.0L * i / (grid - 1), -2 + 4.0L * j / (grid - 1)};
      if (norm(p) > 2) continue;
      ++tested;
      if (!witness_covers(w, p)) ++misses;
    }
  }
  std::ostringstream out;
  out << tested << " grid points inside radius 2, " << misses << " uncovered";
  detail = out.str();
  return misses == 0;
}

bool criterion_9(std::string& detail) {
  int pipeline_runs = 0, failures = 0, graphs = 0;
  for (int n = 4; n <= 12; ++n) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const Triangulation t = generate_apollonian(n, seed);
      const Graph g = graph_from(t);
      ++graphs;
      const int oracle_min = exhaustive_min_balanced_separator(g, 0.9);
      if (n < kRecursionBaseSize) continue;  // pipeline does not run
      ++pipeline_runs;
      const Packing p = compute_packing(t);
      const SeparatorResult r = select_derandomized(normalize(p));
      const VerifyReport rep = verify_separator(g, r);
      if (!rep.valid || oracle_min > rep.separator_size) ++failures;
    }
  }
  std::ostringstream out;
  out << graphs << " corpus graphs, " << pipeline_runs << " pipeline runs, "
      << failures << " failures";
  detail = out.str();
  return failures == 0;
}

// Criterion 10: byte-identical CLI outputs across two consecutive runs.
std::string cli_path() { return DISKSEP_CLI_PATH; }

bool run_shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status) == 0;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool criterion_10(std::string& detail) {
  const fs::path base = fs::temp_directory_path() / "disksep_acceptance_10";
  fs::remove_all(base);
  std::vector<std::string> names;
  std::vector<std::string> first;
  bool ok = true;

  for (int round = 0; round < 2; ++round) {
    const fs::path dir = base / ("round" + std::to_string(round));
    fs::create_directories(dir);
    const std::string d = dir.string() + "/";
    const std::string cli = cli_path();
    const std::string log = " >> " + d + "stdout.log 2>&1";
    ok = ok && run_shell(cli + " gen --n 120 --seed 42 --out " + d + "t.tri" + log);
    ok = ok && run_shell(cli + " pack --in " + d + "t.tri --out " + d + "p.pack" + log);
    ok = ok && run_shell(cli + " separate --graph " + d + "t.tri --packing " +
                         d + "p.pack --mode derand --out " + d + "der.sep" + log);
    ok = ok && run_shell(cli + " separate --graph " + d + "t.tri --packing " +
                         d + "p.pack --mode rand --seed 7 --out " + d + "rand.sep" + log);
    ok = ok && run_shell(cli + " render --packing " + d + "p.pack --separator " +
                         d + "der.sep --out " + d + "scene.svg" + log);
    ok = ok && run_shell(cli + " bench --sizes 20,40 --trials 2 --samples 100 "
                         "--seed 5 --no-timing --out " + d + "bench.csv" + log);
    if (!ok) break;

    std::vector<std::string> contents;
    names = {"t.tri", "p.pack", "der.sep", "rand.sep", "scene.svg",
             "bench.csv", "stdout.log"};
    for (const auto& name : names) contents.push_back(slurp(dir / name));
    if (round == 0) {
      first = contents;
    } else {
      for (std::size_t i = 0; i < names.size(); ++i)
        if (contents[i] != first[i]) {
          detail = "mismatch in " + names[i];
          ok = false;
        }
    }
  }
  fs::remove_all(base);
  if (ok) detail = "7 artifacts byte-identical across two runs";
  return ok;
}

const Criterion kCriteria[] = {
    {1, "theorem-level reproduction (|S|, balance, validity on 200 runs)", criterion_1},
    {2, "certificate chain on every packed instance", criterion_2},
    {3, "Monte Carlo expectation matches the closed form", criterion_3},
    {4, "hit measure bounded by twice the surrogate radius", criterion_4},
    {5, "packing quality and the Descartes anchor", criterion_5},
    {6, "k-enclosing disk matches brute-force enumeration", criterion_6},
    {7, "lens area against Monte Carlo and exact anchors", criterion_7},
    {8, "nine-disk cover of the radius-2 disk on the full grid", criterion_8},
    {9, "tiny-graph exhaustive separator oracle", criterion_9},
    {10, "byte-identical CLI outputs across two runs", criterion_10},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : kCriteria) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("%s  %2d  %-62s [%s] (%.1fs)\n", ok ? "PASS" : "FAIL", c.id,
                c.title, detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures;
}
