#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "disksep/graph.hpp"
#include "disksep/io.hpp"
#include "disksep/packing.hpp"
#include "disksep/rng.hpp"
#include "disksep/separator.hpp"
#include "disksep/svg.hpp"

namespace {

using namespace disksep;

// Exit codes: 0 success, 1 invalid input, 2 non-convergence, 3 verification
// failure.
constexpr int kExitInvalidInput = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitVerifyFailed = 3;

struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void print_report(const VerifyReport& rep) {
  std::ostringstream out;
  out << "valid " << rep.valid << '\n'
      << "separator_size " << rep.separator_size << '\n'
      << "size_bound " << rep.size_bound << '\n'
      << "size_ok " << rep.size_ok << '\n'
      << "max_component " << rep.max_component << '\n'
      << "n_components " << rep.n_components << '\n'
      << "balance_bound " << rep.balance_bound << '\n'
      << "balance_ok " << rep.balance_ok << '\n';
  std::fputs(out.str().c_str(), stdout);
}

void print_certificate(const Certificate& cert) {
  std::ostringstream out;
  out << "sum_rho_sq " << format_real(cert.sum_rho_sq) << '\n'
      << "expected_bound " << format_real(cert.expected_bound) << '\n'
      << "cs_bound " << format_real(cert.cs_bound) << '\n'
      << "theorem_bound " << format_real(cert.theorem_bound) << '\n';
  std::fputs(out.str().c_str(), stdout);
}

void cmd_gen(int n, std::uint64_t seed, const std::string& out) {
  const Triangulation t = generate_apollonian(n, seed);
  std::ostringstream buf;
  write_triangulation(buf, t);
  save_text_file(out, buf.str());
}

void cmd_pack(const std::string& in, const std::string& out, Real tol,
              int max_iter) {
  const Triangulation t = load_triangulation(in);
  const Packing p = compute_packing(t, tol, max_iter);
  const PackingReport rep = validate_packing(p, t);
  std::ostringstream buf;
  write_packing(buf, p);
  save_text_file(out, buf.str());
  std::printf("max_tangency_residual %s\n",
              format_real(rep.max_tangency_residual).c_str());
  std::printf("min_separation_slack %s\n",
              format_real(rep.min_separation_slack).c_str());
  std::printf("packing_ok %d\n", rep.ok ? 1 : 0);
}

void cmd_separate(const std::string& graph_in, const std::string& packing_in,
                  const std::string& mode, std::uint64_t seed,
                  const std::string& out) {
  const Graph g = load_graph_any(graph_in);
  const Packing p = load_packing(packing_in);
  if (p.disks.size() != static_cast<std::size_t>(g.n))
    throw ParseError("separate: packing and graph disagree on n");

  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[static_cast<std::size_t>(u)])
      if (u < v) edges.emplace_back(u, v);
  const PackingReport prep = validate_packing(p, g.n, edges);
  if (!prep.ok)
    throw ParseError("separate: packing does not realize the graph "
                     "(tangency residual " +
                     format_real(prep.max_tangency_residual) +
                     ", separation slack " +
                     format_real(prep.min_separation_slack) + ")");

  const NormalizedPacking np = normalize(p);
  const SeparatorResult result = mode == "rand"
                                     ? select_random(np, seed)
                                     : select_derandomized(np);
  const Certificate cert = certificate(np);
  const VerifyReport rep = verify_separator(g, result);

  std::ostringstream buf;
  write_separator(buf, result, cert);
  save_text_file(out, buf.str());

  std::printf("mode %s\n", mode.c_str());
  std::printf("x %s\n", format_real(result.x).c_str());
  print_report(rep);
  print_certificate(cert);

  if (mode == "derand" && !(rep.valid && rep.size_ok && rep.balance_ok))
    throw VerificationError(
        "derandomized separator failed verification bounds");
}

void cmd_verify(const std::string& graph_in, const std::string& separator_in) {
  const Graph g = load_graph_any(graph_in);
  const auto [result, cert] = load_separator(separator_in);
  const VerifyReport rep = verify_separator(g, result);
  print_report(rep);
  print_certificate(cert);
  if (!rep.valid)
    throw VerificationError("separator file fails validity check");
}

void cmd_bench(const std::vector<int>& sizes, int trials, std::uint64_t seed,
               int samples, const std::string& out_csv, bool timing) {
  std::ostringstream csv;
  csv << "# disksep bench csv v1\n";
  csv << "n,trial,seed,s_derand,x_derand,s_rand_mean,s_rand_std,sum_rho_sq,"
         "expected_bound,cs_bound,theorem_bound,size_bound,max_component,"
         "n_components,balance_bound,valid,pack_ms,separate_ms\n";

  for (const int n : sizes) {
    for (int trial = 0; trial < trials; ++trial) {
      const std::uint64_t cell_seed =
          seed ^ splitmix64(static_cast<std::uint64_t>(n) *
                                0x9e3779b97f4a7c15ULL +
                            static_cast<std::uint64_t>(trial));
      const Triangulation t = generate_apollonian(n, cell_seed);
      const auto t0 = std::chrono::steady_clock::now();
      const Packing p = compute_packing(t);
      const auto t1 = std::chrono::steady_clock::now();
      const NormalizedPacking np = normalize(p);
      const SeparatorResult der = select_derandomized(np);
      const Certificate cert = certificate(np);
      const SizeEstimate est = estimate_expected_size(np, samples, cell_seed);
      const Graph g = graph_from(t);
      const VerifyReport rep = verify_separator(g, der);
      const auto t2 = std::chrono::steady_clock::now();

      const auto ms = [](auto a, auto b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
      };
      csv << n << ',' << trial << ',' << cell_seed << ','
          << der.separator.size() << ',' << format_real(der.x) << ','
          << format_real(est.mean) << ',' << format_real(est.std_dev) << ','
          << format_real(cert.sum_rho_sq) << ','
          << format_real(cert.expected_bound) << ','
          << format_real(cert.cs_bound) << ','
          << format_real(cert.theorem_bound) << ',' << rep.size_bound << ','
          << rep.max_component << ',' << rep.n_components << ','
          << rep.balance_bound << ',' << rep.valid << ','
          << (timing ? ms(t0, t1) : 0.0) << ','
          << (timing ? ms(t1, t2) : 0.0) << '\n';
    }
  }
  save_text_file(out_csv, csv.str());
}

void cmd_render(const std::string& packing_in, const std::string& separator_in,
                const std::string& out) {
  const Packing p = load_packing(packing_in);
  if (separator_in.empty()) {
    save_text_file(out, render_svg(p, nullptr, nullptr));
    return;
  }
  const auto [result, cert] = load_separator(separator_in);
  // Map the normalized-frame circles back into packing coordinates through
  // the k-enclosing disk of the centers, recomputed deterministically.
  const NormalizedPacking np = normalize(p);
  const Disk norm_disk{{-np.translation.x, -np.translation.y}, 1 / np.scale};
  save_text_file(out, render_svg(p, &result, &norm_disk));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kissing-disk packings and O(sqrt n) balanced separators"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random Apollonian triangulation");
  int gen_n = 100;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "vertex count (>= 4)")->required();
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output triangulation file")->required();

  // pack
  auto* pack = app.add_subcommand("pack", "compute a kissing-disk packing");
  std::string pack_in, pack_out;
  double pack_tol = 1e-15;
  int pack_iter = kDefaultMaxIterations;
  pack->add_option("--in", pack_in, "triangulation file")->required();
  pack->add_option("--out", pack_out, "output packing file")->required();
  pack->add_option("--tol", pack_tol, "angle-sum tolerance (default 1e-15)");
  pack->add_option("--max-iter", pack_iter, "sweep budget (default 100000)");

  // separate
  auto* sep = app.add_subcommand("separate", "select and verify a separator");
  std::string sep_graph, sep_packing, sep_out, sep_mode = "derand";
  std::uint64_t sep_seed = 0;
  sep->add_option("--graph", sep_graph, "graph or triangulation file")->required();
  sep->add_option("--packing", sep_packing, "packing file")->required();
  sep->add_option("--mode", sep_mode, "rand or derand (default derand)")
      ->check(CLI::IsMember({"rand", "derand"}));
  sep->add_option("--seed", sep_seed, "seed for --mode rand");
  sep->add_option("--out", sep_out, "output separator file")->required();

  // verify
  auto* ver = app.add_subcommand("verify", "verify a separator file");
  std::string ver_graph, ver_sep;
  ver->add_option("--graph", ver_graph, "graph or triangulation file")->required();
  ver->add_option("--separator", ver_sep, "separator file")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "run the pipeline over instance sizes");
  std::vector<int> bench_sizes;
  int bench_trials = 1, bench_samples = 1000;
  std::uint64_t bench_seed = 0;
  std::string bench_out;
  bool bench_no_timing = false;
  bench->add_option("--sizes", bench_sizes, "instance sizes")
      ->required()
      ->delimiter(',');
  bench->add_option("--trials", bench_trials, "trials per size (default 1)");
  bench->add_option("--samples", bench_samples,
                    "random draws per instance (default 1000)");
  bench->add_option("--seed", bench_seed, "base seed");
  bench->add_option("--out", bench_out, "output CSV file")->required();
  bench->add_flag("--no-timing", bench_no_timing,
                  "write zeros for runtimes (byte-reproducible output)");

  // render
  auto* render = app.add_subcommand("render", "render a packing to SVG");
  std::string render_packing, render_sep, render_out;
  render->add_option("--packing", render_packing, "packing file")->required();
  render->add_option("--separator", render_sep, "separator file (optional)");
  render->add_option("--out", render_out, "output SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  try {
    if (*gen) {
      cmd_gen(gen_n, gen_seed, gen_out);
    } else if (*pack) {
      cmd_pack(pack_in, pack_out, static_cast<Real>(pack_tol), pack_iter);
    } else if (*sep) {
      cmd_separate(sep_graph, sep_packing, sep_mode, sep_seed, sep_out);
    } else if (*ver) {
      cmd_verify(ver_graph, ver_sep);
    } else if (*bench) {
      if (bench_trials < 1 || bench_samples < 1)
        throw std::invalid_argument("bench: trials and samples must be >= 1");
      cmd_bench(bench_sizes, bench_trials, bench_seed, bench_samples,
                bench_out, !bench_no_timing);
    } else if (*render) {
      cmd_render(render_packing, render_sep, render_out);
    }
  } catch (const ConvergenceError& e) {
    std::fprintf(stderr, "error: %s (max residual %s)\n", e.what(),
                 format_real(e.max_residual).c_str());
    return kExitNoConvergence;
  } catch (const VerificationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitVerifyFailed;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalidInput;
  }
  return 0;
}
