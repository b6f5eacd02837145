#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "disksep/packing.hpp"
#include "disksep/separator.hpp"

namespace disksep {

/// Simple undirected graph over dense 0-based vertex ids.
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;  // sorted neighbor lists

  /// Builds adjacency from an edge list; rejects self-loops, duplicate edges
  /// and out-of-range endpoints.
  static Graph from_edges(int n, std::span<const std::pair<int, int>> edges);

  bool has_edge(int u, int v) const;
  std::size_t edge_count() const;
};

Graph graph_from(const Triangulation& t);

struct VerifyReport {
  bool valid = false;        // no edge joins inside to outside
  int max_component = 0;     // largest component of G - S
  bool balance_ok = false;   // max_component <= floor(9n/10)
  int separator_size = 0;
  bool size_ok = false;      // separator_size <= floor(4 sqrt(n))
  int balance_bound = 0;
  int size_bound = 0;
  int n_components = 0;
};

/// Components of the subgraph induced on V minus removed, each sorted,
/// ordered by smallest contained vertex.
std::vector<std::vector<int>> connected_components(const Graph& g,
                                                   std::span<const int> removed);

/// Checks that r partitions V(g) (throws std::invalid_argument otherwise) and
/// fills the report flags.
VerifyReport verify_separator(const Graph& g, const SeparatorResult& r);

/// Random Apollonian triangulation: K4, then n - 4 uniformly random internal
/// face subdivisions. Deterministic in (n, seed); requires n >= 4.
Triangulation generate_apollonian(int n, std::uint64_t seed);

/// Minimum size of a vertex set whose removal leaves every component with at
/// most balance * n vertices, by subset enumeration. Requires n <= 14.
int exhaustive_min_balanced_separator(const Graph& g, double balance);

/// floor(sqrt(x)) in integer arithmetic.
std::uint64_t isqrt(std::uint64_t x);

/// floor(4 sqrt(n)) and floor(9n/10), both exact.
int separator_size_bound(int n);
int balance_bound_of(int n);

}  // namespace disksep
