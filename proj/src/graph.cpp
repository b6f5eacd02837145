#include "disksep/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "disksep/rng.hpp"

namespace disksep {

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  if (n < 0) throw std::invalid_argument("graph: negative vertex count");
  Graph g;
  g.n = n;
  g.adj.resize(static_cast<std::size_t>(n));
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("graph: self-loop");
    g.adj[static_cast<std::size_t>(u)].push_back(v);
    g.adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nb : g.adj) {
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
      throw std::invalid_argument("graph: duplicate edge");
  }
  return g;
}

bool Graph::has_edge(int u, int v) const {
  const auto& nb = adj[static_cast<std::size_t>(u)];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& nb : adj) twice += nb.size();
  return twice / 2;
}

Graph graph_from(const Triangulation& t) {
  return Graph::from_edges(t.n, t.edges);
}

std::vector<std::vector<int>> connected_components(
    const Graph& g, std::span<const int> removed) {
  std::vector<bool> gone(static_cast<std::size_t>(g.n), false);
  for (int v : removed) {
    if (v < 0 || v >= g.n)
      throw std::invalid_argument("connected_components: vertex out of range");
    gone[static_cast<std::size_t>(v)] = true;
  }

  std::vector<std::vector<int>> components;
  std::vector<bool> seen(static_cast<std::size_t>(g.n), false);
  std::vector<int> stack;
  for (int start = 0; start < g.n; ++start) {
    const auto s = static_cast<std::size_t>(start);
    if (gone[s] || seen[s]) continue;
    std::vector<int> component;
    seen[s] = true;
    stack.push_back(start);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      component.push_back(v);
      for (int w : g.adj[static_cast<std::size_t>(v)]) {
        const auto ws = static_cast<std::size_t>(w);
        if (!gone[ws] && !seen[ws]) {
          seen[ws] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

std::uint64_t isqrt(std::uint64_t x) {
  if (x == 0) return 0;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

int separator_size_bound(int n) {
  // floor(4 sqrt n) = floor(sqrt(16 n)), exact in integers.
  return static_cast<int>(isqrt(16ull * static_cast<std::uint64_t>(n)));
}

int balance_bound_of(int n) { return (9 * n) / 10; }

VerifyReport verify_separator(const Graph& g, const SeparatorResult& r) {
  // 0 = unseen, 1 = separator, 2 = inside, 3 = outside
  std::vector<char> label(static_cast<std::size_t>(g.n), 0);
  auto mark = [&](const std::vector<int>& vs, char tag) {
    for (int v : vs) {
      if (v < 0 || v >= g.n || label[static_cast<std::size_t>(v)] != 0)
        throw std::invalid_argument("verify_separator: partition mismatch");
      label[static_cast<std::size_t>(v)] = tag;
    }
  };
  mark(r.separator, 1);
  mark(r.inside, 2);
  mark(r.outside, 3);
  for (char l : label)
    if (l == 0)
      throw std::invalid_argument("verify_separator: partition mismatch");

  VerifyReport report;
  report.valid = true;
  for (int u = 0; u < g.n; ++u) {
    const char lu = label[static_cast<std::size_t>(u)];
    if (lu == 1) continue;
    for (int v : g.adj[static_cast<std::size_t>(u)]) {
      const char lv = label[static_cast<std::size_t>(v)];
      if (lv != 1 && lv != lu) report.valid = false;
    }
  }

  const auto components = connected_components(g, r.separator);
  report.n_components = static_cast<int>(components.size());
  for (const auto& c : components)
    report.max_component =
        std::max(report.max_component, static_cast<int>(c.size()));

  report.separator_size = static_cast<int>(r.separator.size());
  report.balance_bound = balance_bound_of(g.n);
  report.size_bound = separator_size_bound(g.n);
  report.balance_ok = report.max_component <= report.balance_bound;
  report.size_ok = report.separator_size <= report.size_bound;
  return report;
}

Triangulation generate_apollonian(int n, std::uint64_t seed) {
  if (n < 4) throw std::invalid_argument("generate_apollonian: needs n >= 4");

  Triangulation t;
  t.n = n;
  t.outer_face = {0, 1, 2};
  t.edges = {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}};
  std::vector<std::array<int, 3>> internal{{0, 1, 3}, {1, 2, 3}, {0, 2, 3}};

  std::mt19937_64 gen(seed);
  for (int v = 4; v < n; ++v) {
    const auto pick = static_cast<std::size_t>(
        uniform_below(gen, static_cast<std::uint64_t>(internal.size())));
    const auto [a, b, c] = internal[pick];
    t.edges.emplace_back(a, v);
    t.edges.emplace_back(b, v);
    t.edges.emplace_back(c, v);
    internal[pick] = {a, b, v};
    internal.push_back({b, c, v});
    internal.push_back({a, c, v});
  }

  t.faces.reserve(internal.size() + 1);
  t.faces.push_back(t.outer_face);
  t.faces.insert(t.faces.end(), internal.begin(), internal.end());
  return t;
}

int exhaustive_min_balanced_separator(const Graph& g, double balance) {
  if (g.n > 14)
    throw std::invalid_argument(
        "exhaustive_min_balanced_separator: n too large (needs n <= 14)");
  const auto n = static_cast<unsigned>(g.n);
  const double limit = balance * g.n + 1e-12;

  int best = g.n;
  std::vector<int> removed;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size >= best) continue;
    removed.clear();
    for (unsigned v = 0; v < n; ++v)
      if (mask & (1u << v)) removed.push_back(static_cast<int>(v));
    bool ok = true;
    for (const auto& comp : connected_components(g, removed))
      ok = ok && static_cast<double>(comp.size()) <= limit;
    if (ok) best = size;
  }
  return best;
}

}  // namespace disksep
