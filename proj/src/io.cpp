#include "disksep/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace disksep {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

std::string next_token(std::istream& in, const char* context) {
  std::string tok;
  if (!(in >> tok)) fail(std::string("unexpected end of input, expected ") + context);
  return tok;
}

void expect_tag(std::istream& in, const std::string& tag) {
  const std::string tok = next_token(in, tag.c_str());
  if (tok != tag) fail("expected '" + tag + "', got '" + tok + "'");
}

long long parse_int(const std::string& tok, long long lo, long long hi,
                    const char* context) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(tok.c_str(), &end, 10);
  if (errno != 0 || end != tok.c_str() + tok.size())
    fail(std::string("bad integer for ") + context + ": '" + tok + "'");
  if (v < lo || v > hi)
    fail(std::string("integer out of range for ") + context + ": " + tok);
  return v;
}

int read_int(std::istream& in, long long lo, long long hi, const char* context) {
  return static_cast<int>(parse_int(next_token(in, context), lo, hi, context));
}

Real parse_real(const std::string& tok, const char* context) {
  errno = 0;
  char* end = nullptr;
  const Real v = std::strtold(tok.c_str(), &end);
  if (errno != 0 || end != tok.c_str() + tok.size() || !std::isfinite(v))
    fail(std::string("bad number for ") + context + ": '" + tok + "'");
  return v;
}

Real read_real(std::istream& in, const char* context) {
  return parse_real(next_token(in, context), context);
}

}  // namespace

std::string format_real(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", v);
  return buf;
}

void write_triangulation(std::ostream& out, const Triangulation& t) {
  out << "triangulation " << t.n << ' ' << t.edges.size() << ' '
      << t.faces.size() << '\n';
  for (const auto& [u, v] : t.edges) out << "e " << u << ' ' << v << '\n';
  for (const auto& f : t.faces)
    out << "f " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  out << "outer " << t.outer_face[0] << ' ' << t.outer_face[1] << ' '
      << t.outer_face[2] << '\n';
}

Triangulation read_triangulation(std::istream& in) {
  expect_tag(in, "triangulation");
  Triangulation t;
  t.n = read_int(in, 0, 1 << 28, "vertex count");
  const int m = read_int(in, 0, 1 << 28, "edge count");
  const int f = read_int(in, 0, 1 << 28, "face count");
  t.edges.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    expect_tag(in, "e");
    const int u = read_int(in, 0, t.n - 1, "edge endpoint");
    const int v = read_int(in, 0, t.n - 1, "edge endpoint");
    t.edges.emplace_back(u, v);
  }
  for (int i = 0; i < f; ++i) {
    expect_tag(in, "f");
    std::array<int, 3> face{};
    for (int& x : face) x = read_int(in, 0, t.n - 1, "face vertex");
    t.faces.push_back(face);
  }
  expect_tag(in, "outer");
  for (int& x : t.outer_face) x = read_int(in, 0, t.n - 1, "outer vertex");
  return t;
}

void write_packing(std::ostream& out, const Packing& p) {
  out << "packing " << p.disks.size() << '\n';
  for (std::size_t i = 0; i < p.disks.size(); ++i) {
    const Disk& d = p.disks[i];
    out << i << ' ' << format_real(d.center.x) << ' ' << format_real(d.center.y)
        << ' ' << format_real(d.radius) << '\n';
  }
}

Packing read_packing(std::istream& in) {
  expect_tag(in, "packing");
  const int n = read_int(in, 0, 1 << 28, "disk count");
  Packing p;
  p.disks.resize(static_cast<std::size_t>(n));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    const int id = read_int(in, 0, n - 1, "vertex id");
    if (seen[static_cast<std::size_t>(id)]) fail("duplicate vertex id in packing");
    seen[static_cast<std::size_t>(id)] = true;
    Disk& d = p.disks[static_cast<std::size_t>(id)];
    d.center.x = read_real(in, "center x");
    d.center.y = read_real(in, "center y");
    d.radius = read_real(in, "radius");
    if (d.radius < 0) fail("negative radius in packing");
  }
  return p;
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "graph " << g.n << ' ' << g.edge_count() << '\n';
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[static_cast<std::size_t>(u)])
      if (u < v) out << u << ' ' << v << '\n';
}

Graph read_graph(std::istream& in) {
  expect_tag(in, "graph");
  const int n = read_int(in, 0, 1 << 28, "vertex count");
  const int m = read_int(in, 0, 1 << 28, "edge count");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const int u = read_int(in, 0, n - 1, "edge endpoint");
    const int v = read_int(in, 0, n - 1, "edge endpoint");
    edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges);
}

namespace {

void write_id_line(std::ostream& out, const char* tag,
                   const std::vector<int>& ids) {
  out << tag;
  for (int v : ids) out << ' ' << v;
  out << '\n';
}

std::vector<int> parse_id_line(const std::string& line, const std::string& tag) {
  std::istringstream ss(line);
  std::string head;
  if (!(ss >> head) || head != tag) fail("expected '" + tag + "' line");
  std::vector<int> ids;
  std::string tok;
  while (ss >> tok)
    ids.push_back(
        static_cast<int>(parse_int(tok, 0, 1 << 28, "separator vertex id")));
  return ids;
}

std::string next_line(std::istream& in, const char* context) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
  }
  fail(std::string("unexpected end of input, expected ") + context);
}

}  // namespace

void write_separator(std::ostream& out, const SeparatorResult& r,
                     const Certificate& cert) {
  out << "x " << format_real(r.x) << '\n';
  write_id_line(out, "S", r.separator);
  write_id_line(out, "inside", r.inside);
  write_id_line(out, "outside", r.outside);
  out << "cert " << format_real(cert.sum_rho_sq) << ' '
      << format_real(cert.expected_bound) << ' ' << format_real(cert.cs_bound)
      << ' ' << format_real(cert.theorem_bound) << '\n';
}

std::pair<SeparatorResult, Certificate> read_separator(std::istream& in) {
  SeparatorResult r;
  {
    std::istringstream ss(next_line(in, "x line"));
    std::string head, value;
    if (!(ss >> head >> value) || head != "x") fail("expected 'x <value>' line");
    r.x = parse_real(value, "cut radius");
  }
  r.separator = parse_id_line(next_line(in, "S line"), "S");
  r.inside = parse_id_line(next_line(in, "inside line"), "inside");
  r.outside = parse_id_line(next_line(in, "outside line"), "outside");

  Certificate cert;
  {
    std::istringstream ss(next_line(in, "cert line"));
    std::string head;
    if (!(ss >> head) || head != "cert") fail("expected 'cert' line");
    std::string a, b, c, d;
    if (!(ss >> a >> b >> c >> d)) fail("cert line needs four values");
    cert.sum_rho_sq = parse_real(a, "sum_rho_sq");
    cert.expected_bound = parse_real(b, "expected_bound");
    cert.cs_bound = parse_real(c, "cs_bound");
    cert.theorem_bound = parse_real(d, "theorem_bound");
  }
  return {std::move(r), cert};
}

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open file: " + path.string());
  return in;
}

}  // namespace

FileKind sniff_file(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::string tok;
  if (!(in >> tok)) return FileKind::unknown;
  if (tok == "triangulation") return FileKind::triangulation;
  if (tok == "graph") return FileKind::graph;
  if (tok == "packing") return FileKind::packing;
  if (tok == "x") return FileKind::separator;
  return FileKind::unknown;
}

Triangulation load_triangulation(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_triangulation(in);
}

Packing load_packing(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_packing(in);
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_graph(in);
}

std::pair<SeparatorResult, Certificate> load_separator(
    const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_separator(in);
}

Graph load_graph_any(const std::filesystem::path& path) {
  switch (sniff_file(path)) {
    case FileKind::triangulation:
      return graph_from(load_triangulation(path));
    case FileKind::graph:
      return load_graph(path);
    default:
      fail("expected a graph or triangulation file: " + path.string());
  }
}

void save_text_file(const std::filesystem::path& path,
                    const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot open file for writing: " + path.string());
  out << content;
  if (!out) fail("write failed: " + path.string());
}

}  // namespace disksep
