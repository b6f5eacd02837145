#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>

#include "disksep/graph.hpp"
#include "disksep/packing.hpp"
#include "disksep/separator.hpp"

namespace disksep {

// Text formats (all values written with 21 significant digits, which
// round-trips the long double scalar exactly):
//
//   triangulation <n> <m> <f>      graph <n> <m>         packing <n>
//   e <u> <v>            (m times) <u> <v>   (m times)   <id> <x> <y> <r> (n times)
//   f <a> <b> <c>        (f times)
//   outer <a> <b> <c>
//
//   separator file:
//   x <value>
//   S <ids...>
//   inside <ids...>
//   outside <ids...>
//   cert <sum_rho_sq> <expected_bound> <cs_bound> <theorem_bound>

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void write_triangulation(std::ostream& out, const Triangulation& t);
Triangulation read_triangulation(std::istream& in);

void write_packing(std::ostream& out, const Packing& p);
Packing read_packing(std::istream& in);

void write_graph(std::ostream& out, const Graph& g);
Graph read_graph(std::istream& in);

void write_separator(std::ostream& out, const SeparatorResult& r,
                     const Certificate& cert);
std::pair<SeparatorResult, Certificate> read_separator(std::istream& in);

enum class FileKind { triangulation, graph, packing, separator, unknown };
FileKind sniff_file(const std::filesystem::path& path);

Triangulation load_triangulation(const std::filesystem::path& path);
Packing load_packing(const std::filesystem::path& path);
Graph load_graph(const std::filesystem::path& path);
std::pair<SeparatorResult, Certificate> load_separator(
    const std::filesystem::path& path);

/// Loads a graph from either a graph file or a triangulation file.
Graph load_graph_any(const std::filesystem::path& path);

void save_text_file(const std::filesystem::path& path,
                    const std::string& content);

std::string format_real(Real v);

}  // namespace disksep
