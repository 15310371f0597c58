#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "epiq/netgen/graph.hpp"

namespace epiq::netgen {

struct LoadReport {
  std::size_t lines = 0;
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
  /// Nodes declared in a "# Nodes: N" comment beyond those seen in edges.
  std::size_t isolated_padding = 0;
};

/// Reads an edge list: one pair of integer node ids per line, separated by
/// whitespace or a comma. '#' starts a comment. A single non-numeric header
/// line before the first edge is tolerated (GEMSEC csv files carry one).
///
/// Ids are remapped to 0..n-1 in ascending order of the original id.
/// Throws ParseError carrying the 1-based line number of a malformed line.
Graph read_edge_list(std::istream& in, LoadReport* report = nullptr);
Graph load_edge_list(const std::filesystem::path& path, LoadReport* report = nullptr);

/// Writes "# Nodes: N Edges: E" followed by one "u v" line per edge, u < v,
/// in sorted order. Output is byte-identical for equal graphs.
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list(const Graph& g, const std::filesystem::path& path);

}  // namespace epiq::netgen
