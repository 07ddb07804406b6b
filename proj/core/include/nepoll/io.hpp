#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "nepoll/graph.hpp"

namespace nepoll {

struct EdgeListData {
  std::vector<InputEdge> edges;  // deduplicated, first occurrence order kept
  std::size_t duplicate_lines = 0;  // repeated pairs dropped (either orientation)
};

/// SNAP-style edge list: two whitespace-separated non-negative integers per
/// line, '#' or '%' comment lines and blank lines ignored, trailing columns
/// ignored. Throws Parse with the 1-based line number on malformed input.
EdgeListData parse_edge_list(std::istream& in);

struct LoadedGraph {
  Graph graph;
  std::size_t duplicate_lines = 0;
};

LoadedGraph read_edge_list(const std::filesystem::path& path);

struct LabelData {
  std::vector<std::uint8_t> labels;  // indexed by compacted node id
  std::size_t missing = 0;           // graph nodes absent from the file (label 0)
  std::size_t unknown = 0;           // file ids not present in the graph (ignored)
};

/// Label file: "<original node id> <0|1>" per line, '#' comments allowed.
LabelData parse_labels(std::istream& in, const Graph& g);
LabelData read_labels(const std::filesystem::path& path, const Graph& g);

void write_edge_list(std::ostream& out, const Graph& g);
void write_labels(std::ostream& out, const LabeledGraph& lg);
void write_edge_list(const std::filesystem::path& path, const Graph& g);
void write_labels(const std::filesystem::path& path, const LabeledGraph& lg);

}  // namespace nepoll
