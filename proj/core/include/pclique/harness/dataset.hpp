#pragma once

#include "pclique/types.hpp"

#include <cstddef>
#include <filesystem>
#include <istream>

namespace pclique::harness {

struct EdgeListLoad {
    AdjacencyMatrix graph;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_edges = 0;  // repeated or reversed copies of an edge already seen
};

/// SNAP-style edge list: whitespace-separated integer pairs, one per line,
/// '#'-prefixed comments and blank lines ignored. Vertices are 0..max id.
EdgeListLoad read_edge_list(std::istream& in);
EdgeListLoad load_edge_list(const std::filesystem::path& path);

/// "node department" pairs; departments are renumbered 1..K in order of first
/// appearance. Every vertex 0..n-1 must appear exactly once.
LabelVector read_labels(std::istream& in);
LabelVector load_labels(const std::filesystem::path& path);

/// Writes a 0-based edge list preceded by a "# nodes: n" comment.
void write_edge_list(const AdjacencyMatrix& a, const std::filesystem::path& path);

/// Header-free comma-separated numeric matrix.
Matrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const Matrix& m, const std::filesystem::path& path);

}  // namespace pclique::harness
