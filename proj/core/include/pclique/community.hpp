#pragma once

#include "pclique/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pclique {

/// Quality function optimized by Leiden.
///   modularity: Q = (1/2m) sum_ij (A_ij - d_i d_j / 2m) [c_i = c_j]
///   cpm:        Q = sum_c (e_c - resolution * n_c (n_c - 1) / 2)
struct PartitionQuality {
    enum class Kind { Modularity, Cpm };

    Kind kind = Kind::Modularity;
    double resolution = 1.0;  // CPM gamma; modularity uses 1

    static PartitionQuality modularity() { return {Kind::Modularity, 1.0}; }
    static PartitionQuality cpm(double gamma = 0.05);

    std::string to_string() const;
};

struct LeidenOptions {
    int max_iterations = 20;
    /// Refinement randomness; merge probabilities are proportional to exp(gain / theta).
    double theta = 0.01;
};

/// Leiden community detection. Labels are renumbered 1..K by decreasing
/// community size, ties by smallest member index.
LabelVector leiden(const AdjacencyMatrix& a, const PartitionQuality& quality, std::uint64_t seed,
                   const LeidenOptions& options = {});

/// Quality of a labeling on the original graph (labels may be any ints).
double partition_quality(const AdjacencyMatrix& a, const std::vector<int>& labels,
                         const PartitionQuality& quality);

}  // namespace pclique
