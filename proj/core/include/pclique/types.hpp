#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pclique {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Sorted, duplicate-free set of 0-based vertex indices.
using VertexSet = std::vector<Index>;

/// Throws InvalidArgument unless `set` is strictly increasing with entries in [0, n).
void validate_vertex_set(const VertexSet& set, Index n);

/// RDPG latent positions: n x d with every pairwise inner product in [0, 1]
/// and every row of squared norm at most 1.
class LatentPositions {
public:
    /// Validates both invariants (slack 1e-12); throws InvalidLatent.
    explicit LatentPositions(Matrix x);

    const Matrix& matrix() const noexcept { return x_; }
    Index size() const noexcept { return x_.rows(); }
    Index dim() const noexcept { return x_.cols(); }

private:
    Matrix x_;
};

/// Latent positions with the pseudo-clique column appended as the last column.
struct AugmentedLatent {
    Matrix positions;
    VertexSet clique;

    Index size() const noexcept { return positions.rows(); }
    Index dim() const noexcept { return positions.cols(); }
    /// Clique size, which is also the number of nonzeros in the appended column.
    std::size_t alpha() const noexcept { return clique.size(); }
    Vector clique_column() const { return positions.col(positions.cols() - 1); }
};

/// Symmetric edge-probability matrix with entries in [0, 1].
class ProbMatrix {
public:
    /// Entries within 1e-12 outside [0, 1] are clamped; larger violations or
    /// asymmetry throw InvalidLatent.
    explicit ProbMatrix(Matrix p);

    const Matrix& matrix() const noexcept { return p_; }
    Index size() const noexcept { return p_.rows(); }
    double operator()(Index u, Index v) const noexcept { return p_(u, v); }

private:
    Matrix p_;
};

/// Symmetric hollow binary adjacency matrix, stored dense.
class AdjacencyMatrix {
public:
    AdjacencyMatrix() = default;

    /// Edgeless graph on n vertices.
    explicit AdjacencyMatrix(Index n);

    /// Validates symmetric, zero diagonal, entries in {0, 1}; throws InvalidArgument.
    static AdjacencyMatrix from_dense(Matrix a);

    /// Undirected edges given as 0-based pairs; self-loops are rejected,
    /// duplicates collapse.
    static AdjacencyMatrix from_edges(Index n, std::span<const std::pair<Index, Index>> edges);

    Index size() const noexcept { return a_.rows(); }
    const Matrix& matrix() const noexcept { return a_; }
    bool has_edge(Index u, Index v) const noexcept { return a_(u, v) != 0.0; }
    void set_edge(Index u, Index v);

    std::size_t edge_count() const noexcept;
    double density() const noexcept;
    std::vector<Index> degrees() const;

    /// Edges (u, v) with u < v in row-major order.
    std::vector<std::pair<Index, Index>> edges() const;

    friend bool operator==(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
        return a.a_.rows() == b.a_.rows() && a.a_ == b.a_;
    }

private:
    explicit AdjacencyMatrix(Matrix a) : a_(std::move(a)) {}
    Matrix a_;
};

/// Class labels in {1..K}, every class nonempty.
class LabelVector {
public:
    LabelVector() = default;

    /// K is the maximum label; labels outside {1..K} or empty classes throw InvalidLabels.
    explicit LabelVector(std::vector<int> labels);

    std::size_t size() const noexcept { return y_.size(); }
    int classes() const noexcept { return k_; }
    int operator[](std::size_t i) const noexcept { return y_[i]; }
    const std::vector<int>& values() const noexcept { return y_; }
    /// counts()[k - 1] is the size of class k.
    const std::vector<std::size_t>& counts() const noexcept { return counts_; }

    friend bool operator==(const LabelVector&, const LabelVector&) = default;

private:
    std::vector<int> y_;
    int k_ = 0;
    std::vector<std::size_t> counts_;
};

enum class EmbeddingMethod { ASE, GEE, VGAE };

const char* to_string(EmbeddingMethod method) noexcept;

struct Embedding {
    Matrix z;
    EmbeddingMethod method = EmbeddingMethod::ASE;

    Index size() const noexcept { return z.rows(); }
    Index dim() const noexcept { return z.cols(); }
};

}  // namespace pclique
