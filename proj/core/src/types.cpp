#include "pclique/types.hpp"

#include "pclique/error.hpp"

#include <algorithm>
#include <sstream>

namespace pclique {

namespace {
constexpr double kSlack = 1e-12;
}

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::InvalidLatent: return "invalid-latent";
        case ErrorKind::InvalidLabels: return "invalid-labels";
        case ErrorKind::InvalidDataset: return "invalid-dataset";
        case ErrorKind::Io: return "io-error";
        case ErrorKind::NumericFailure: return "numeric-failure";
    }
    return "unknown";
}

const char* to_string(EmbeddingMethod method) noexcept {
    switch (method) {
        case EmbeddingMethod::ASE: return "ASE";
        case EmbeddingMethod::GEE: return "GEE";
        case EmbeddingMethod::VGAE: return "VGAE";
    }
    return "unknown";
}

void validate_vertex_set(const VertexSet& set, Index n) {
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set[i] < 0 || set[i] >= n) {
            throw InvalidArgument("vertex index " + std::to_string(set[i]) + " outside [0, " +
                                  std::to_string(n) + ")");
        }
        if (i > 0 && set[i] <= set[i - 1]) {
            throw InvalidArgument("vertex set must be sorted and duplicate-free");
        }
    }
}

LatentPositions::LatentPositions(Matrix x) : x_(std::move(x)) {
    if (x_.rows() < 1 || x_.cols() < 1) {
        throw InvalidLatent("latent positions must be nonempty");
    }
    if (!x_.allFinite()) {
        throw InvalidLatent("latent positions must be finite");
    }
    const Vector norms = x_.rowwise().squaredNorm();
    for (Index i = 0; i < x_.rows(); ++i) {
        if (norms(i) > 1.0 + kSlack) {
            std::ostringstream msg;
            msg << "row " << i << " has squared norm " << norms(i) << " > 1";
            throw InvalidLatent(msg.str());
        }
    }
    // Row norms <= 1 already bound the inner products above by 1 (Cauchy-Schwarz),
    // so only nonnegativity needs the pairwise scan.
    for (Index u = 0; u < x_.rows(); ++u) {
        for (Index v = u + 1; v < x_.rows(); ++v) {
            const double ip = x_.row(u).dot(x_.row(v));
            if (ip < -kSlack) {
                std::ostringstream msg;
                msg << "rows " << u << " and " << v << " have negative inner product " << ip;
                throw InvalidLatent(msg.str());
            }
        }
    }
}

ProbMatrix::ProbMatrix(Matrix p) : p_(std::move(p)) {
    if (p_.rows() != p_.cols()) {
        throw InvalidLatent("probability matrix must be square");
    }
    for (Index j = 0; j < p_.cols(); ++j) {
        for (Index i = 0; i < p_.rows(); ++i) {
            double& value = p_(i, j);
            if (!(value >= -kSlack && value <= 1.0 + kSlack)) {
                std::ostringstream msg;
                msg << "probability P(" << i << ", " << j << ") = " << value << " outside [0, 1]";
                throw InvalidLatent(msg.str());
            }
            value = std::clamp(value, 0.0, 1.0);
        }
    }
    for (Index j = 0; j < p_.cols(); ++j) {
        for (Index i = j + 1; i < p_.rows(); ++i) {
            if (std::abs(p_(i, j) - p_(j, i)) > kSlack) {
                throw InvalidLatent("probability matrix must be symmetric");
            }
        }
    }
}

AdjacencyMatrix::AdjacencyMatrix(Index n) : a_(Matrix::Zero(n, n)) {
    if (n < 0) {
        throw InvalidArgument("vertex count must be nonnegative");
    }
}

AdjacencyMatrix AdjacencyMatrix::from_dense(Matrix a) {
    if (a.rows() != a.cols()) {
        throw InvalidArgument("adjacency matrix must be square");
    }
    for (Index j = 0; j < a.cols(); ++j) {
        if (a(j, j) != 0.0) {
            throw InvalidArgument("adjacency matrix must have a zero diagonal");
        }
        for (Index i = 0; i < a.rows(); ++i) {
            const double value = a(i, j);
            if (value != 0.0 && value != 1.0) {
                throw InvalidArgument("adjacency matrix must be binary (weighted graphs are not supported)");
            }
            if (value != a(j, i)) {
                throw InvalidArgument("adjacency matrix must be symmetric");
            }
        }
    }
    return AdjacencyMatrix(std::move(a));
}

AdjacencyMatrix AdjacencyMatrix::from_edges(Index n, std::span<const std::pair<Index, Index>> edges) {
    AdjacencyMatrix a(n);
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw InvalidArgument("edge endpoint outside [0, n)");
        }
        if (u == v) {
            throw InvalidArgument("self-loops are not allowed");
        }
        a.set_edge(u, v);
    }
    return a;
}

void AdjacencyMatrix::set_edge(Index u, Index v) {
    if (u == v) {
        throw InvalidArgument("self-loops are not allowed");
    }
    a_(u, v) = 1.0;
    a_(v, u) = 1.0;
}

std::size_t AdjacencyMatrix::edge_count() const noexcept {
    return static_cast<std::size_t>(a_.sum() / 2.0 + 0.5);
}

double AdjacencyMatrix::density() const noexcept {
    const Index n = size();
    if (n < 2) {
        return 0.0;
    }
    return static_cast<double>(edge_count()) / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

std::vector<Index> AdjacencyMatrix::degrees() const {
    std::vector<Index> out(static_cast<std::size_t>(size()));
    const Vector sums = a_.colwise().sum();
    for (Index i = 0; i < size(); ++i) {
        out[static_cast<std::size_t>(i)] = static_cast<Index>(sums(i) + 0.5);
    }
    return out;
}

std::vector<std::pair<Index, Index>> AdjacencyMatrix::edges() const {
    std::vector<std::pair<Index, Index>> out;
    for (Index u = 0; u < size(); ++u) {
        for (Index v = u + 1; v < size(); ++v) {
            if (a_(u, v) != 0.0) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

LabelVector::LabelVector(std::vector<int> labels) : y_(std::move(labels)) {
    if (y_.empty()) {
        throw InvalidLabels("label vector must be nonempty");
    }
    const auto [lo, hi] = std::minmax_element(y_.begin(), y_.end());
    if (*lo < 1) {
        throw InvalidLabels("labels must lie in {1..K}");
    }
    k_ = *hi;
    counts_.assign(static_cast<std::size_t>(k_), 0);
    for (const int label : y_) {
        ++counts_[static_cast<std::size_t>(label - 1)];
    }
    for (std::size_t k = 0; k < counts_.size(); ++k) {
        if (counts_[k] == 0) {
            throw InvalidLabels("class " + std::to_string(k + 1) + " is empty");
        }
    }
}

}  // namespace pclique
