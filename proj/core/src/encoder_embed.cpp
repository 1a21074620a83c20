#include "pclique/encoder_embed.hpp"

#include "pclique/error.hpp"

namespace pclique {

Matrix gee_projection(const LabelVector& y) {
    const auto n = static_cast<Index>(y.size());
    Matrix w = Matrix::Zero(n, y.classes());
    for (Index i = 0; i < n; ++i) {
        const int k = y[static_cast<std::size_t>(i)] - 1;
        w(i, k) = 1.0 / static_cast<double>(y.counts()[static_cast<std::size_t>(k)]);
    }
    return w;
}

Embedding gee(const AdjacencyMatrix& a, const LabelVector& y) {
    if (static_cast<Index>(y.size()) != a.size()) {
        throw InvalidArgument("gee: label vector has length " + std::to_string(y.size()) + " but the graph has " +
                              std::to_string(a.size()) + " vertices");
    }
    Embedding out;
    out.method = EmbeddingMethod::GEE;
    // Column sums over class members, then one scaling per class; this keeps
    // the summation order identical to a per-class neighbor count.
    const Index n = a.size();
    const int classes = y.classes();
    out.z = Matrix::Zero(n, classes);
    const Matrix& adj = a.matrix();
    for (Index j = 0; j < n; ++j) {
        const int k = y[static_cast<std::size_t>(j)] - 1;
        out.z.col(k) += adj.col(j);
    }
    for (int k = 0; k < classes; ++k) {
        out.z.col(k) /= static_cast<double>(y.counts()[static_cast<std::size_t>(k)]);
    }
    return out;
}

}  // namespace pclique
