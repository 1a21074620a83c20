#include "pclique/metrics.hpp"

#include "pclique/error.hpp"
#include "pclique/spectral_embed.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace pclique {

namespace {

void require_same_shape(const Matrix& b, const Matrix& a, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidArgument(std::string(what) + ": shape mismatch (" + std::to_string(b.rows()) + "x" +
                              std::to_string(b.cols()) + " vs " + std::to_string(a.rows()) + "x" +
                              std::to_string(a.cols()) + ")");
    }
}

}  // namespace

AlignmentResult procrustes_align(const Matrix& b, const Matrix& a) {
    require_same_shape(b, a, "procrustes_align");
    if (a.cols() == 0) {
        throw InvalidArgument("procrustes_align: embeddings need at least one column");
    }
    const Matrix cross = a.transpose() * b;
    Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    AlignmentResult out;
    out.w = svd.matrixU() * svd.matrixV().transpose();
    out.residual = (b - a * out.w).norm();
    return out;
}

AlignmentResult procrustes_align(const Embedding& b, const Embedding& a) { return procrustes_align(b.z, a.z); }

double procrustes_distance(const Embedding& b, const Embedding& a) { return procrustes_align(b, a).residual; }

std::pair<Embedding, Embedding> pad_columns(const Embedding& b, const Embedding& a) {
    if (a.size() != b.size()) {
        throw InvalidArgument("pad_columns: row-count mismatch");
    }
    const Index width = std::max(a.dim(), b.dim());
    auto pad = [width](const Embedding& e) {
        Embedding out;
        out.method = e.method;
        out.z = Matrix::Zero(e.size(), width);
        out.z.leftCols(e.dim()) = e.z;
        return out;
    };
    return {pad(b), pad(a)};
}

Matrix aligned_difference(const Embedding& perturbed, const Embedding& reference, Alignment align) {
    require_same_shape(perturbed.z, reference.z, "aligned_difference");
    if (align == Alignment::Identity) {
        return perturbed.z - reference.z;
    }
    // W rotates the perturbed embedding onto the reference: min ||ref - pert W||.
    const AlignmentResult fit = procrustes_align(reference.z, perturbed.z);
    return perturbed.z * fit.w - reference.z;
}

Vector vertex_distances(const Embedding& perturbed, const Embedding& reference, Alignment align) {
    return aligned_difference(perturbed, reference, align).rowwise().squaredNorm();
}

double graph_distance(const Embedding& perturbed, const Embedding& reference, Alignment align) {
    return aligned_difference(perturbed, reference, align).norm();
}

double normalized_distance(double dist, const Embedding& reference) {
    const double scale = reference.z.norm();
    if (!(scale > 0.0)) {
        throw InvalidArgument("normalized_distance: reference embedding has zero norm");
    }
    return dist / scale;
}

double two_to_inf_norm(const Matrix& m) {
    if (m.rows() == 0) {
        return 0.0;
    }
    return m.rowwise().norm().maxCoeff();
}

Diagnostics diagnostics(const ProbMatrix& p, Index d, const LabelVector* labels, const VertexSet* clique) {
    const Index n = p.size();
    if (d < 1 || d > n) {
        throw InvalidArgument("diagnostics: dimension " + std::to_string(d) + " outside [1, " + std::to_string(n) +
                              "]");
    }
    const Matrix& pm = p.matrix();
    Diagnostics out;
    const Vector row_sums = pm.rowwise().sum();
    out.delta = row_sums.maxCoeff();

    const Eigenpairs top = top_eigenpairs(pm, d, SpectrumOrder::Algebraic);
    out.lambda_d = top.values(d - 1);
    out.gamma = out.delta > 0.0 ? out.lambda_d / out.delta : 0.0;
    out.deloc_max_row = two_to_inf_norm(top.vectors);
    out.deloc_reference = std::sqrt(static_cast<double>(d) / static_cast<double>(n));

    if (labels != nullptr) {
        if (static_cast<Index>(labels->size()) != n) {
            throw InvalidArgument("diagnostics: label length mismatch");
        }
        double xi = std::numeric_limits<double>::infinity();
        for (int k = 1; k <= labels->classes(); ++k) {
            Vector within = Vector::Zero(n);
            for (Index j = 0; j < n; ++j) {
                if ((*labels)[static_cast<std::size_t>(j)] == k) {
                    within += pm.col(j);
                }
            }
            xi = std::min(xi, within.minCoeff());
        }
        out.xi = xi;
    }
    if (clique != nullptr) {
        validate_vertex_set(*clique, n);
        out.alpha = clique->size();
    }
    return out;
}

double gee_bound_rate(Index n, int classes, std::size_t alpha) {
    const double nn = static_cast<double>(n);
    return std::sqrt(static_cast<double>(classes) * std::log(nn) / nn) + static_cast<double>(alpha) / nn;
}

}  // namespace pclique
