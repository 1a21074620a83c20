#pragma once

#include "pclique/types.hpp"

#include <optional>
#include <utility>

namespace pclique {

struct AlignmentResult {
    Matrix w;               // k x k orthogonal
    double residual = 0.0;  // ||B - A W||_F
};

/// Minimizes ||b - a W||_F over the full orthogonal group O(k), reflections
/// included: W = U V^T from the SVD U S V^T of a^T b.
AlignmentResult procrustes_align(const Matrix& b, const Matrix& a);
AlignmentResult procrustes_align(const Embedding& b, const Embedding& a);

double procrustes_distance(const Embedding& b, const Embedding& a);

/// Right-pads the narrower embedding with zero columns.
std::pair<Embedding, Embedding> pad_columns(const Embedding& b, const Embedding& a);

enum class Alignment { Procrustes, Identity };

/// Squared per-row distances between a reference and a perturbed embedding.
/// Procrustes mode rotates the perturbed embedding onto the reference first,
/// so the entries sum to procrustes_distance^2.
Vector vertex_distances(const Embedding& perturbed, const Embedding& reference, Alignment align);

/// Graph-level distance in the given mode (Frobenius, after alignment).
double graph_distance(const Embedding& perturbed, const Embedding& reference, Alignment align);

/// Aligned difference perturbed * W - reference (W = I in identity mode).
Matrix aligned_difference(const Embedding& perturbed, const Embedding& reference, Alignment align);

/// dist / ||reference||_F; throws InvalidArgument for a zero reference.
double normalized_distance(double dist, const Embedding& reference);

/// Largest Euclidean row norm.
double two_to_inf_norm(const Matrix& m);

struct Diagnostics {
    double delta = 0.0;     // max_i sum_j P_ij
    double lambda_d = 0.0;  // d-th largest eigenvalue of P
    double gamma = 0.0;     // lambda_d / delta
    std::optional<double> xi;          // min_{i,k} sum_{j: y_j = k} P_ij
    std::optional<std::size_t> alpha;  // clique size
    double deloc_max_row = 0.0;        // max_i ||(U_P)_i||_2 over the top-d eigenvectors
    double deloc_reference = 0.0;      // sqrt(d / n), the delocalized baseline
};

Diagnostics diagnostics(const ProbMatrix& p, Index d, const LabelVector* labels = nullptr,
                        const VertexSet* clique = nullptr);

/// Right-hand side shape of the GEE perturbation bound: sqrt(K log n / n) + alpha / n.
double gee_bound_rate(Index n, int classes, std::size_t alpha);

}  // namespace pclique
