#pragma once

#include "pclique/types.hpp"

#include <vector>

namespace pclique {

/// Selected eigenpairs of a symmetric matrix, one column per eigenvalue.
struct Eigenpairs {
    Vector values;
    Matrix vectors;
};

enum class SpectrumOrder {
    /// Largest |lambda| first; ties go to the positive eigenvalue, then to the
    /// larger algebraic position.
    Magnitude,
    /// Largest lambda first.
    Algebraic,
};

/// Top `count` eigenpairs of the symmetric matrix m (only its lower triangle is
/// read). Each eigenvector is flipped so that its entry of largest absolute
/// value is positive (first such index on ties).
Eigenpairs top_eigenpairs(const Matrix& m, Index count, SpectrumOrder order);

/// Top `count` eigenvalues only, same ordering rules.
Vector top_eigenvalues(const Matrix& m, Index count, SpectrumOrder order);

/// Adjacency spectral embedding U diag(|lambda|)^{1/2} over the d eigenpairs of
/// largest magnitude.
Embedding ase(const Matrix& symmetric, Index d);
Embedding ase(const AdjacencyMatrix& a, Index d);
Embedding ase(const ProbMatrix& p, Index d);

struct ScreeData {
    std::vector<double> values;  // descending, nonnegative
};

/// Top-k singular values; for a symmetric matrix these are the k largest |lambda|.
ScreeData singular_values(const AdjacencyMatrix& a, Index k);
ScreeData singular_values(const Matrix& symmetric, Index k);

/// First elbow of a scree profile by two-segment Gaussian profile likelihood
/// with a common variance. Returns q in [1, p-1]: the first q values form the
/// signal segment. The smallest maximizing q wins ties, and a split with zero
/// pooled variance has infinite likelihood.
Index elbow_dimension(const ScreeData& scree);

/// Profile log-likelihood of the split after the first q values (q in [1, p-1]).
double elbow_profile_loglik(const std::vector<double>& values, Index q);

}  // namespace pclique
