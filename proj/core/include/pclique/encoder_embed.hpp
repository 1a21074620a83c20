#pragma once

#include "pclique/types.hpp"

namespace pclique {

/// One-hot label matrix with column k scaled by 1 / n_k (n x K).
Matrix gee_projection(const LabelVector& y);

/// Graph encoder embedding Z = A W: Z(i, k) is the fraction of class-k vertices
/// adjacent to i. Throws InvalidArgument on a length mismatch.
Embedding gee(const AdjacencyMatrix& a, const LabelVector& y);

}  // namespace pclique
