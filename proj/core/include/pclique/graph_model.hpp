#pragma once

#include "pclique/random.hpp"
#include "pclique/types.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace pclique {

/// How the clique size scales with n. Logarithms are natural.
struct CliqueRule {
    enum class Scale { LogN, Log2N, SqrtN, N34, Fraction };

    Scale scale = Scale::SqrtN;
    double fraction = 0.0;  // only read for Scale::Fraction

    static CliqueRule log_n() { return {Scale::LogN, 0.0}; }
    static CliqueRule log2_n() { return {Scale::Log2N, 0.0}; }
    static CliqueRule sqrt_n() { return {Scale::SqrtN, 0.0}; }
    static CliqueRule n_3_4() { return {Scale::N34, 0.0}; }
    static CliqueRule frac(double rho) { return {Scale::Fraction, rho}; }

    /// Accepts "log_n", "log2_n", "sqrt_n", "n_3_4" and "frac(0.2)".
    static CliqueRule parse(const std::string& text);
    std::string to_string() const;

    friend bool operator==(const CliqueRule&, const CliqueRule&) = default;
};

enum class CliqueKind { Pseudo, True };

CliqueKind parse_clique_kind(const std::string& text);
const char* to_string(CliqueKind kind) noexcept;

/// Projection onto the first two coordinates of n i.i.d. Dirichlet(1,1,1) draws.
LatentPositions sample_dirichlet_latents(Index n, std::uint64_t seed);

/// Concentration vector of mixture component k (0-based) out of K.
/// For K = 3 these are (5,1,1), (1,5,1), (1,1,5).
std::array<double, 3> mixture_concentration(int k, int classes);

/// Labels uniform over {1..K} (resampled until every class is nonempty), rows
/// drawn from the label's Dirichlet component and projected to 2 coordinates.
std::pair<LatentPositions, LabelVector> sample_mixture_latents(Index n, int classes, std::uint64_t seed);

/// Rule value rounded half-up and clamped to [2, n].
Index clique_size(Index n, const CliqueRule& rule);

/// Uniform sample of `size` distinct vertices from [0, n), sorted.
VertexSet choose_clique(Index n, Index size, std::uint64_t seed);

/// Appends V^(c): sqrt(1 - |X_i|^2) on clique rows, 0 elsewhere.
AugmentedLatent augment_pseudo_clique(const LatentPositions& x, const VertexSet& clique);

ProbMatrix edge_prob_matrix(const LatentPositions& x);
ProbMatrix edge_prob_matrix(const AugmentedLatent& x);

/// Independent Bernoulli(P_uv) for u < v, mirrored, zero diagonal.
AdjacencyMatrix sample_rdpg(const ProbMatrix& p, std::uint64_t seed);

/// Samples from P and P^(c) with common uniforms: the same draw U_uv decides
/// both A_uv = [U_uv < P_uv] and A^(c)_uv = [U_uv < P^(c)_uv]. The first
/// graph is bit-identical to sample_rdpg(p, seed).
std::pair<AdjacencyMatrix, AdjacencyMatrix> sample_rdpg_pair(const ProbMatrix& p,
                                                             const ProbMatrix& p_perturbed,
                                                             std::uint64_t seed);

/// Sets every edge inside the clique; all other entries are unchanged.
AdjacencyMatrix plant_true_clique(const AdjacencyMatrix& a, const VertexSet& clique);

}  // namespace pclique
