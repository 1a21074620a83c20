#pragma once

#include "pclique/harness/config.hpp"
#include "pclique/harness/results.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace pclique::harness {

/// Stream key for replicate r of the graph at size n. Every clique rule and
/// method at the same (n, r) sees the same latent positions and base graph.
std::uint64_t replicate_seed(std::uint64_t base, Index n, int replicate);

/// Progress callback: (completed tasks, total tasks).
using Progress = std::function<void(std::size_t, std::size_t)>;

/// Simulation sweep over n_grid x cliques x replicates. Tasks run on up to
/// cfg.threads workers; records come back in a fixed order independent of
/// scheduling. A failing task yields a Failed record per method instead of
/// aborting the sweep.
ResultTable run_sim_experiment(const ExperimentConfig& cfg, const Progress& progress = {});

struct EuemailData {
    AdjacencyMatrix graph;
    LabelVector labels;
};

/// Reads both files and checks that the labels cover exactly the graph's vertices.
EuemailData load_euemail(const std::filesystem::path& edges, const std::filesystem::path& labels);

/// True-clique sweep on a fixed network: ASE at the elbow dimension of the
/// unperturbed graph (reused for every perturbed graph), GEE with the given
/// labels and no alignment, VGAE through file handoff.
ResultTable run_euemail_experiment(const EuemailData& data, const ExperimentConfig& cfg,
                                   const Progress& progress = {});
ResultTable run_euemail_experiment(const std::filesystem::path& edges, const std::filesystem::path& labels,
                                   const ExperimentConfig& cfg, const Progress& progress = {});

/// Elbow dimension of the unperturbed graph from its leading singular values.
Index euemail_ase_dimension(const AdjacencyMatrix& a, int scree_values);

}  // namespace pclique::harness
