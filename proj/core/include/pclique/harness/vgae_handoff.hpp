#pragma once

#include "pclique/harness/config.hpp"
#include "pclique/types.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace pclique::harness {

/// File handoff to the external VGAE trainer: one job per (A, A^(c)) pair.
/// The trainer reads both edge lists and writes the posterior-mean matrices
/// as header-free CSV to the listed output paths.
struct VgaeJob {
    std::filesystem::path manifest;
    std::filesystem::path reference_edges;
    std::filesystem::path perturbed_edges;
    std::filesystem::path reference_output;
    std::filesystem::path perturbed_output;
    Index latent_dim = 2;
    int hidden_dim = 32;
    int epochs = 200;
    double learning_rate = 0.01;
    std::uint64_t seed = 0;
};

/// Writes both edge lists and the JSON manifest under `directory`.
VgaeJob write_vgae_job(const std::filesystem::path& directory, const AdjacencyMatrix& reference,
                       const AdjacencyMatrix& perturbed, Index latent_dim, const VgaeSettings& settings,
                       std::uint64_t seed);

std::string manifest_json(const VgaeJob& job);
VgaeJob read_vgae_manifest(const std::filesystem::path& manifest);

struct VgaeEmbeddings {
    Embedding reference;
    Embedding perturbed;
};

/// Reads the trainer's outputs when both exist; nullopt if the job has not run.
/// Throws InvalidDataset if a matrix has the wrong shape.
std::optional<VgaeEmbeddings> ingest_vgae_outputs(const VgaeJob& job, Index n);

}  // namespace pclique::harness
