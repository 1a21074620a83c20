#include "pclique/harness/vgae_handoff.hpp"

#include "pclique/error.hpp"
#include "pclique/harness/dataset.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace pclique::harness {

using nlohmann::json;

VgaeJob write_vgae_job(const std::filesystem::path& directory, const AdjacencyMatrix& reference,
                       const AdjacencyMatrix& perturbed, Index latent_dim, const VgaeSettings& settings,
                       std::uint64_t seed) {
    if (reference.size() != perturbed.size()) {
        throw InvalidArgument("vgae job: reference and perturbed graphs differ in size");
    }
    if (latent_dim < 1) {
        throw InvalidArgument("vgae job: latent dimension must be positive");
    }
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) {
        throw IoError("cannot create " + directory.string() + ": " + ec.message());
    }
    VgaeJob job;
    job.manifest = directory / "job.json";
    job.reference_edges = directory / "reference.edges";
    job.perturbed_edges = directory / "perturbed.edges";
    job.reference_output = directory / "reference_embedding.csv";
    job.perturbed_output = directory / "perturbed_embedding.csv";
    job.latent_dim = latent_dim;
    job.hidden_dim = settings.hidden_dim;
    job.epochs = settings.epochs;
    job.learning_rate = settings.learning_rate;
    job.seed = seed;
    write_edge_list(reference, job.reference_edges);
    write_edge_list(perturbed, job.perturbed_edges);
    std::ofstream out(job.manifest);
    if (!out) {
        throw IoError("cannot write " + job.manifest.string());
    }
    out << manifest_json(job) << '\n';
    return job;
}

std::string manifest_json(const VgaeJob& job) {
    // Paths are stored relative to the manifest's directory when they live there.
    const auto base = job.manifest.parent_path();
    auto rel = [&](const std::filesystem::path& p) {
        return p.parent_path() == base ? p.filename().string() : p.string();
    };
    const json root{{"reference_edges", rel(job.reference_edges)},
                    {"perturbed_edges", rel(job.perturbed_edges)},
                    {"reference_output", rel(job.reference_output)},
                    {"perturbed_output", rel(job.perturbed_output)},
                    {"latent_dim", job.latent_dim},
                    {"hidden_dim", job.hidden_dim},
                    {"epochs", job.epochs},
                    {"learning_rate", job.learning_rate},
                    {"seed", job.seed},
                    {"output_format", "csv, one row per vertex, latent_dim columns, posterior mean"}};
    return root.dump(2);
}

VgaeJob read_vgae_manifest(const std::filesystem::path& manifest) {
    std::ifstream in(manifest);
    if (!in) {
        throw IoError("cannot open " + manifest.string());
    }
    json root;
    try {
        root = json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidDataset("vgae manifest is not valid JSON: " + std::string(e.what()));
    }
    const auto base = manifest.parent_path();
    auto resolve = [&](const char* key) {
        const std::filesystem::path p = root.at(key).get<std::string>();
        return p.is_absolute() ? p : base / p;
    };
    try {
        VgaeJob job;
        job.manifest = manifest;
        job.reference_edges = resolve("reference_edges");
        job.perturbed_edges = resolve("perturbed_edges");
        job.reference_output = resolve("reference_output");
        job.perturbed_output = resolve("perturbed_output");
        job.latent_dim = root.at("latent_dim").get<Index>();
        job.hidden_dim = root.at("hidden_dim").get<int>();
        job.epochs = root.at("epochs").get<int>();
        job.learning_rate = root.at("learning_rate").get<double>();
        job.seed = root.at("seed").get<std::uint64_t>();
        return job;
    } catch (const json::exception& e) {
        throw InvalidDataset("vgae manifest is missing a field: " + std::string(e.what()));
    }
}

std::optional<VgaeEmbeddings> ingest_vgae_outputs(const VgaeJob& job, Index n) {
    if (!std::filesystem::exists(job.reference_output) || !std::filesystem::exists(job.perturbed_output)) {
        return std::nullopt;
    }
    auto load = [&](const std::filesystem::path& path) {
        Embedding e;
        e.method = EmbeddingMethod::VGAE;
        e.z = read_matrix_csv(path);
        if (e.z.rows() != n || e.z.cols() != job.latent_dim) {
            throw InvalidDataset("vgae output " + path.string() + " is " + std::to_string(e.z.rows()) + "x" +
                                 std::to_string(e.z.cols()) + ", expected " + std::to_string(n) + "x" +
                                 std::to_string(job.latent_dim));
        }
        if (!e.z.allFinite()) {
            throw InvalidDataset("vgae output " + path.string() + " has non-finite entries");
        }
        return e;
    };
    return VgaeEmbeddings{load(job.reference_output), load(job.perturbed_output)};
}

}  // namespace pclique::harness
