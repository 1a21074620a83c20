#pragma once

#include "pclique/community.hpp"
#include "pclique/graph_model.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pclique::harness {

enum class Design { Unlabeled, Labeled };

enum class Method { ASE, GEE1, GEE2, GEEFixed, VGAE };

const char* to_string(Method method) noexcept;
Method parse_method(const std::string& text);

enum class OutputFormat { Csv, Json };

struct CliqueSpec {
    CliqueRule rule;
    CliqueKind kind = CliqueKind::Pseudo;

    friend bool operator==(const CliqueSpec&, const CliqueSpec&) = default;
};

struct LeidenSettings {
    double cpm_resolution = 0.05;
    int max_iterations = 20;
};

/// VGAE hyperparameters written into job manifests for the external trainer.
struct VgaeSettings {
    int hidden_dim = 32;
    int epochs = 200;
    double learning_rate = 0.01;
    /// Latent dimension; 0 means "same as each ASE dimension".
    int latent_dim = 0;
};

struct EuemailSettings {
    std::filesystem::path edges;
    std::filesystem::path labels;
    /// Number of leading singular values inspected by the elbow rule.
    int scree_values = 20;
};

struct ExperimentConfig {
    Design design = Design::Unlabeled;
    int classes = 3;  // labeled design only
    std::vector<Index> n_grid{100, 300, 500, 700, 900, 1100, 1300, 1500};
    std::vector<CliqueSpec> cliques{{CliqueRule::sqrt_n(), CliqueKind::Pseudo}};
    std::vector<Method> methods{Method::ASE};
    int nmc = 50;
    std::vector<Index> ase_dims{2};
    std::uint64_t seed = 20240601;
    LeidenSettings leiden;
    VgaeSettings vgae;
    EuemailSettings euemail;
    bool record_vertex_distances = false;
    bool record_diagnostics = false;
    int threads = 1;
    OutputFormat format = OutputFormat::Csv;
    std::filesystem::path output = "results";

    /// Throws InvalidArgument when an invariant fails: nmc >= 1, n_grid nonempty
    /// and ascending, every clique rule valid for min(n_grid), ...
    void validate() const;
};

/// Parses a JSON config; unspecified keys keep their defaults. Unknown keys are
/// rejected so typos do not silently fall back to defaults.
ExperimentConfig parse_config(const std::string& json_text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

std::string to_json(const ExperimentConfig& cfg);

/// The six clique-size rules used for the email network sweep, all true cliques:
/// log n, sqrt n, log^2 n, 0.1 n, n^{3/4}, 0.2 n.
std::vector<CliqueSpec> euemail_clique_grid();

}  // namespace pclique::harness
