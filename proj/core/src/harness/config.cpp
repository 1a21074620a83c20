#include "pclique/harness/config.hpp"

#include "pclique/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace pclique::harness {

using nlohmann::json;

const char* to_string(Method method) noexcept {
    switch (method) {
        case Method::ASE: return "ASE";
        case Method::GEE1: return "GEE1";
        case Method::GEE2: return "GEE2";
        case Method::GEEFixed: return "GEE_fixed";
        case Method::VGAE: return "VGAE";
    }
    return "unknown";
}

Method parse_method(const std::string& text) {
    if (text == "ASE") return Method::ASE;
    if (text == "GEE1") return Method::GEE1;
    if (text == "GEE2") return Method::GEE2;
    if (text == "GEE_fixed" || text == "GEE") return Method::GEEFixed;
    if (text == "VGAE") return Method::VGAE;
    throw InvalidArgument("unknown method: " + text);
}

void ExperimentConfig::validate() const {
    if (nmc < 1) {
        throw InvalidArgument("nmc must be at least 1");
    }
    if (n_grid.empty()) {
        throw InvalidArgument("n_grid must be nonempty");
    }
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] < 2) {
            throw InvalidArgument("every n in n_grid must be at least 2");
        }
        if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
            throw InvalidArgument("n_grid must be strictly ascending");
        }
    }
    if (cliques.empty()) {
        throw InvalidArgument("at least one clique rule is required");
    }
    for (const auto& spec : cliques) {
        if (spec.rule.scale == CliqueRule::Scale::Fraction && !(spec.rule.fraction > 0.0 && spec.rule.fraction <= 1.0)) {
            throw InvalidArgument("clique fraction must lie in (0, 1]");
        }
    }
    if (methods.empty()) {
        throw InvalidArgument("at least one method is required");
    }
    const bool wants_ase = std::find(methods.begin(), methods.end(), Method::ASE) != methods.end() ||
                           std::find(methods.begin(), methods.end(), Method::VGAE) != methods.end();
    if (wants_ase && ase_dims.empty()) {
        throw InvalidArgument("ase_dims must be nonempty when ASE or VGAE is requested");
    }
    for (const Index d : ase_dims) {
        if (d < 1 || d > n_grid.front()) {
            throw InvalidArgument("every ASE dimension must lie in [1, min(n_grid)]");
        }
    }
    if (design == Design::Labeled && (classes < 2 || classes > n_grid.front())) {
        throw InvalidArgument("labeled design needs 2 <= classes <= min(n_grid)");
    }
    if (design == Design::Unlabeled &&
        std::find(methods.begin(), methods.end(), Method::GEEFixed) != methods.end()) {
        throw InvalidArgument("GEE_fixed needs ground-truth labels (labeled design)");
    }
    if (!(leiden.cpm_resolution > 0.0) || leiden.max_iterations < 1) {
        throw InvalidArgument("leiden settings need cpm_resolution > 0 and max_iterations >= 1");
    }
    if (vgae.hidden_dim < 1 || vgae.epochs < 1 || !(vgae.learning_rate > 0.0) || vgae.latent_dim < 0) {
        throw InvalidArgument("vgae settings must be positive");
    }
    if (euemail.scree_values < 2) {
        throw InvalidArgument("euemail.scree_values must be at least 2");
    }
    if (threads < 1) {
        throw InvalidArgument("threads must be at least 1");
    }
}

namespace {

void reject_unknown_keys(const json& object, std::initializer_list<const char*> known, const std::string& where) {
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& item : object.items()) {
        if (!allowed.contains(item.key())) {
            throw InvalidArgument("unknown config key '" + item.key() + "' in " + where);
        }
    }
}

template <typename T>
void read_if(const json& object, const char* key, T& target) {
    if (object.contains(key)) {
        target = object.at(key).get<T>();
    }
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text, ExperimentConfig cfg) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw InvalidArgument("config must be a JSON object");
    }
    try {
        reject_unknown_keys(root,
                            {"design", "classes", "n_grid", "cliques", "methods", "nmc", "ase_dims", "seed", "leiden",
                             "vgae", "euemail", "record_vertex_distances", "record_diagnostics", "threads", "format",
                             "output"},
                            "config");
        if (root.contains("design")) {
            const auto design = root.at("design").get<std::string>();
            if (design == "unlabeled") {
                cfg.design = Design::Unlabeled;
            } else if (design == "labeled") {
                cfg.design = Design::Labeled;
            } else {
                throw InvalidArgument("design must be 'unlabeled' or 'labeled'");
            }
        }
        read_if(root, "classes", cfg.classes);
        read_if(root, "n_grid", cfg.n_grid);
        if (root.contains("cliques")) {
            cfg.cliques.clear();
            for (const auto& item : root.at("cliques")) {
                reject_unknown_keys(item, {"rule", "kind"}, "cliques[]");
                CliqueSpec spec;
                spec.rule = CliqueRule::parse(item.at("rule").get<std::string>());
                spec.kind = parse_clique_kind(item.value("kind", std::string("pseudo")));
                cfg.cliques.push_back(spec);
            }
        }
        if (root.contains("methods")) {
            cfg.methods.clear();
            for (const auto& item : root.at("methods")) {
                cfg.methods.push_back(parse_method(item.get<std::string>()));
            }
        }
        read_if(root, "nmc", cfg.nmc);
        read_if(root, "ase_dims", cfg.ase_dims);
        read_if(root, "seed", cfg.seed);
        if (root.contains("leiden")) {
            const auto& leiden = root.at("leiden");
            reject_unknown_keys(leiden, {"cpm_resolution", "max_iterations"}, "leiden");
            read_if(leiden, "cpm_resolution", cfg.leiden.cpm_resolution);
            read_if(leiden, "max_iterations", cfg.leiden.max_iterations);
        }
        if (root.contains("vgae")) {
            const auto& vgae = root.at("vgae");
            reject_unknown_keys(vgae, {"hidden_dim", "epochs", "learning_rate", "latent_dim"}, "vgae");
            read_if(vgae, "hidden_dim", cfg.vgae.hidden_dim);
            read_if(vgae, "epochs", cfg.vgae.epochs);
            read_if(vgae, "learning_rate", cfg.vgae.learning_rate);
            read_if(vgae, "latent_dim", cfg.vgae.latent_dim);
        }
        if (root.contains("euemail")) {
            const auto& eu = root.at("euemail");
            reject_unknown_keys(eu, {"edges", "labels", "scree_values"}, "euemail");
            if (eu.contains("edges")) cfg.euemail.edges = eu.at("edges").get<std::string>();
            if (eu.contains("labels")) cfg.euemail.labels = eu.at("labels").get<std::string>();
            read_if(eu, "scree_values", cfg.euemail.scree_values);
        }
        read_if(root, "record_vertex_distances", cfg.record_vertex_distances);
        read_if(root, "record_diagnostics", cfg.record_diagnostics);
        read_if(root, "threads", cfg.threads);
        if (root.contains("format")) {
            const auto format = root.at("format").get<std::string>();
            if (format == "csv") {
                cfg.format = OutputFormat::Csv;
            } else if (format == "json") {
                cfg.format = OutputFormat::Json;
            } else {
                throw InvalidArgument("format must be 'csv' or 'json'");
            }
        }
        if (root.contains("output")) cfg.output = root.at("output").get<std::string>();
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("config has a value of the wrong type: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), std::move(base));
}

std::string to_json(const ExperimentConfig& cfg) {
    json root;
    root["design"] = cfg.design == Design::Unlabeled ? "unlabeled" : "labeled";
    root["classes"] = cfg.classes;
    root["n_grid"] = cfg.n_grid;
    json cliques = json::array();
    for (const auto& spec : cfg.cliques) {
        cliques.push_back({{"rule", spec.rule.to_string()}, {"kind", pclique::to_string(spec.kind)}});
    }
    root["cliques"] = cliques;
    json methods = json::array();
    for (const auto method : cfg.methods) {
        methods.push_back(to_string(method));
    }
    root["methods"] = methods;
    root["nmc"] = cfg.nmc;
    root["ase_dims"] = cfg.ase_dims;
    root["seed"] = cfg.seed;
    root["leiden"] = {{"cpm_resolution", cfg.leiden.cpm_resolution}, {"max_iterations", cfg.leiden.max_iterations}};
    root["vgae"] = {{"hidden_dim", cfg.vgae.hidden_dim},
                    {"epochs", cfg.vgae.epochs},
                    {"learning_rate", cfg.vgae.learning_rate},
                    {"latent_dim", cfg.vgae.latent_dim}};
    root["euemail"] = {{"edges", cfg.euemail.edges.string()},
                       {"labels", cfg.euemail.labels.string()},
                       {"scree_values", cfg.euemail.scree_values}};
    root["record_vertex_distances"] = cfg.record_vertex_distances;
    root["record_diagnostics"] = cfg.record_diagnostics;
    root["threads"] = cfg.threads;
    root["format"] = cfg.format == OutputFormat::Csv ? "csv" : "json";
    root["output"] = cfg.output.string();
    return root.dump(2);
}

std::vector<CliqueSpec> euemail_clique_grid() {
    return {
        {CliqueRule::log_n(), CliqueKind::True},   {CliqueRule::sqrt_n(), CliqueKind::True},
        {CliqueRule::log2_n(), CliqueKind::True},  {CliqueRule::frac(0.1), CliqueKind::True},
        {CliqueRule::n_3_4(), CliqueKind::True},   {CliqueRule::frac(0.2), CliqueKind::True},
    };
}

}  // namespace pclique::harness
