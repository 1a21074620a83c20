#include "pclique/harness/experiment.hpp"

#include "pclique/community.hpp"
#include "pclique/encoder_embed.hpp"
#include "pclique/error.hpp"
#include "pclique/harness/dataset.hpp"
#include "pclique/harness/vgae_handoff.hpp"
#include "pclique/metrics.hpp"
#include "pclique/random.hpp"
#include "pclique/spectral_embed.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <optional>
#include <thread>

namespace pclique::harness {

namespace {

// Stream tags under a replicate key.
enum Tag : std::uint64_t { kLatents = 1, kGraph = 2, kClique = 3, kLeiden = 4, kVgae = 5, kEuemail = 6 };

std::uint64_t text_hash(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : text) {
        h = (h ^ c) * 0x100000001b3ULL;
    }
    return h;
}

std::vector<Index> vgae_dims(const ExperimentConfig& cfg) {
    if (cfg.vgae.latent_dim > 0) return {static_cast<Index>(cfg.vgae.latent_dim)};
    return cfg.ase_dims;
}

// Runs `count` independent tasks on up to `threads` workers. Each task writes
// only its own slot, so the result order never depends on scheduling.
template <typename F>
void run_tasks(std::size_t count, int threads, const Progress& progress, F task) {
    std::atomic<std::size_t> next{0};
    std::size_t done = 0;
    std::mutex progress_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            task(i);
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(++done, count);
            }
        }
    };
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || count <= 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(workers, count); ++t) {
        pool.emplace_back(worker);
    }
    for (auto& th : pool) th.join();
}

struct RecordKey {
    std::string method;
    Index n = 0;
    std::string rule;
    std::string kind;
    Index dim = 0;
    int replicate = 0;
    std::size_t clique_size = 0;
};

ResultRecord make_record(const RecordKey& key) {
    ResultRecord r;
    r.method = key.method;
    r.n = key.n;
    r.clique_rule = key.rule;
    r.clique_kind = key.kind;
    r.embed_dim = key.dim;
    r.replicate = key.replicate;
    r.clique_size = key.clique_size;
    return r;
}

void fill_distances(ResultRecord& r, const Embedding& perturbed, const Embedding& reference, Alignment align,
                    bool keep_vertices) {
    const Matrix diff = aligned_difference(perturbed, reference, align);
    r.graph_distance = diff.norm();
    r.normalized_distance = normalized_distance(r.graph_distance, reference);
    r.two_to_inf_distance = two_to_inf_norm(diff);
    if (!std::isfinite(r.graph_distance)) {
        throw NumericFailure("non-finite embedding distance");
    }
    if (keep_vertices) {
        const Vector d = diff.rowwise().squaredNorm();
        r.vertex_distances.assign(d.data(), d.data() + d.size());
    }
}

void mark_failed(ResultRecord& r, const std::exception& e) {
    r.status = RecordStatus::Failed;
    r.error = e.what();
    r.graph_distance = r.normalized_distance = r.two_to_inf_distance = 0.0;
    r.vertex_distances.clear();
}

// Evaluates one record, converting any library error into a Failed record.
template <typename F>
ResultRecord guarded(const RecordKey& key, F body) {
    ResultRecord r = make_record(key);
    try {
        body(r);
    } catch (const std::exception& e) {
        mark_failed(r, e);
    }
    return r;
}

// Lazily computed per-graph Leiden labels, keyed by quality kind.
struct LabelCache {
    std::optional<LabelVector> modularity;
    std::optional<LabelVector> cpm;
};

const LabelVector& leiden_labels(LabelCache& cache, const AdjacencyMatrix& a, Method method,
                                 const ExperimentConfig& cfg, std::uint64_t key, std::uint64_t graph_id) {
    const bool mod = method == Method::GEE1;
    auto& slot = mod ? cache.modularity : cache.cpm;
    if (!slot) {
        const PartitionQuality quality =
            mod ? PartitionQuality::modularity() : PartitionQuality::cpm(cfg.leiden.cpm_resolution);
        LeidenOptions options;
        options.max_iterations = cfg.leiden.max_iterations;
        slot = leiden(a, quality, derive_seed(key, {kLeiden, mod ? 1u : 2u, graph_id}), options);
    }
    return *slot;
}

struct Unperturbed {
    LatentPositions x;
    std::optional<LabelVector> labels;
    ProbMatrix p;
    AdjacencyMatrix a;
};

Unperturbed sample_unperturbed(const ExperimentConfig& cfg, Index n, std::uint64_t key) {
    const std::uint64_t latent_seed = derive_seed(key, {kLatents});
    if (cfg.design == Design::Labeled) {
        auto [x, y] = sample_mixture_latents(n, cfg.classes, latent_seed);
        ProbMatrix p = edge_prob_matrix(x);
        AdjacencyMatrix a = sample_rdpg(p, derive_seed(key, {kGraph}));
        return {std::move(x), std::move(y), std::move(p), std::move(a)};
    }
    LatentPositions x = sample_dirichlet_latents(n, latent_seed);
    ProbMatrix p = edge_prob_matrix(x);
    AdjacencyMatrix a = sample_rdpg(p, derive_seed(key, {kGraph}));
    return {std::move(x), std::nullopt, std::move(p), std::move(a)};
}

std::filesystem::path vgae_job_dir(const ExperimentConfig& cfg, const std::string& tag, Index n,
                                   const CliqueSpec& spec, int replicate, Index dim) {
    return cfg.output / "vgae_jobs" /
           (tag + "_n" + std::to_string(n) + "_" + spec.rule.to_string() + "_" + to_string(spec.kind) + "_r" +
            std::to_string(replicate) + "_d" + std::to_string(dim));
}

// VGAE: write the job, ingest outputs when the trainer has already run.
ResultRecord vgae_record(const RecordKey& key, const ExperimentConfig& cfg, const std::filesystem::path& dir,
                         const AdjacencyMatrix& a, const AdjacencyMatrix& ac, std::uint64_t seed) {
    return guarded(key, [&](ResultRecord& r) {
        const VgaeJob job = write_vgae_job(dir, a, ac, key.dim, cfg.vgae, seed);
        const auto outputs = ingest_vgae_outputs(job, a.size());
        if (!outputs) {
            r.status = RecordStatus::Pending;
            r.error = "awaiting trainer output: " + job.manifest.string();
            return;
        }
        fill_distances(r, outputs->perturbed, outputs->reference, Alignment::Identity, cfg.record_vertex_distances);
    });
}

}  // namespace

std::uint64_t replicate_seed(std::uint64_t base, Index n, int replicate) {
    return derive_seed(base, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(replicate)});
}

ResultTable run_sim_experiment(const ExperimentConfig& cfg, const Progress& progress) {
    cfg.validate();
    const std::size_t per_n = static_cast<std::size_t>(cfg.nmc);
    const std::size_t tasks = cfg.n_grid.size() * per_n;
    // slots[task][clique] holds that clique's records for one (n, r).
    std::vector<std::vector<ResultTable>> slots(tasks);

    run_tasks(tasks, cfg.threads, progress, [&](std::size_t task) {
        const Index n = cfg.n_grid[task / per_n];
        const int r = static_cast<int>(task % per_n);
        const std::uint64_t key = replicate_seed(cfg.seed, n, r);
        auto& out = slots[task];
        out.assign(cfg.cliques.size(), {});

        std::optional<Unperturbed> base;
        std::string base_error;
        try {
            base = sample_unperturbed(cfg, n, key);
        } catch (const std::exception& e) {
            base_error = e.what();
        }

        std::optional<Diagnostics> diag;
        if (base && cfg.record_diagnostics) {
            try {
                diag = diagnostics(base->p, base->x.dim(), base->labels ? &*base->labels : nullptr, nullptr);
            } catch (const std::exception&) {
                diag.reset();
            }
        }

        std::vector<std::optional<Embedding>> ase_ref(cfg.ase_dims.size());
        LabelCache ref_labels;
        std::optional<Embedding> gee_fixed_ref;

        for (std::size_t c = 0; c < cfg.cliques.size(); ++c) {
            const CliqueSpec& spec = cfg.cliques[c];
            const std::string rule = spec.rule.to_string();
            RecordKey rk{"", n, rule, to_string(spec.kind), 0, r, 0};
            auto& records = out[c];

            VertexSet clique;
            AdjacencyMatrix ac;
            std::string setup_error = base_error;
            if (base) {
                try {
                    const Index size = clique_size(n, spec.rule);
                    rk.clique_size = static_cast<std::size_t>(size);
                    clique = choose_clique(n, size, derive_seed(key, {kClique, text_hash(rule)}));
                    if (spec.kind == CliqueKind::Pseudo) {
                        const ProbMatrix pc = edge_prob_matrix(augment_pseudo_clique(base->x, clique));
                        ac = sample_rdpg_pair(base->p, pc, derive_seed(key, {kGraph})).second;
                    } else {
                        ac = plant_true_clique(base->a, clique);
                    }
                } catch (const std::exception& e) {
                    setup_error = e.what();
                }
            }
            const bool ready = setup_error.empty();

            auto emit = [&](ResultRecord rec) {
                if (ready) {
                    rec.clique_indices.assign(clique.begin(), clique.end());
                    if (diag) {
                        rec.delta = diag->delta;
                        rec.lambda_d = diag->lambda_d;
                        rec.gamma = diag->gamma;
                        rec.xi = diag->xi;
                        rec.deloc_max_row = diag->deloc_max_row;
                    }
                } else {
                    rec.status = RecordStatus::Failed;
                    rec.error = setup_error;
                }
                records.push_back(std::move(rec));
            };

            LabelCache pert_labels;
            for (const Method method : cfg.methods) {
                rk.method = to_string(method);
                switch (method) {
                    case Method::ASE:
                        for (std::size_t j = 0; j < cfg.ase_dims.size(); ++j) {
                            rk.dim = cfg.ase_dims[j];
                            if (!ready) {
                                emit(make_record(rk));
                                continue;
                            }
                            emit(guarded(rk, [&](ResultRecord& rec) {
                                if (!ase_ref[j]) ase_ref[j] = ase(base->a, rk.dim);
                                fill_distances(rec, ase(ac, rk.dim), *ase_ref[j], Alignment::Procrustes,
                                               cfg.record_vertex_distances);
                            }));
                        }
                        break;
                    case Method::GEE1:
                    case Method::GEE2:
                        // Leiden picks K per graph, so the width is data-dependent; dim 0 marks that.
                        rk.dim = 0;
                        if (!ready) {
                            emit(make_record(rk));
                            break;
                        }
                        emit(guarded(rk, [&](ResultRecord& rec) {
                            const LabelVector& y = leiden_labels(ref_labels, base->a, method, cfg, key, 0);
                            const LabelVector& yc = leiden_labels(pert_labels, ac, method, cfg, key, c + 1);
                            const auto [zc, z] = pad_columns(gee(ac, yc), gee(base->a, y));
                            fill_distances(rec, zc, z, Alignment::Procrustes, cfg.record_vertex_distances);
                        }));
                        break;
                    case Method::GEEFixed:
                        rk.dim = cfg.classes;
                        if (!ready) {
                            emit(make_record(rk));
                            break;
                        }
                        emit(guarded(rk, [&](ResultRecord& rec) {
                            if (!gee_fixed_ref) gee_fixed_ref = gee(base->a, *base->labels);
                            fill_distances(rec, gee(ac, *base->labels), *gee_fixed_ref, Alignment::Identity,
                                           cfg.record_vertex_distances);
                        }));
                        break;
                    case Method::VGAE:
                        for (const Index d : vgae_dims(cfg)) {
                            rk.dim = d;
                            if (!ready) {
                                emit(make_record(rk));
                                continue;
                            }
                            emit(vgae_record(rk, cfg, vgae_job_dir(cfg, "sim", n, spec, r, d), base->a, ac,
                                             derive_seed(key, {kVgae, c, static_cast<std::uint64_t>(d)})));
                        }
                        break;
                }
            }
        }
    });

    // Fixed order: n, clique, replicate, then method/dim as configured.
    ResultTable table;
    for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
        for (std::size_t c = 0; c < cfg.cliques.size(); ++c) {
            for (std::size_t r = 0; r < per_n; ++r) {
                for (auto& rec : slots[i * per_n + r][c]) {
                    table.push_back(std::move(rec));
                }
            }
        }
    }
    return table;
}

EuemailData load_euemail(const std::filesystem::path& edges, const std::filesystem::path& labels) {
    EuemailData data;
    data.graph = load_edge_list(edges).graph;
    data.labels = load_labels(labels);
    if (static_cast<Index>(data.labels.size()) != data.graph.size()) {
        throw InvalidDataset("labels cover " + std::to_string(data.labels.size()) + " vertices but the graph has " +
                             std::to_string(data.graph.size()));
    }
    return data;
}

Index euemail_ase_dimension(const AdjacencyMatrix& a, int scree_values) {
    const Index k = std::min<Index>(scree_values, a.size());
    if (k < 2) {
        throw InvalidArgument("elbow selection needs at least two singular values");
    }
    return elbow_dimension(singular_values(a, k));
}

ResultTable run_euemail_experiment(const EuemailData& data, const ExperimentConfig& cfg, const Progress& progress) {
    if (cfg.nmc < 1) throw InvalidArgument("nmc must be at least 1");
    if (cfg.cliques.empty() || cfg.methods.empty()) {
        throw InvalidArgument("euemail sweep needs at least one clique rule and one method");
    }
    for (const auto& spec : cfg.cliques) {
        if (spec.kind != CliqueKind::True) {
            throw InvalidArgument("euemail sweep plants true cliques only; got " + spec.rule.to_string() + " pseudo");
        }
    }
    if (cfg.threads < 1) throw InvalidArgument("threads must be at least 1");
    if (static_cast<Index>(data.labels.size()) != data.graph.size()) {
        throw InvalidDataset("labels do not cover the graph's vertices");
    }
    const AdjacencyMatrix& a = data.graph;
    const Index n = a.size();
    const Index d = euemail_ase_dimension(a, cfg.euemail.scree_values);
    const Embedding x_ref = ase(a, d);
    const Embedding z_ref = gee(a, data.labels);

    std::vector<std::optional<LabelVector>> leiden_ref(2);
    auto reference_labels = [&](Method method) -> const LabelVector& {
        auto& slot = leiden_ref[method == Method::GEE1 ? 0 : 1];
        if (!slot) {
            LabelCache cache;
            slot = leiden_labels(cache, a, method, cfg, derive_seed(cfg.seed, {kEuemail}), 0);
        }
        return *slot;
    };
    // Reference labels are computed up front so workers only read them.
    for (const Method m : cfg.methods) {
        if (m == Method::GEE1 || m == Method::GEE2) reference_labels(m);
    }

    const std::size_t per_rule = static_cast<std::size_t>(cfg.nmc);
    const std::size_t tasks = cfg.cliques.size() * per_rule;
    std::vector<ResultTable> slots(tasks);

    run_tasks(tasks, cfg.threads, progress, [&](std::size_t task) {
        const CliqueSpec& spec = cfg.cliques[task / per_rule];
        const int r = static_cast<int>(task % per_rule);
        const std::string rule = spec.rule.to_string();
        const std::uint64_t key = derive_seed(cfg.seed, {kEuemail, text_hash(rule), static_cast<std::uint64_t>(r)});
        RecordKey rk{"", n, rule, to_string(spec.kind), 0, r, 0};
        auto& records = slots[task];

        VertexSet clique;
        AdjacencyMatrix ac;
        std::string setup_error;
        try {
            const Index size = clique_size(n, spec.rule);
            rk.clique_size = static_cast<std::size_t>(size);
            clique = choose_clique(n, size, derive_seed(key, {kClique}));
            ac = plant_true_clique(a, clique);
        } catch (const std::exception& e) {
            setup_error = e.what();
        }
        auto emit = [&](ResultRecord rec) {
            if (setup_error.empty()) {
                rec.clique_indices.assign(clique.begin(), clique.end());
            } else {
                rec.status = RecordStatus::Failed;
                rec.error = setup_error;
            }
            records.push_back(std::move(rec));
        };
        const bool ready = setup_error.empty();

        LabelCache pert_labels;
        for (const Method method : cfg.methods) {
            rk.method = to_string(method);
            switch (method) {
                case Method::ASE:
                    rk.dim = d;
                    emit(!ready ? make_record(rk) : guarded(rk, [&](ResultRecord& rec) {
                        fill_distances(rec, ase(ac, d), x_ref, Alignment::Procrustes, cfg.record_vertex_distances);
                    }));
                    break;
                case Method::GEEFixed:
                    // Same ground-truth labels on both graphs: the columns already correspond.
                    rk.dim = data.labels.classes();
                    emit(!ready ? make_record(rk) : guarded(rk, [&](ResultRecord& rec) {
                        fill_distances(rec, gee(ac, data.labels), z_ref, Alignment::Identity,
                                       cfg.record_vertex_distances);
                    }));
                    break;
                case Method::GEE1:
                case Method::GEE2:
                    rk.dim = 0;
                    emit(!ready ? make_record(rk) : guarded(rk, [&](ResultRecord& rec) {
                        const LabelVector& y = *leiden_ref[method == Method::GEE1 ? 0 : 1];
                        const LabelVector& yc = leiden_labels(pert_labels, ac, method, cfg, key, 1);
                        const auto [zc, z] = pad_columns(gee(ac, yc), gee(a, y));
                        fill_distances(rec, zc, z, Alignment::Procrustes, cfg.record_vertex_distances);
                    }));
                    break;
                case Method::VGAE:
                    rk.dim = cfg.vgae.latent_dim > 0 ? cfg.vgae.latent_dim : d;
                    emit(!ready ? make_record(rk)
                                : vgae_record(rk, cfg, vgae_job_dir(cfg, "euemail", n, spec, r, rk.dim), a, ac,
                                              derive_seed(key, {kVgae})));
                    break;
            }
        }
    });

    ResultTable table;
    for (auto& slot : slots) {
        for (auto& rec : slot) table.push_back(std::move(rec));
    }
    return table;
}

ResultTable run_euemail_experiment(const std::filesystem::path& edges, const std::filesystem::path& labels,
                                   const ExperimentConfig& cfg, const Progress& progress) {
    return run_euemail_experiment(load_euemail(edges, labels), cfg, progress);
}

}  // namespace pclique::harness
