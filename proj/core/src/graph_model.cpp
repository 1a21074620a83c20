#include "pclique/graph_model.hpp"

#include "pclique/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pclique {

namespace {

constexpr double kLatentSlack = 1e-12;

void require_vertex_count(Index n, Index minimum, const char* what) {
    if (n < minimum) {
        throw InvalidArgument(std::string(what) + ": need n >= " + std::to_string(minimum) + ", got " +
                              std::to_string(n));
    }
}

}  // namespace

CliqueRule CliqueRule::parse(const std::string& text) {
    if (text == "log_n") return log_n();
    if (text == "log2_n") return log2_n();
    if (text == "sqrt_n") return sqrt_n();
    if (text == "n_3_4") return n_3_4();
    if (text.starts_with("frac(") && text.ends_with(")")) {
        const std::string inner = text.substr(5, text.size() - 6);
        std::size_t used = 0;
        double rho = 0.0;
        try {
            rho = std::stod(inner, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != inner.size() || !(rho > 0.0 && rho <= 1.0)) {
            throw InvalidArgument("clique rule fraction must be in (0, 1]: " + text);
        }
        return frac(rho);
    }
    throw InvalidArgument("unknown clique rule: " + text);
}

std::string CliqueRule::to_string() const {
    switch (scale) {
        case Scale::LogN: return "log_n";
        case Scale::Log2N: return "log2_n";
        case Scale::SqrtN: return "sqrt_n";
        case Scale::N34: return "n_3_4";
        case Scale::Fraction: {
            std::ostringstream out;
            out << "frac(" << fraction << ")";
            return out.str();
        }
    }
    return "unknown";
}

CliqueKind parse_clique_kind(const std::string& text) {
    if (text == "pseudo") return CliqueKind::Pseudo;
    if (text == "true") return CliqueKind::True;
    throw InvalidArgument("unknown clique kind: " + text);
}

const char* to_string(CliqueKind kind) noexcept {
    return kind == CliqueKind::Pseudo ? "pseudo" : "true";
}

LatentPositions sample_dirichlet_latents(Index n, std::uint64_t seed) {
    require_vertex_count(n, 2, "sample_dirichlet_latents");
    RandomStream rng(seed);
    const std::array<double, 3> ones{1.0, 1.0, 1.0};
    std::array<double, 3> draw{};
    Matrix x(n, 2);
    for (Index i = 0; i < n; ++i) {
        rng.dirichlet(ones, draw);
        x(i, 0) = draw[0];
        x(i, 1) = draw[1];
    }
    return LatentPositions(std::move(x));
}

std::array<double, 3> mixture_concentration(int k, int classes) {
    // Component means walk the closed path through the three corner
    // components (5,1,1) -> (1,5,1) -> (1,1,5); K = 3 lands exactly on them.
    static constexpr std::array<std::array<double, 3>, 3> corners{{{5.0, 1.0, 1.0}, {1.0, 5.0, 1.0}, {1.0, 1.0, 5.0}}};
    if (classes < 1 || k < 0 || k >= classes) {
        throw InvalidArgument("mixture component index out of range");
    }
    const double t = 3.0 * static_cast<double>(k) / static_cast<double>(classes);
    const auto segment = static_cast<std::size_t>(std::floor(t)) % 3;
    const double f = t - std::floor(t);
    const auto& from = corners[segment];
    const auto& to = corners[(segment + 1) % 3];
    std::array<double, 3> out{};
    for (std::size_t j = 0; j < 3; ++j) {
        out[j] = (1.0 - f) * from[j] + f * to[j];
    }
    return out;
}

std::pair<LatentPositions, LabelVector> sample_mixture_latents(Index n, int classes, std::uint64_t seed) {
    if (classes < 2) {
        throw InvalidArgument("sample_mixture_latents: need K >= 2");
    }
    if (n < classes) {
        throw InvalidArgument("sample_mixture_latents: need n >= K");
    }
    RandomStream rng(seed);
    std::vector<int> labels(static_cast<std::size_t>(n));
    std::vector<std::size_t> counts(static_cast<std::size_t>(classes));
    do {
        std::fill(counts.begin(), counts.end(), 0);
        for (auto& label : labels) {
            label = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(classes))) + 1;
            ++counts[static_cast<std::size_t>(label - 1)];
        }
    } while (std::find(counts.begin(), counts.end(), 0) != counts.end());

    std::vector<std::array<double, 3>> components;
    for (int k = 0; k < classes; ++k) {
        components.push_back(mixture_concentration(k, classes));
    }
    std::array<double, 3> draw{};
    Matrix x(n, 2);
    for (Index i = 0; i < n; ++i) {
        rng.dirichlet(components[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)] - 1)], draw);
        x(i, 0) = draw[0];
        x(i, 1) = draw[1];
    }
    return {LatentPositions(std::move(x)), LabelVector(std::move(labels))};
}

Index clique_size(Index n, const CliqueRule& rule) {
    require_vertex_count(n, 2, "clique_size");
    const double nn = static_cast<double>(n);
    double value = 0.0;
    switch (rule.scale) {
        case CliqueRule::Scale::LogN: value = std::log(nn); break;
        case CliqueRule::Scale::Log2N: value = std::log(nn) * std::log(nn); break;
        case CliqueRule::Scale::SqrtN: value = std::sqrt(nn); break;
        case CliqueRule::Scale::N34: value = std::pow(nn, 0.75); break;
        case CliqueRule::Scale::Fraction: value = rule.fraction * nn; break;
    }
    const auto rounded = static_cast<Index>(std::floor(value + 0.5));
    return std::clamp<Index>(rounded, 2, n);
}

VertexSet choose_clique(Index n, Index size, std::uint64_t seed) {
    if (size < 2 || size > n) {
        throw InvalidArgument("choose_clique: size " + std::to_string(size) + " outside [2, " + std::to_string(n) +
                              "]");
    }
    RandomStream rng(seed);
    std::vector<Index> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), Index{0});
    for (Index i = 0; i < size; ++i) {
        const auto j = i + static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    VertexSet clique(pool.begin(), pool.begin() + size);
    std::sort(clique.begin(), clique.end());
    return clique;
}

AugmentedLatent augment_pseudo_clique(const LatentPositions& x, const VertexSet& clique) {
    const Index n = x.size();
    const Index d = x.dim();
    validate_vertex_set(clique, n);
    AugmentedLatent out;
    out.positions = Matrix::Zero(n, d + 1);
    out.positions.leftCols(d) = x.matrix();
    out.clique = clique;
    for (const Index i : clique) {
        const double slack = 1.0 - x.matrix().row(i).squaredNorm();
        if (slack < -kLatentSlack) {
            std::ostringstream msg;
            msg << "clique row " << i << " has squared norm " << 1.0 - slack << " > 1";
            throw InvalidLatent(msg.str());
        }
        out.positions(i, d) = slack > 0.0 ? std::sqrt(slack) : 0.0;
    }
    return out;
}

ProbMatrix edge_prob_matrix(const LatentPositions& x) {
    return ProbMatrix(x.matrix() * x.matrix().transpose());
}

ProbMatrix edge_prob_matrix(const AugmentedLatent& x) {
    return ProbMatrix(x.positions * x.positions.transpose());
}

AdjacencyMatrix sample_rdpg(const ProbMatrix& p, std::uint64_t seed) {
    const Index n = p.size();
    RandomStream rng(seed);
    AdjacencyMatrix a(n);
    for (Index u = 0; u < n; ++u) {
        for (Index v = u + 1; v < n; ++v) {
            if (rng.uniform() < p(u, v)) {
                a.set_edge(u, v);
            }
        }
    }
    return a;
}

std::pair<AdjacencyMatrix, AdjacencyMatrix> sample_rdpg_pair(const ProbMatrix& p, const ProbMatrix& p_perturbed,
                                                             std::uint64_t seed) {
    const Index n = p.size();
    if (p_perturbed.size() != n) {
        throw InvalidArgument("sample_rdpg_pair: probability matrices differ in size");
    }
    RandomStream rng(seed);
    AdjacencyMatrix a(n);
    AdjacencyMatrix ac(n);
    for (Index u = 0; u < n; ++u) {
        for (Index v = u + 1; v < n; ++v) {
            const double draw = rng.uniform();
            if (draw < p(u, v)) {
                a.set_edge(u, v);
            }
            if (draw < p_perturbed(u, v)) {
                ac.set_edge(u, v);
            }
        }
    }
    return {std::move(a), std::move(ac)};
}

AdjacencyMatrix plant_true_clique(const AdjacencyMatrix& a, const VertexSet& clique) {
    validate_vertex_set(clique, a.size());
    AdjacencyMatrix out = a;
    for (std::size_t i = 0; i < clique.size(); ++i) {
        for (std::size_t j = i + 1; j < clique.size(); ++j) {
            out.set_edge(clique[i], clique[j]);
        }
    }
    return out;
}

}  // namespace pclique
