#include "pclique/community.hpp"

#include "pclique/error.hpp"
#include "pclique/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pclique {

PartitionQuality PartitionQuality::cpm(double gamma) {
    if (!(gamma > 0.0)) {
        throw InvalidArgument("CPM resolution must be positive");
    }
    return {Kind::Cpm, gamma};
}

std::string PartitionQuality::to_string() const {
    if (kind == Kind::Modularity) {
        return "modularity";
    }
    std::ostringstream out;
    out << "cpm(" << resolution << ")";
    return out.str();
}

namespace {

// Minimum gain (in edge-weight units) for a move to count as an improvement.
constexpr double kMoveTolerance = 1e-10;

// Weighted graph over (possibly aggregated) nodes. Self-loops are not stored in
// `adjacent`; the edge weight internal to an aggregated node lives in `internal`.
struct LevelGraph {
    std::vector<std::vector<std::pair<int, double>>> adjacent;
    std::vector<double> internal;
    std::vector<double> node_weight;

    int size() const { return static_cast<int>(adjacent.size()); }
};

// Both quality functions reduce to sum_c [E_c - resolution * f(W_c)] with a
// node weight w (degree or vertex count), so a move of v from A to B gains
//   E(v, B) - E(v, A \ v) - resolution * w_v * (W_B - W_{A \ v}).
struct Objective {
    double resolution = 0.0;
    double gain_scale = 1.0;  // converts gains to quality units for the refinement temperature
};

LevelGraph base_graph(const AdjacencyMatrix& a, const PartitionQuality& quality, Objective& objective) {
    const Index n = a.size();
    LevelGraph g;
    g.adjacent.resize(static_cast<std::size_t>(n));
    g.internal.assign(static_cast<std::size_t>(n), 0.0);
    g.node_weight.assign(static_cast<std::size_t>(n), 0.0);
    const Matrix& adj = a.matrix();
    double degree_total = 0.0;
    for (Index v = 0; v < n; ++v) {
        auto& list = g.adjacent[static_cast<std::size_t>(v)];
        for (Index u = 0; u < n; ++u) {
            if (adj(u, v) != 0.0) {
                list.emplace_back(static_cast<int>(u), 1.0);
            }
        }
        degree_total += static_cast<double>(list.size());
    }
    if (quality.kind == PartitionQuality::Kind::Modularity) {
        for (Index v = 0; v < n; ++v) {
            g.node_weight[static_cast<std::size_t>(v)] =
                static_cast<double>(g.adjacent[static_cast<std::size_t>(v)].size());
        }
        const double m = degree_total / 2.0;
        objective.resolution = m > 0.0 ? quality.resolution / (2.0 * m) : 0.0;
        objective.gain_scale = m > 0.0 ? 1.0 / m : 1.0;
    } else {
        std::fill(g.node_weight.begin(), g.node_weight.end(), 1.0);
        objective.resolution = quality.resolution;
        objective.gain_scale = 1.0;
    }
    return g;
}

int count_communities(const std::vector<int>& membership) {
    std::vector<char> seen(membership.size(), 0);
    int count = 0;
    for (const int c : membership) {
        if (!seen[static_cast<std::size_t>(c)]) {
            seen[static_cast<std::size_t>(c)] = 1;
            ++count;
        }
    }
    return count;
}

// Renumbers community ids to 0..K-1 in order of first appearance.
std::vector<int> compact(const std::vector<int>& membership) {
    const int top = membership.empty() ? -1 : *std::max_element(membership.begin(), membership.end());
    std::vector<int> remap(static_cast<std::size_t>(top + 1), -1);
    std::vector<int> out(membership.size());
    int next = 0;
    for (std::size_t v = 0; v < membership.size(); ++v) {
        int& id = remap[static_cast<std::size_t>(membership[v])];
        if (id < 0) {
            id = next++;
        }
        out[v] = id;
    }
    return out;
}

// Queue-based local moving. Membership ids must lie in [0, size). Returns true
// if any node changed community.
bool move_nodes_fast(const LevelGraph& g, std::vector<int>& membership, const Objective& objective,
                     RandomStream& rng) {
    const int n = g.size();
    std::vector<double> community_weight(static_cast<std::size_t>(n), 0.0);
    std::vector<int> community_size(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        community_weight[static_cast<std::size_t>(membership[static_cast<std::size_t>(v)])] +=
            g.node_weight[static_cast<std::size_t>(v)];
        ++community_size[static_cast<std::size_t>(membership[static_cast<std::size_t>(v)])];
    }
    std::vector<int> empty;
    for (int c = n - 1; c >= 0; --c) {
        if (community_size[static_cast<std::size_t>(c)] == 0) {
            empty.push_back(c);
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    shuffle(std::span<int>(order), rng);
    std::vector<int> queue(order.begin(), order.end());
    std::size_t head = 0;
    std::vector<char> queued(static_cast<std::size_t>(n), 1);

    std::vector<double> weight_to(static_cast<std::size_t>(n), 0.0);
    std::vector<int> touched;
    bool changed = false;

    while (head < queue.size()) {
        const int v = queue[head++];
        queued[static_cast<std::size_t>(v)] = 0;
        const int from = membership[static_cast<std::size_t>(v)];
        const double wv = g.node_weight[static_cast<std::size_t>(v)];

        touched.clear();
        for (const auto& [u, w] : g.adjacent[static_cast<std::size_t>(v)]) {
            const int c = membership[static_cast<std::size_t>(u)];
            if (weight_to[static_cast<std::size_t>(c)] == 0.0) {
                touched.push_back(c);
            }
            weight_to[static_cast<std::size_t>(c)] += w;
        }

        const double from_rest = community_weight[static_cast<std::size_t>(from)] - wv;
        const double to_from = weight_to[static_cast<std::size_t>(from)];
        int best = from;
        double best_gain = 0.0;
        for (const int c : touched) {
            if (c == from) {
                continue;
            }
            const double gain = weight_to[static_cast<std::size_t>(c)] - to_from -
                                objective.resolution * wv * (community_weight[static_cast<std::size_t>(c)] - from_rest);
            if (gain > best_gain + kMoveTolerance) {
                best_gain = gain;
                best = c;
            }
        }
        if (community_size[static_cast<std::size_t>(from)] > 1 && !empty.empty()) {
            const double gain = -to_from + objective.resolution * wv * from_rest;
            if (gain > best_gain + kMoveTolerance) {
                best_gain = gain;
                best = empty.back();
            }
        }
        for (const int c : touched) {
            weight_to[static_cast<std::size_t>(c)] = 0.0;
        }

        if (best == from) {
            continue;
        }
        if (!empty.empty() && best == empty.back()) {
            empty.pop_back();
        }
        community_weight[static_cast<std::size_t>(from)] -= wv;
        --community_size[static_cast<std::size_t>(from)];
        if (community_size[static_cast<std::size_t>(from)] == 0) {
            empty.push_back(from);
        }
        community_weight[static_cast<std::size_t>(best)] += wv;
        ++community_size[static_cast<std::size_t>(best)];
        membership[static_cast<std::size_t>(v)] = best;
        changed = true;

        for (const auto& [u, w] : g.adjacent[static_cast<std::size_t>(v)]) {
            if (!queued[static_cast<std::size_t>(u)] && membership[static_cast<std::size_t>(u)] != best) {
                queued[static_cast<std::size_t>(u)] = 1;
                queue.push_back(u);
            }
        }
    }
    return changed;
}

// Refinement: inside every community S of `membership`, start from singletons
// and merge well-connected singleton nodes into well-connected subcommunities,
// sampling the target with probability proportional to exp(gain / theta).
std::vector<int> refine(const LevelGraph& g, const std::vector<int>& membership, const Objective& objective,
                        double theta, RandomStream& rng) {
    const int n = g.size();
    std::vector<int> refined(static_cast<std::size_t>(n));
    std::iota(refined.begin(), refined.end(), 0);
    std::vector<double> sub_weight(g.node_weight);
    std::vector<int> sub_size(static_cast<std::size_t>(n), 1);
    std::vector<double> sub_external(static_cast<std::size_t>(n), 0.0);

    std::vector<std::vector<int>> members(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        members[static_cast<std::size_t>(membership[static_cast<std::size_t>(v)])].push_back(v);
    }

    std::vector<double> node_external(static_cast<std::size_t>(n), 0.0);
    std::vector<double> weight_to(static_cast<std::size_t>(n), 0.0);
    std::vector<int> touched;
    std::vector<int> candidates;
    std::vector<double> candidate_gain;

    for (auto& subset : members) {
        if (subset.size() < 2) {
            continue;
        }
        const int community = membership[static_cast<std::size_t>(subset.front())];
        double subset_weight = 0.0;
        for (const int v : subset) {
            subset_weight += g.node_weight[static_cast<std::size_t>(v)];
            double ext = 0.0;
            for (const auto& [u, w] : g.adjacent[static_cast<std::size_t>(v)]) {
                if (membership[static_cast<std::size_t>(u)] == community) {
                    ext += w;
                }
            }
            node_external[static_cast<std::size_t>(v)] = ext;
            sub_external[static_cast<std::size_t>(v)] = ext;
        }

        shuffle(std::span<int>(subset), rng);
        for (const int v : subset) {
            const int own = refined[static_cast<std::size_t>(v)];
            if (sub_size[static_cast<std::size_t>(own)] != 1) {
                continue;
            }
            const double wv = g.node_weight[static_cast<std::size_t>(v)];
            if (node_external[static_cast<std::size_t>(v)] <
                objective.resolution * wv * (subset_weight - wv) - kMoveTolerance) {
                continue;
            }

            touched.clear();
            for (const auto& [u, w] : g.adjacent[static_cast<std::size_t>(v)]) {
                if (membership[static_cast<std::size_t>(u)] != community) {
                    continue;
                }
                const int c = refined[static_cast<std::size_t>(u)];
                if (weight_to[static_cast<std::size_t>(c)] == 0.0) {
                    touched.push_back(c);
                }
                weight_to[static_cast<std::size_t>(c)] += w;
            }

            candidates.assign(1, own);
            candidate_gain.assign(1, 0.0);
            for (const int c : touched) {
                if (c == own) {
                    continue;
                }
                const double cw = sub_weight[static_cast<std::size_t>(c)];
                const bool connected = sub_external[static_cast<std::size_t>(c)] >=
                                       objective.resolution * cw * (subset_weight - cw) - kMoveTolerance;
                if (!connected) {
                    continue;
                }
                const double gain = weight_to[static_cast<std::size_t>(c)] - objective.resolution * wv * cw;
                if (gain >= 0.0) {
                    candidates.push_back(c);
                    candidate_gain.push_back(gain);
                }
            }

            int chosen = own;
            if (candidates.size() > 1) {
                const double top = *std::max_element(candidate_gain.begin(), candidate_gain.end());
                double total = 0.0;
                for (auto& gain : candidate_gain) {
                    gain = std::exp((gain - top) * objective.gain_scale / theta);
                    total += gain;
                }
                double draw = rng.uniform() * total;
                chosen = candidates.back();
                for (std::size_t i = 0; i < candidates.size(); ++i) {
                    draw -= candidate_gain[i];
                    if (draw < 0.0) {
                        chosen = candidates[i];
                        break;
                    }
                }
            }

            if (chosen != own) {
                const double linking = weight_to[static_cast<std::size_t>(chosen)];
                sub_external[static_cast<std::size_t>(chosen)] +=
                    node_external[static_cast<std::size_t>(v)] - 2.0 * linking;
                sub_weight[static_cast<std::size_t>(chosen)] += wv;
                ++sub_size[static_cast<std::size_t>(chosen)];
                sub_weight[static_cast<std::size_t>(own)] = 0.0;
                sub_size[static_cast<std::size_t>(own)] = 0;
                refined[static_cast<std::size_t>(v)] = chosen;
            }
            for (const int c : touched) {
                weight_to[static_cast<std::size_t>(c)] = 0.0;
            }
        }
    }
    return refined;
}

// Collapses each community of `partition` (ids compact in [0, K)) into a node.
LevelGraph aggregate(const LevelGraph& g, const std::vector<int>& partition, int communities) {
    LevelGraph out;
    out.adjacent.resize(static_cast<std::size_t>(communities));
    out.internal.assign(static_cast<std::size_t>(communities), 0.0);
    out.node_weight.assign(static_cast<std::size_t>(communities), 0.0);

    std::vector<std::vector<int>> members(static_cast<std::size_t>(communities));
    for (int v = 0; v < g.size(); ++v) {
        const int c = partition[static_cast<std::size_t>(v)];
        members[static_cast<std::size_t>(c)].push_back(v);
        out.node_weight[static_cast<std::size_t>(c)] += g.node_weight[static_cast<std::size_t>(v)];
        out.internal[static_cast<std::size_t>(c)] += g.internal[static_cast<std::size_t>(v)];
    }
    std::vector<double> weight_to(static_cast<std::size_t>(communities), 0.0);
    std::vector<int> touched;
    for (int c = 0; c < communities; ++c) {
        touched.clear();
        double inside = 0.0;
        for (const int v : members[static_cast<std::size_t>(c)]) {
            for (const auto& [u, w] : g.adjacent[static_cast<std::size_t>(v)]) {
                const int d = partition[static_cast<std::size_t>(u)];
                if (d == c) {
                    inside += w;
                    continue;
                }
                if (weight_to[static_cast<std::size_t>(d)] == 0.0) {
                    touched.push_back(d);
                }
                weight_to[static_cast<std::size_t>(d)] += w;
            }
        }
        out.internal[static_cast<std::size_t>(c)] += inside / 2.0;
        std::sort(touched.begin(), touched.end());
        for (const int d : touched) {
            out.adjacent[static_cast<std::size_t>(c)].emplace_back(d, weight_to[static_cast<std::size_t>(d)]);
            weight_to[static_cast<std::size_t>(d)] = 0.0;
        }
    }
    return out;
}

// Splits every community into its connected components on the base graph.
std::vector<int> split_disconnected(const LevelGraph& g, const std::vector<int>& membership) {
    const int n = g.size();
    std::vector<int> out(static_cast<std::size_t>(n), -1);
    std::vector<int> stack;
    int next = 0;
    for (int s = 0; s < n; ++s) {
        if (out[static_cast<std::size_t>(s)] >= 0) {
            continue;
        }
        const int community = membership[static_cast<std::size_t>(s)];
        out[static_cast<std::size_t>(s)] = next;
        stack.assign(1, s);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (const auto& [u, w] : g.adjacent[static_cast<std::size_t>(v)]) {
                if (out[static_cast<std::size_t>(u)] < 0 && membership[static_cast<std::size_t>(u)] == community) {
                    out[static_cast<std::size_t>(u)] = next;
                    stack.push_back(u);
                }
            }
        }
        ++next;
    }
    return out;
}

// One Leiden iteration (move, refine, aggregate until no further
// aggregation) started from `membership` on the base graph.
std::vector<int> leiden_pass(const LevelGraph& base, std::vector<int> membership, const Objective& objective,
                             double theta, RandomStream& rng) {
    LevelGraph level = base;
    std::vector<int> level_membership = compact(membership);
    std::vector<int> node_of(static_cast<std::size_t>(base.size()));
    std::iota(node_of.begin(), node_of.end(), 0);

    for (;;) {
        move_nodes_fast(level, level_membership, objective, rng);
        const int communities = count_communities(level_membership);
        if (communities == level.size()) {
            break;
        }
        const std::vector<int> refined = compact(refine(level, level_membership, objective, theta, rng));
        const int refined_count = count_communities(refined);
        if (refined_count == level.size()) {
            break;
        }
        LevelGraph next = aggregate(level, refined, refined_count);
        std::vector<int> next_membership(static_cast<std::size_t>(refined_count));
        for (int v = 0; v < level.size(); ++v) {
            next_membership[static_cast<std::size_t>(refined[static_cast<std::size_t>(v)])] =
                level_membership[static_cast<std::size_t>(v)];
        }
        for (auto& node : node_of) {
            node = refined[static_cast<std::size_t>(node)];
        }
        level = std::move(next);
        level_membership = compact(next_membership);
    }

    for (std::size_t v = 0; v < membership.size(); ++v) {
        membership[v] = level_membership[static_cast<std::size_t>(node_of[v])];
    }
    return split_disconnected(base, membership);
}

// Maps arbitrary integer labels onto [0, K) preserving their order.
std::vector<int> dense_ids(const std::vector<int>& labels) {
    std::vector<int> sorted(labels);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> ids(labels.size());
    for (std::size_t v = 0; v < labels.size(); ++v) {
        ids[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), labels[v]) - sorted.begin());
    }
    return ids;
}

// Labels 1..K by decreasing community size, ties by smallest member.
std::vector<int> canonical_labels(const std::vector<int>& membership) {
    const std::vector<int> ids = compact(membership);  // first appearance == smallest member order
    const int k = count_communities(ids);
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    for (const int c : ids) {
        ++sizes[static_cast<std::size_t>(c)];
    }
    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return sizes[static_cast<std::size_t>(x)] > sizes[static_cast<std::size_t>(y)];
    });
    std::vector<int> rank(static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r) {
        rank[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r + 1;
    }
    std::vector<int> labels(ids.size());
    for (std::size_t v = 0; v < ids.size(); ++v) {
        labels[v] = rank[static_cast<std::size_t>(ids[v])];
    }
    return labels;
}

}  // namespace

LabelVector leiden(const AdjacencyMatrix& a, const PartitionQuality& quality, std::uint64_t seed,
                   const LeidenOptions& options) {
    const Index n = a.size();
    if (n < 1) {
        throw InvalidArgument("leiden needs at least one vertex");
    }
    if (!(quality.resolution > 0.0)) {
        throw InvalidArgument("resolution must be positive");
    }
    Objective objective;
    const LevelGraph base = base_graph(a, quality, objective);
    RandomStream rng(seed);

    std::vector<int> membership(static_cast<std::size_t>(n));
    std::iota(membership.begin(), membership.end(), 0);
    std::vector<int> current = canonical_labels(membership);
    for (int iteration = 0; iteration < options.max_iterations; ++iteration) {
        membership = leiden_pass(base, membership, objective, options.theta, rng);
        std::vector<int> next = canonical_labels(membership);
        if (next == current) {
            break;
        }
        current = std::move(next);
    }
    return LabelVector(std::move(current));
}

double partition_quality(const AdjacencyMatrix& a, const std::vector<int>& labels, const PartitionQuality& quality) {
    const Index n = a.size();
    if (static_cast<Index>(labels.size()) != n) {
        throw InvalidArgument("partition_quality: label length mismatch");
    }
    const std::vector<int> ids = dense_ids(labels);
    const int k = count_communities(ids);
    std::vector<double> internal(static_cast<std::size_t>(k), 0.0);
    std::vector<double> volume(static_cast<std::size_t>(k), 0.0);
    std::vector<double> size(static_cast<std::size_t>(k), 0.0);
    const Matrix& adj = a.matrix();
    double two_m = 0.0;
    for (Index v = 0; v < n; ++v) {
        const int cv = ids[static_cast<std::size_t>(v)];
        size[static_cast<std::size_t>(cv)] += 1.0;
        for (Index u = 0; u < n; ++u) {
            if (adj(u, v) == 0.0) {
                continue;
            }
            two_m += 1.0;
            volume[static_cast<std::size_t>(cv)] += 1.0;
            if (u < v && ids[static_cast<std::size_t>(u)] == cv) {
                internal[static_cast<std::size_t>(cv)] += 1.0;
            }
        }
    }
    double q = 0.0;
    if (quality.kind == PartitionQuality::Kind::Modularity) {
        if (two_m == 0.0) {
            return 0.0;
        }
        for (int c = 0; c < k; ++c) {
            const double share = volume[static_cast<std::size_t>(c)] / two_m;
            q += 2.0 * internal[static_cast<std::size_t>(c)] / two_m - quality.resolution * share * share;
        }
        return q;
    }
    for (int c = 0; c < k; ++c) {
        const double nc = size[static_cast<std::size_t>(c)];
        q += internal[static_cast<std::size_t>(c)] - quality.resolution * nc * (nc - 1.0) / 2.0;
    }
    return q;
}

}  // namespace pclique
