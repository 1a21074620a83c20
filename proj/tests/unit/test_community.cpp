#include "oracles.hpp"

#include "pclique/community.hpp"
#include "pclique/error.hpp"

#include <doctest.h>

#include <queue>
#include <set>

using namespace pclique;

namespace {

Matrix two_k5() {
    Matrix m = Matrix::Zero(10, 10);
    for (int b = 0; b < 2; ++b) {
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                if (i != j) m(5 * b + i, 5 * b + j) = 1.0;
            }
        }
    }
    m(4, 5) = m(5, 4) = 1.0;
    return m;
}

bool communities_connected(const Matrix& a, const std::vector<int>& labels) {
    const int n = static_cast<int>(labels.size());
    std::set<int> ids(labels.begin(), labels.end());
    for (const int c : ids) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i) {
            if (labels[static_cast<std::size_t>(i)] == c) members.push_back(i);
        }
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::queue<int> q;
        q.push(members.front());
        seen[static_cast<std::size_t>(members.front())] = 1;
        std::size_t reached = 1;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v = 0; v < n; ++v) {
                if (a(u, v) != 0.0 && !seen[static_cast<std::size_t>(v)] && labels[static_cast<std::size_t>(v)] == c) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    ++reached;
                    q.push(v);
                }
            }
        }
        if (reached != members.size()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("two bridged K5s split in two") {
    const auto a = AdjacencyMatrix::from_dense(two_k5());
    const auto y = leiden(a, PartitionQuality::modularity(), 1);
    CHECK(y.values() == std::vector<int>{1, 1, 1, 1, 1, 2, 2, 2, 2, 2});
    const auto c = leiden(a, PartitionQuality::cpm(0.1), 1);
    CHECK(c.values() == std::vector<int>{1, 1, 1, 1, 1, 2, 2, 2, 2, 2});
}

TEST_CASE("edgeless graph under CPM gives singletons") {
    const auto y = leiden(AdjacencyMatrix(6), PartitionQuality::cpm(0.5), 3);
    CHECK(y.classes() == 6);
    CHECK(y.values() == std::vector<int>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("quality functions match textbook sums") {
    const Matrix m = oracle::sbm({0, 0, 0, 0, 1, 1, 1, 1, 1}, 0.8, 0.2, 2);
    const auto a = AdjacencyMatrix::from_dense(m);
    for (const auto& labels : oracle::all_partitions(6)) {
        std::vector<int> full(labels);
        full.insert(full.end(), {7, 7, 8});
        CHECK(partition_quality(a, full, PartitionQuality::modularity()) ==
              doctest::Approx(oracle::naive_modularity(m, full)).epsilon(1e-12));
        CHECK(partition_quality(a, full, PartitionQuality::cpm(0.3)) ==
              doctest::Approx(oracle::naive_cpm(m, full, 0.3)).epsilon(1e-12));
    }
    CHECK(PartitionQuality::cpm(0.05).to_string() == "cpm(0.05)");
    CHECK_THROWS_AS(PartitionQuality::cpm(0.0), InvalidArgument);
}

TEST_CASE("two bridged triangles: leiden reaches the brute-force optimum") {
    // All 203 partitions of 6 vertices; the result must match the best one.
    Matrix m = Matrix::Zero(6, 6);
    const int edges[][2] = {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}};
    for (const auto& e : edges) m(e[0], e[1]) = m(e[1], e[0]) = 1.0;
    const auto partitions = oracle::all_partitions(6);
    CHECK(partitions.size() == 203);
    double best = -1.0;
    for (const auto& p : partitions) best = std::max(best, oracle::naive_modularity(m, p));
    const auto y = leiden(AdjacencyMatrix::from_dense(m), PartitionQuality::modularity(), 5);
    CHECK(oracle::naive_modularity(m, y.values()) == doctest::Approx(best).epsilon(1e-12));
    CHECK(y.values() == std::vector<int>{1, 1, 1, 2, 2, 2});

    double best_cpm = -1e9;
    for (const auto& p : partitions) best_cpm = std::max(best_cpm, oracle::naive_cpm(m, p, 0.4));
    const auto z = leiden(AdjacencyMatrix::from_dense(m), PartitionQuality::cpm(0.4), 5);
    CHECK(oracle::naive_cpm(m, z.values(), 0.4) == doctest::Approx(best_cpm).epsilon(1e-12));
}

TEST_CASE("local optimality, connectivity, canonical labels, determinism") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        std::vector<int> blocks;
        for (int i = 0; i < 60; ++i) blocks.push_back(i % 3);
        const Matrix m = oracle::sbm(blocks, 0.4, 0.05, seed);
        const auto a = AdjacencyMatrix::from_dense(m);
        for (const auto& quality : {PartitionQuality::modularity(), PartitionQuality::cpm(0.1)}) {
            const auto y = leiden(a, quality, seed);
            const bool mod = quality.kind == PartitionQuality::Kind::Modularity;
            CHECK(oracle::best_single_move_gain(m, y.values(), mod, quality.resolution) <= 1e-10);
            CHECK(communities_connected(m, y.values()));
            CHECK(leiden(a, quality, seed) == y);
            // Sizes are nonincreasing in label order.
            for (std::size_t k = 1; k < y.counts().size(); ++k) CHECK(y.counts()[k - 1] >= y.counts()[k]);
        }
    }
}

TEST_CASE("isolated vertices under modularity") {
    Matrix m = Matrix::Zero(5, 5);
    m(0, 1) = m(1, 0) = 1.0;
    const auto y = leiden(AdjacencyMatrix::from_dense(m), PartitionQuality::modularity(), 1);
    CHECK(y.size() == 5);
    CHECK(y[0] == y[1]);
    CHECK(oracle::best_single_move_gain(m, y.values(), true, 1.0) <= 1e-12);
}
