#include "pclique/error.hpp"
#include "pclique/types.hpp"

#include <doctest.h>

using namespace pclique;

TEST_CASE("adjacency validation") {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 1) = m(1, 0) = 1.0;
    const auto a = AdjacencyMatrix::from_dense(m);
    CHECK(a.edge_count() == 1);
    CHECK(a.has_edge(1, 0));
    CHECK(a.density() == doctest::Approx(1.0 / 3.0));
    CHECK(a.edges() == std::vector<std::pair<Index, Index>>{{0, 1}});

    Matrix loop = m;
    loop(2, 2) = 1.0;
    CHECK_THROWS_AS(AdjacencyMatrix::from_dense(loop), InvalidArgument);
    Matrix weighted = m;
    weighted(0, 1) = weighted(1, 0) = 2.0;
    CHECK_THROWS_AS(AdjacencyMatrix::from_dense(weighted), InvalidArgument);
    Matrix asym = m;
    asym(0, 2) = 1.0;
    CHECK_THROWS_AS(AdjacencyMatrix::from_dense(asym), InvalidArgument);
    CHECK_THROWS_AS(AdjacencyMatrix::from_dense(Matrix::Zero(2, 3)), InvalidArgument);

    AdjacencyMatrix b(4);
    CHECK_THROWS_AS(b.set_edge(2, 2), InvalidArgument);
    const std::pair<Index, Index> edges[] = {{0, 1}, {1, 0}, {2, 3}};
    const auto c = AdjacencyMatrix::from_edges(4, edges);
    CHECK(c.edge_count() == 2);
    CHECK(c.degrees() == std::vector<Index>{1, 1, 1, 1});
}

TEST_CASE("labels") {
    const LabelVector y({2, 1, 2, 3});
    CHECK(y.classes() == 3);
    CHECK(y.counts() == std::vector<std::size_t>{1, 2, 1});
    CHECK_THROWS_AS(LabelVector({1, 3}), InvalidLabels);
    CHECK_THROWS_AS(LabelVector({0, 1}), InvalidLabels);
    CHECK_THROWS_AS(LabelVector(std::vector<int>{}), InvalidLabels);
}

TEST_CASE("latent and probability invariants") {
    Matrix ok(2, 2);
    ok << 0.6, 0.0, 0.0, 0.8;
    CHECK_NOTHROW(LatentPositions{ok});
    Matrix long_row(1, 2);
    long_row << 0.8, 0.61;
    CHECK_THROWS_AS(LatentPositions{long_row}, InvalidLatent);
    Matrix negative(2, 1);
    negative << 0.5, -0.5;
    CHECK_THROWS_AS(LatentPositions{negative}, InvalidLatent);

    Matrix p(2, 2);
    p << 0.0, 1.0 + 5e-13, 1.0 + 5e-13, 0.0;
    CHECK(ProbMatrix(p)(0, 1) == 1.0);
    p(0, 1) = p(1, 0) = 1.1;
    CHECK_THROWS_AS(ProbMatrix{p}, InvalidLatent);
}

TEST_CASE("vertex sets must be sorted and in range") {
    CHECK_NOTHROW(validate_vertex_set({0, 2, 4}, 5));
    CHECK_THROWS_AS(validate_vertex_set({0, 5}, 5), InvalidArgument);
    CHECK_THROWS_AS(validate_vertex_set({2, 1}, 5), InvalidArgument);
    CHECK_THROWS_AS(validate_vertex_set({1, 1}, 5), InvalidArgument);
}
