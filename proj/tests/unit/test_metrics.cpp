#include "oracles.hpp"

#include "pclique/error.hpp"
#include "pclique/graph_model.hpp"
#include "pclique/metrics.hpp"

#include <doctest.h>

#include <cmath>

using namespace pclique;

namespace {

Embedding emb(Matrix z) {
    Embedding e;
    e.z = std::move(z);
    return e;
}

}  // namespace

TEST_CASE("procrustes undoes a rotation and a reflection") {
    const Matrix a = oracle::gaussian(20, 3, 1);
    const Matrix q = oracle::random_orthogonal(3, 2);
    const auto fit = procrustes_align(a * q, a);
    CHECK(fit.residual < 1e-12);
    CHECK((fit.w - q).cwiseAbs().maxCoeff() < 1e-12);

    Matrix flip = Matrix::Identity(2, 2);
    flip(1, 1) = -1.0;
    const Matrix b = oracle::gaussian(10, 2, 3);
    CHECK(procrustes_align(b * flip, b).residual < 1e-12);
}

TEST_CASE("procrustes on a 1-d sign flip") {
    Matrix a(3, 1);
    a << 1, 2, 3;
    CHECK(procrustes_distance(emb(-a), emb(a)) == doctest::Approx(0.0).scale(1.0));
    CHECK(procrustes_align(-a, a).w(0, 0) == doctest::Approx(-1.0));
}

TEST_CASE("procrustes properties: optimality, orthogonality, invariance") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const Matrix a = oracle::gaussian(15, 3, s);
        const Matrix b = oracle::gaussian(15, 3, s + 1000);
        const auto fit = procrustes_align(b, a);
        CHECK((fit.w.transpose() * fit.w - Matrix::Identity(3, 3)).norm() < 1e-12);
        CHECK(fit.residual <= (b - a).norm() + 1e-12);
        for (std::uint64_t t = 0; t < 10; ++t) {
            const Matrix q = oracle::random_orthogonal(3, s * 100 + t);
            REQUIRE(fit.residual <= (b - a * q).norm() + 1e-9);
            REQUIRE(std::abs(procrustes_align(b, a * q).residual - fit.residual) < 1e-9);
        }
    }
    CHECK_THROWS_AS(procrustes_align(Matrix::Zero(3, 2), Matrix::Zero(4, 2)), InvalidArgument);
}

TEST_CASE("pad_columns") {
    const auto [b, a] = pad_columns(emb(Matrix::Ones(4, 2)), emb(Matrix::Ones(4, 3)));
    CHECK(b.dim() == 3);
    CHECK(a.dim() == 3);
    CHECK(b.z.col(2).isZero());
    CHECK(b.z.leftCols(2) == Matrix::Ones(4, 2));
    CHECK_THROWS_AS(pad_columns(emb(Matrix::Ones(4, 2)), emb(Matrix::Ones(3, 2))), InvalidArgument);
}

TEST_CASE("vertex distances sum to the squared graph distance") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto ref = emb(oracle::gaussian(25, 2, s));
        const auto pert = emb(oracle::gaussian(25, 2, s + 50));
        for (const auto mode : {Alignment::Procrustes, Alignment::Identity}) {
            const Vector vd = vertex_distances(pert, ref, mode);
            const double g = graph_distance(pert, ref, mode);
            CHECK(vd.minCoeff() >= 0.0);
            CHECK(vd.sum() == doctest::Approx(g * g).epsilon(1e-12));
        }
        CHECK(graph_distance(pert, ref, Alignment::Procrustes) ==
              doctest::Approx(procrustes_distance(ref, pert)).epsilon(1e-12));
        CHECK(graph_distance(pert, ref, Alignment::Procrustes) <=
              graph_distance(pert, ref, Alignment::Identity) + 1e-12);
    }
    Matrix r(2, 1);
    r << 1, 0;
    Matrix p(2, 1);
    p << 2, 0;
    CHECK(graph_distance(emb(p), emb(r), Alignment::Identity) == 1.0);
    CHECK(vertex_distances(emb(p), emb(r), Alignment::Identity) == Vector::Unit(2, 0));
}

TEST_CASE("norms") {
    Matrix m(2, 2);
    m << 3, 4, 0, 1;
    CHECK(two_to_inf_norm(m) == 5.0);
    CHECK(two_to_inf_norm(Matrix(0, 2)) == 0.0);
    CHECK(normalized_distance(1.0, emb(Matrix::Constant(1, 1, 2.0))) == 0.5);
    CHECK_THROWS_AS(normalized_distance(1.0, emb(Matrix::Zero(2, 2))), InvalidArgument);
}

TEST_CASE("diagnostics") {
    const ProbMatrix p(Matrix::Constant(2, 2, 0.25));
    const LabelVector y({1, 2});
    const auto d = diagnostics(p, 1, &y);
    CHECK(d.delta == doctest::Approx(0.5));
    CHECK(d.lambda_d == doctest::Approx(0.5));
    CHECK(d.gamma == doctest::Approx(1.0));
    CHECK(*d.xi == doctest::Approx(0.25));
    CHECK(d.deloc_reference == doctest::Approx(std::sqrt(0.5)));
    CHECK(d.deloc_max_row == doctest::Approx(std::sqrt(0.5)));
    CHECK(!d.alpha);
    const VertexSet c{0, 1};
    CHECK(*diagnostics(p, 1, nullptr, &c).alpha == 2);
    CHECK_THROWS_AS(diagnostics(p, 3), InvalidArgument);

    // xi against a direct triple loop.
    const auto [x, labels] = sample_mixture_latents(60, 3, 8);
    const auto pm = edge_prob_matrix(x);
    double xi = 1e300;
    for (Index i = 0; i < 60; ++i) {
        for (int k = 1; k <= 3; ++k) {
            double s = 0.0;
            for (Index j = 0; j < 60; ++j) {
                if (labels[static_cast<std::size_t>(j)] == k) s += pm(i, j);
            }
            xi = std::min(xi, s);
        }
    }
    const auto dx = diagnostics(pm, 2, &labels);
    CHECK(*dx.xi == doctest::Approx(xi).epsilon(1e-12));
    CHECK(dx.gamma > 0.0);
    CHECK(dx.gamma <= 1.0 + 1e-12);
}

TEST_CASE("gee bound rate") {
    CHECK(gee_bound_rate(100, 3, 10) == doctest::Approx(std::sqrt(3 * std::log(100.0) / 100) + 0.1));
}
