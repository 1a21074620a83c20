#include "oracles.hpp"

#include "pclique/error.hpp"
#include "pclique/graph_model.hpp"
#include "pclique/harness/dataset.hpp"
#include "pclique/harness/vgae_handoff.hpp"

#include <doctest.h>

#include <fstream>

using namespace pclique;
using namespace pclique::harness;

namespace {

struct Fixture {
    std::filesystem::path dir = oracle::scratch_dir("vgae");
    AdjacencyMatrix a = sample_rdpg(ProbMatrix(Matrix::Constant(12, 12, 0.3)), 1);
    AdjacencyMatrix ac = plant_true_clique(a, {0, 1, 2, 3});
    VgaeSettings settings;
};

}  // namespace

TEST_CASE("job files and manifest round trip") {
    Fixture f;
    const auto job = write_vgae_job(f.dir / "job", f.a, f.ac, 3, f.settings, 77);
    CHECK(std::filesystem::exists(job.manifest));
    CHECK(load_edge_list(job.reference_edges).graph == f.a);
    CHECK(load_edge_list(job.perturbed_edges).graph == f.ac);
    const auto back = read_vgae_manifest(job.manifest);
    CHECK(back.reference_edges == job.reference_edges);
    CHECK(back.perturbed_output == job.perturbed_output);
    CHECK(back.latent_dim == 3);
    CHECK(back.hidden_dim == 32);
    CHECK(back.epochs == 200);
    CHECK(back.learning_rate == 0.01);
    CHECK(back.seed == 77);
    // Paths inside the job directory are stored relative.
    CHECK(manifest_json(job).find("\"reference.edges\"") != std::string::npos);
}

TEST_CASE("pending until both outputs exist, then ingested") {
    Fixture f;
    const auto job = write_vgae_job(f.dir, f.a, f.ac, 2, f.settings, 1);
    CHECK(!ingest_vgae_outputs(job, 12));
    const Matrix ref = oracle::gaussian(12, 2, 1);
    write_matrix_csv(ref, job.reference_output);
    CHECK(!ingest_vgae_outputs(job, 12));
    const Matrix pert = oracle::gaussian(12, 2, 2);
    write_matrix_csv(pert, job.perturbed_output);
    const auto out = ingest_vgae_outputs(job, 12);
    REQUIRE(out);
    CHECK(out->reference.z == ref);
    CHECK(out->perturbed.z == pert);
    CHECK(out->perturbed.method == EmbeddingMethod::VGAE);
}

TEST_CASE("shape and content errors") {
    Fixture f;
    const auto job = write_vgae_job(f.dir, f.a, f.ac, 2, f.settings, 1);
    write_matrix_csv(oracle::gaussian(12, 2, 1), job.reference_output);
    write_matrix_csv(oracle::gaussian(11, 2, 2), job.perturbed_output);
    CHECK_THROWS_AS(ingest_vgae_outputs(job, 12), InvalidDataset);
    write_matrix_csv(oracle::gaussian(12, 3, 2), job.perturbed_output);
    CHECK_THROWS_AS(ingest_vgae_outputs(job, 12), InvalidDataset);
    std::ofstream(job.perturbed_output) << "1,nan\n";
    CHECK_THROWS(ingest_vgae_outputs(job, 12));

    CHECK_THROWS_AS(read_vgae_manifest(f.dir / "missing.json"), IoError);
    std::ofstream(f.dir / "broken.json") << "{\"latent_dim\": 2}";
    CHECK_THROWS_AS(read_vgae_manifest(f.dir / "broken.json"), InvalidDataset);
}
