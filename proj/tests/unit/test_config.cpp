#include "oracles.hpp"

#include "pclique/error.hpp"
#include "pclique/harness/config.hpp"

#include <doctest.h>

#include <fstream>

using namespace pclique;
using namespace pclique::harness;

TEST_CASE("defaults validate") {
    ExperimentConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.n_grid.front() == 100);
    CHECK(cfg.n_grid.back() == 1500);
    CHECK(cfg.nmc == 50);
}

TEST_CASE("method names") {
    for (const auto m : {Method::ASE, Method::GEE1, Method::GEE2, Method::GEEFixed, Method::VGAE}) {
        CHECK(parse_method(to_string(m)) == m);
    }
    CHECK(parse_method("GEE") == Method::GEEFixed);
    CHECK_THROWS_AS(parse_method("PCA"), InvalidArgument);
}

TEST_CASE("parse overrides and keeps defaults") {
    const auto cfg = parse_config(R"j({
        "design": "labeled", "classes": 3, "n_grid": [50, 80], "nmc": 4,
        "cliques": [{"rule": "sqrt_n"}, {"rule": "frac(0.2)", "kind": "true"}],
        "methods": ["ASE", "GEE_fixed", "GEE1"], "ase_dims": [2, 3], "seed": 9,
        "leiden": {"cpm_resolution": 0.1}, "threads": 2, "format": "json", "output": "out"
    })j");
    CHECK(cfg.design == Design::Labeled);
    CHECK(cfg.n_grid == std::vector<Index>{50, 80});
    CHECK(cfg.cliques.size() == 2);
    CHECK(cfg.cliques[0].kind == CliqueKind::Pseudo);
    CHECK(cfg.cliques[1] == CliqueSpec{CliqueRule::frac(0.2), CliqueKind::True});
    CHECK(cfg.methods == std::vector<Method>{Method::ASE, Method::GEEFixed, Method::GEE1});
    CHECK(cfg.leiden.cpm_resolution == 0.1);
    CHECK(cfg.leiden.max_iterations == 20);
    CHECK(cfg.format == OutputFormat::Json);
    CHECK(cfg.output == "out");
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("round trip through JSON") {
    ExperimentConfig cfg;
    cfg.design = Design::Labeled;
    cfg.methods = {Method::GEEFixed, Method::VGAE};
    cfg.cliques = euemail_clique_grid();
    cfg.euemail.scree_values = 30;
    cfg.record_diagnostics = true;
    const auto back = parse_config(to_json(cfg));
    CHECK(to_json(back) == to_json(cfg));
    CHECK(back.cliques == cfg.cliques);
    CHECK(back.methods == cfg.methods);
}

TEST_CASE("bad configs") {
    CHECK_THROWS_AS(parse_config("{"), InvalidArgument);
    CHECK_THROWS_AS(parse_config("[]"), InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"j({"nmcc": 3})j"), InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"j({"nmc": "three"})j"), InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"j({"design": "mixed"})j"), InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"j({"cliques": [{"rule": "sqrt_n", "size": 3}]})j"), InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"j({"format": "xml"})j"), InvalidArgument);

    auto invalid = [](const char* text) { CHECK_THROWS_AS(parse_config(text).validate(), InvalidArgument); };
    invalid(R"j({"nmc": 0})j");
    invalid(R"j({"n_grid": []})j");
    invalid(R"j({"n_grid": [300, 100]})j");
    invalid(R"j({"n_grid": [1]})j");
    invalid(R"j({"methods": []})j");
    invalid(R"j({"ase_dims": [0]})j");
    invalid(R"j({"ase_dims": [], "methods": ["ASE"]})j");
    invalid(R"j({"methods": ["GEE_fixed"]})j");
    invalid(R"j({"design": "labeled", "classes": 1})j");
    invalid(R"j({"leiden": {"cpm_resolution": 0}})j");
    invalid(R"j({"threads": 0})j");
    CHECK_NOTHROW(parse_config(R"j({"ase_dims": [], "methods": ["GEE1"]})j").validate());
}

TEST_CASE("load_config") {
    const auto dir = oracle::scratch_dir("config");
    std::ofstream(dir / "c.json") << R"j({"nmc": 7})j";
    CHECK(load_config(dir / "c.json").nmc == 7);
    CHECK_THROWS_AS(load_config(dir / "missing.json"), IoError);
}

TEST_CASE("email clique grid") {
    const auto grid = euemail_clique_grid();
    CHECK(grid.size() == 6);
    for (const auto& spec : grid) CHECK(spec.kind == CliqueKind::True);
    // Sizes at n = 1005 increase along the grid: 7, 32, 48, 101, 178, 201.
    std::vector<Index> sizes;
    for (const auto& spec : grid) sizes.push_back(clique_size(1005, spec.rule));
    CHECK(sizes == std::vector<Index>{7, 32, 48, 101, 178, 201});
}
