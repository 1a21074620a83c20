#include "oracles.hpp"

#include "pclique/error.hpp"
#include "pclique/harness/results.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace pclique;
using namespace pclique::harness;

namespace {

ResultRecord rec(const std::string& method, Index n, int r, double dist) {
    ResultRecord x;
    x.method = method;
    x.n = n;
    x.clique_rule = "sqrt_n";
    x.clique_kind = "pseudo";
    x.embed_dim = 2;
    x.replicate = r;
    x.graph_distance = dist;
    x.normalized_distance = dist / 10.0;
    x.two_to_inf_distance = dist / 2.0;
    x.clique_size = 10;
    return x;
}

}  // namespace

TEST_CASE("mean and sample sd") {
    const auto a = mean_sd({1.0, 2.0, 3.0});
    CHECK(a.mean == 2.0);
    CHECK(*a.sd == 1.0);
    const auto b = mean_sd({4.0});
    CHECK(b.mean == 4.0);
    CHECK(!b.sd);
}

TEST_CASE("aggregate groups and bands") {
    ResultTable t{rec("ASE", 100, 0, 1.0), rec("ASE", 100, 1, 2.0), rec("ASE", 100, 2, 3.0),
                  rec("GEE1", 100, 0, 5.0)};
    auto failed = rec("ASE", 100, 3, 100.0);
    failed.status = RecordStatus::Failed;
    t.push_back(failed);
    const auto rows = aggregate(t);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].method == "ASE");
    CHECK(rows[0].replicates == 3);
    CHECK(rows[0].mean == 2.0);
    CHECK(*rows[0].sd == 1.0);
    CHECK(*rows[0].band_low == 0.0);
    CHECK(*rows[0].band_high == 4.0);
    CHECK(rows[0].normalized_mean == doctest::Approx(0.2));
    CHECK(rows[1].replicates == 1);
    CHECK(!rows[1].sd);
    CHECK(!rows[1].band_low);

    auto pending = rec("VGAE", 100, 0, 0.0);
    pending.status = RecordStatus::Pending;
    std::vector<std::string> warnings;
    CHECK(aggregate({pending}, &warnings).empty());
    CHECK(warnings.size() == 1);
}

TEST_CASE("empty table writes only the header") {
    std::ostringstream out;
    write_records_csv({}, out);
    std::string header;
    for (std::size_t i = 0; i < record_columns().size(); ++i) header += (i ? "," : "") + record_columns()[i];
    CHECK(out.str() == header + "\n");
    std::ostringstream s;
    write_summary_csv({}, s);
    CHECK(s.str().find('\n') == s.str().size() - 1);
}

TEST_CASE("records csv round trip") {
    auto a = rec("ASE", 300, 4, 0.123456789012345678);
    a.vertex_distances = {0.1, 0.25};
    a.clique_indices = {3, 17};
    a.delta = 12.5;
    a.xi = 0.75;
    auto b = rec("GEE_fixed", 300, 4, 1.0 / 3.0);
    b.status = RecordStatus::Failed;
    b.error = "bad \"thing\", with comma\nand newline";
    const ResultTable t{a, b};
    std::ostringstream out;
    write_records_csv(t, out);
    std::istringstream in(out.str());
    const auto back = read_records_csv(in);
    REQUIRE(back.size() == 2);
    CHECK(back[0].graph_distance == a.graph_distance);
    CHECK(back[0].normalized_distance == a.normalized_distance);
    CHECK(back[0].vertex_distances == a.vertex_distances);
    CHECK(back[0].clique_indices == a.clique_indices);
    CHECK(back[0].delta == a.delta);
    CHECK(back[0].xi == a.xi);
    CHECK(!back[0].gamma);
    CHECK(back[1].status == RecordStatus::Failed);
    CHECK(back[1].error == b.error);
    CHECK(back[1].method == "GEE_fixed");

    std::istringstream wrong("method,n\n");
    CHECK_THROWS(read_records_csv(wrong));
}

TEST_CASE("json output marks failures with null") {
    auto b = rec("ASE", 100, 0, 1.0);
    b.status = RecordStatus::Failed;
    std::ostringstream out;
    write_records_json({b}, out);
    CHECK(out.str().find("\"graph_distance\": null") != std::string::npos);
    CHECK(out.str().find("\"status\": \"failed\"") != std::string::npos);
}

TEST_CASE("emit to disk and gnuplot script") {
    const auto dir = oracle::scratch_dir("results");
    const ResultTable t{rec("ASE", 100, 0, 1.0), rec("ASE", 100, 1, 2.0)};
    emit_records(t, dir / "sub" / "records.csv", false);
    emit_summary(aggregate(t), dir / "summary.json", true);
    CHECK(std::filesystem::exists(dir / "sub" / "records.csv"));
    CHECK(std::filesystem::exists(dir / "summary.json"));
    const auto script = gnuplot_script(aggregate(t), "summary.csv");
    CHECK(script.find("summary.csv") != std::string::npos);
    CHECK(script.find("ASE") != std::string::npos);
}
