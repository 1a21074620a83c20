#pragma once

#include "pclique/types.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pclique::harness {

enum class RecordStatus { Ok, Failed, Pending };

const char* to_string(RecordStatus status) noexcept;

/// One (method, n, rule, kind, dim, replicate) measurement.
struct ResultRecord {
    std::string method;
    Index n = 0;
    std::string clique_rule;
    std::string clique_kind;
    Index embed_dim = 0;
    int replicate = 0;
    double graph_distance = 0.0;
    double normalized_distance = 0.0;
    /// Largest row norm of the aligned difference.
    double two_to_inf_distance = 0.0;
    std::size_t clique_size = 0;
    RecordStatus status = RecordStatus::Ok;
    std::string error;
    std::vector<double> vertex_distances;
    std::vector<Index> clique_indices;
    // Diagnostics snapshot of the unperturbed model; absent when not recorded.
    std::optional<double> delta;
    std::optional<double> lambda_d;
    std::optional<double> gamma;
    std::optional<double> xi;
    std::optional<double> deloc_max_row;

    bool ok() const noexcept { return status == RecordStatus::Ok; }
};

using ResultTable = std::vector<ResultRecord>;

struct SummaryRow {
    std::string method;
    Index n = 0;
    std::string clique_rule;
    std::string clique_kind;
    Index embed_dim = 0;
    std::size_t replicates = 0;
    double mean = 0.0;
    /// Sample standard deviation (n - 1 denominator); absent for one replicate.
    std::optional<double> sd;
    std::optional<double> band_low;
    std::optional<double> band_high;
    double normalized_mean = 0.0;
    std::optional<double> normalized_sd;
};

/// Groups successful records by (method, n, rule, kind, dim) in order of first
/// appearance. Groups with no successful record are omitted and reported in
/// `warnings` when given.
std::vector<SummaryRow> aggregate(const ResultTable& table, std::vector<std::string>* warnings = nullptr);

/// Mean and sample sd of a sample; sd is empty for fewer than two values.
struct MeanSd {
    double mean = 0.0;
    std::optional<double> sd;
};
MeanSd mean_sd(const std::vector<double>& values);

const std::vector<std::string>& record_columns();
const std::vector<std::string>& summary_columns();

void write_records_csv(const ResultTable& table, std::ostream& out);
void write_records_json(const ResultTable& table, std::ostream& out);
void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);
void write_summary_json(const std::vector<SummaryRow>& rows, std::ostream& out);

ResultTable read_records_csv(std::istream& in);

/// Writes the table to a file; throws IoError when the path is not writable.
void emit_records(const ResultTable& table, const std::filesystem::path& path, bool json);
void emit_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& path, bool json);

/// A gnuplot script plotting mean +- 2 sd per method against n from a summary CSV.
std::string gnuplot_script(const std::vector<SummaryRow>& rows, const std::string& summary_csv);

}  // namespace pclique::harness
