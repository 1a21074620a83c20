#include "pclique/harness/results.hpp"

#include "pclique/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <tuple>

namespace pclique::harness {

using nlohmann::json;

const char* to_string(RecordStatus status) noexcept {
    switch (status) {
        case RecordStatus::Ok: return "ok";
        case RecordStatus::Failed: return "failed";
        case RecordStatus::Pending: return "pending";
    }
    return "unknown";
}

namespace {

RecordStatus parse_status(const std::string& text) {
    if (text == "ok") return RecordStatus::Ok;
    if (text == "failed") return RecordStatus::Failed;
    if (text == "pending") return RecordStatus::Pending;
    throw InvalidDataset("unknown record status '" + text + "'");
}

std::string format_double(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n\r") == std::string::npos) {
        return text;
    }
    std::string out = "\"";
    for (const char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

template <typename T, typename F>
std::string join(const std::vector<T>& values, F format) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ';';
        out += format(values[i]);
    }
    return out;
}

// One RFC 4180 record; quoted fields may span lines.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    std::string field;
    bool quoted = false;
    bool any = false;
    char c = 0;
    while (in.get(c)) {
        any = true;
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field += '"';
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            break;
        } else if (c != '\r') {
            field += c;
        }
    }
    if (!any) {
        return false;
    }
    fields.push_back(std::move(field));
    return true;
}

double parse_double(const std::string& text, long line) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw IoError("bad number '" + text + "'", line);
    }
    if (used != text.size()) {
        throw IoError("bad number '" + text + "'", line);
    }
    return v;
}

std::optional<double> parse_optional(const std::string& text, long line) {
    if (text.empty()) return std::nullopt;
    return parse_double(text, line);
}

template <typename T, typename F>
std::vector<T> split(const std::string& text, F parse) {
    std::vector<T> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    for (;;) {
        const auto semi = text.find(';', start);
        out.push_back(parse(text.substr(start, semi == std::string::npos ? std::string::npos : semi - start)));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return out;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::ofstream open_for_write(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    return out;
}

}  // namespace

MeanSd mean_sd(const std::vector<double>& values) {
    MeanSd out;
    if (values.empty()) {
        out.mean = std::nan("");
        return out;
    }
    double sum = 0.0;
    for (const double v : values) sum += v;
    out.mean = sum / static_cast<double>(values.size());
    if (values.size() >= 2) {
        double ss = 0.0;
        for (const double v : values) ss += (v - out.mean) * (v - out.mean);
        out.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return out;
}

std::vector<SummaryRow> aggregate(const ResultTable& table, std::vector<std::string>* warnings) {
    using Key = std::tuple<std::string, Index, std::string, std::string, Index>;
    std::vector<Key> order;
    std::map<Key, std::pair<std::vector<double>, std::vector<double>>> groups;
    for (const auto& r : table) {
        const Key key{r.method, r.n, r.clique_rule, r.clique_kind, r.embed_dim};
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) order.push_back(key);
        if (r.ok()) {
            it->second.first.push_back(r.graph_distance);
            it->second.second.push_back(r.normalized_distance);
        }
    }
    std::vector<SummaryRow> rows;
    for (const auto& key : order) {
        const auto& [dist, norm] = groups.at(key);
        const auto& [method, n, rule, kind, dim] = key;
        if (dist.empty()) {
            if (warnings != nullptr) {
                warnings->push_back("no successful replicates for " + method + " n=" + std::to_string(n) + " " +
                                    rule + "/" + kind + " d=" + std::to_string(dim));
            }
            continue;
        }
        SummaryRow row;
        row.method = method;
        row.n = n;
        row.clique_rule = rule;
        row.clique_kind = kind;
        row.embed_dim = dim;
        row.replicates = dist.size();
        const MeanSd d = mean_sd(dist);
        row.mean = d.mean;
        row.sd = d.sd;
        if (d.sd) {
            row.band_low = d.mean - 2.0 * *d.sd;
            row.band_high = d.mean + 2.0 * *d.sd;
        }
        const MeanSd nd = mean_sd(norm);
        row.normalized_mean = nd.mean;
        row.normalized_sd = nd.sd;
        rows.push_back(std::move(row));
    }
    return rows;
}

const std::vector<std::string>& record_columns() {
    static const std::vector<std::string> columns{
        "method",     "n",          "clique_rule", "clique_kind", "embed_dim",       "replicate",
        "graph_distance", "normalized_distance", "two_to_inf_distance", "clique_size", "status", "error",
        "delta",      "lambda_d",   "gamma",       "xi",          "deloc_max_row",   "vertex_distances",
        "clique_indices"};
    return columns;
}

const std::vector<std::string>& summary_columns() {
    static const std::vector<std::string> columns{"method",    "n",    "clique_rule", "clique_kind", "embed_dim",
                                                  "replicates", "mean", "sd",          "band_low",    "band_high",
                                                  "normalized_mean", "normalized_sd"};
    return columns;
}

void write_records_csv(const ResultTable& table, std::ostream& out) {
    const auto& columns = record_columns();
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << '\n';
    for (const auto& r : table) {
        const bool ok = r.ok();
        out << csv_field(r.method) << ',' << r.n << ',' << csv_field(r.clique_rule) << ',' << csv_field(r.clique_kind)
            << ',' << r.embed_dim << ',' << r.replicate << ',' << (ok ? format_double(r.graph_distance) : "") << ','
            << (ok ? format_double(r.normalized_distance) : "") << ','
            << (ok ? format_double(r.two_to_inf_distance) : "") << ',' << r.clique_size << ',' << to_string(r.status)
            << ',' << csv_field(r.error) << ',' << format_optional(r.delta) << ',' << format_optional(r.lambda_d) << ','
            << format_optional(r.gamma) << ',' << format_optional(r.xi) << ',' << format_optional(r.deloc_max_row)
            << ',' << join(r.vertex_distances, format_double) << ','
            << join(r.clique_indices, [](Index v) { return std::to_string(v); }) << '\n';
    }
}

void write_records_json(const ResultTable& table, std::ostream& out) {
    json rows = json::array();
    for (const auto& r : table) {
        json row;
        row["method"] = r.method;
        row["n"] = r.n;
        row["clique_rule"] = r.clique_rule;
        row["clique_kind"] = r.clique_kind;
        row["embed_dim"] = r.embed_dim;
        row["replicate"] = r.replicate;
        row["graph_distance"] = r.ok() ? json(r.graph_distance) : json(nullptr);
        row["normalized_distance"] = r.ok() ? json(r.normalized_distance) : json(nullptr);
        row["two_to_inf_distance"] = r.ok() ? json(r.two_to_inf_distance) : json(nullptr);
        row["clique_size"] = r.clique_size;
        row["status"] = to_string(r.status);
        row["error"] = r.error;
        row["delta"] = optional_json(r.delta);
        row["lambda_d"] = optional_json(r.lambda_d);
        row["gamma"] = optional_json(r.gamma);
        row["xi"] = optional_json(r.xi);
        row["deloc_max_row"] = optional_json(r.deloc_max_row);
        row["vertex_distances"] = r.vertex_distances;
        row["clique_indices"] = r.clique_indices;
        rows.push_back(std::move(row));
    }
    out << rows.dump(2) << '\n';
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
    const auto& columns = summary_columns();
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << '\n';
    for (const auto& r : rows) {
        out << csv_field(r.method) << ',' << r.n << ',' << csv_field(r.clique_rule) << ',' << csv_field(r.clique_kind)
            << ',' << r.embed_dim << ',' << r.replicates << ',' << format_double(r.mean) << ',' << format_optional(r.sd)
            << ',' << format_optional(r.band_low) << ',' << format_optional(r.band_high) << ','
            << format_double(r.normalized_mean) << ',' << format_optional(r.normalized_sd) << '\n';
    }
}

void write_summary_json(const std::vector<SummaryRow>& rows, std::ostream& out) {
    json array = json::array();
    for (const auto& r : rows) {
        array.push_back({{"method", r.method},
                         {"n", r.n},
                         {"clique_rule", r.clique_rule},
                         {"clique_kind", r.clique_kind},
                         {"embed_dim", r.embed_dim},
                         {"replicates", r.replicates},
                         {"mean", r.mean},
                         {"sd", optional_json(r.sd)},
                         {"band_low", optional_json(r.band_low)},
                         {"band_high", optional_json(r.band_high)},
                         {"normalized_mean", r.normalized_mean},
                         {"normalized_sd", optional_json(r.normalized_sd)}});
    }
    out << array.dump(2) << '\n';
}

ResultTable read_records_csv(std::istream& in) {
    std::vector<std::string> fields;
    if (!read_csv_record(in, fields) || fields != record_columns()) {
        throw IoError("records CSV has an unexpected header", 1);
    }
    ResultTable table;
    long line = 1;
    while (read_csv_record(in, fields)) {
        ++line;
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != record_columns().size()) {
            throw IoError("records CSV row has " + std::to_string(fields.size()) + " fields", line);
        }
        ResultRecord r;
        r.method = fields[0];
        r.n = static_cast<Index>(parse_double(fields[1], line));
        r.clique_rule = fields[2];
        r.clique_kind = fields[3];
        r.embed_dim = static_cast<Index>(parse_double(fields[4], line));
        r.replicate = static_cast<int>(parse_double(fields[5], line));
        r.status = parse_status(fields[10]);
        if (r.ok()) {
            r.graph_distance = parse_double(fields[6], line);
            r.normalized_distance = parse_double(fields[7], line);
            r.two_to_inf_distance = parse_double(fields[8], line);
        }
        r.clique_size = static_cast<std::size_t>(parse_double(fields[9], line));
        r.error = fields[11];
        r.delta = parse_optional(fields[12], line);
        r.lambda_d = parse_optional(fields[13], line);
        r.gamma = parse_optional(fields[14], line);
        r.xi = parse_optional(fields[15], line);
        r.deloc_max_row = parse_optional(fields[16], line);
        r.vertex_distances = split<double>(fields[17], [line](const std::string& s) { return parse_double(s, line); });
        r.clique_indices = split<Index>(fields[18], [line](const std::string& s) {
            return static_cast<Index>(parse_double(s, line));
        });
        table.push_back(std::move(r));
    }
    return table;
}

void emit_records(const ResultTable& table, const std::filesystem::path& path, bool as_json) {
    auto out = open_for_write(path);
    if (as_json) {
        write_records_json(table, out);
    } else {
        write_records_csv(table, out);
    }
    if (!out) throw IoError("failed writing " + path.string());
}

void emit_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& path, bool as_json) {
    auto out = open_for_write(path);
    if (as_json) {
        write_summary_json(rows, out);
    } else {
        write_summary_csv(rows, out);
    }
    if (!out) throw IoError("failed writing " + path.string());
}

std::string gnuplot_script(const std::vector<SummaryRow>& rows, const std::string& summary_csv) {
    // One series per (method, rule, kind, dim); the CSV is filtered inline with awk.
    std::vector<std::tuple<std::string, std::string, std::string, Index>> series;
    for (const auto& r : rows) {
        const auto key = std::make_tuple(r.method, r.clique_rule, r.clique_kind, r.embed_dim);
        if (std::find(series.begin(), series.end(), key) == series.end()) series.push_back(key);
    }
    std::ostringstream s;
    s << "set datafile separator ','\n"
      << "set key left top\n"
      << "set xlabel 'n'\n"
      << "set ylabel 'graph distance'\n"
      << "set terminal pngcairo size 900,600\n"
      << "set output 'summary.png'\n";
    s << "plot ";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& [method, rule, kind, dim] = series[i];
        const std::string filter = "< awk -F, '$1==\"" + method + "\" && $3==\"" + rule + "\" && $4==\"" + kind +
                                   "\" && $5==" + std::to_string(dim) + "' " + summary_csv;
        const std::string title = method + " " + rule + " " + kind + " d=" + std::to_string(dim);
        if (i > 0) s << ", \\\n     ";
        s << '"' << filter << "\" using 2:7:9:10 with yerrorlines title '" << title << "'";
    }
    s << '\n';
    return s.str();
}

}  // namespace pclique::harness
