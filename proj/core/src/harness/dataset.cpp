#include "pclique/harness/dataset.hpp"

#include "pclique/error.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string_view>

namespace pclique::harness {

namespace {

bool is_skippable(std::string_view line) {
    const auto first = line.find_first_not_of(" \t\r");
    return first == std::string_view::npos || line[first] == '#' || line[first] == '%';
}

// Splits a line into exactly two nonnegative integers; throws IoError(line) otherwise.
std::pair<long long, long long> parse_pair(const std::string& line, long line_number) {
    std::istringstream fields(line);
    std::string tokens[3];
    fields >> tokens[0] >> tokens[1] >> tokens[2];
    if (tokens[0].empty() || tokens[1].empty() || !tokens[2].empty()) {
        throw IoError("expected two integers", line_number);
    }
    long long values[2] = {0, 0};
    for (int i = 0; i < 2; ++i) {
        const std::string& tok = tokens[i];
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), values[i]);
        if (ec != std::errc() || ptr != tok.data() + tok.size()) {
            throw IoError("non-integer token '" + tok + "'", line_number);
        }
        if (values[i] < 0) {
            throw IoError("negative vertex id '" + tok + "'", line_number);
        }
    }
    return {values[0], values[1]};
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
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

EdgeListLoad read_edge_list(std::istream& in) {
    std::vector<std::pair<long long, long long>> raw;
    long long max_id = -1;
    long long declared = 0;
    std::size_t self_loops = 0;
    std::string line;
    long line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (is_skippable(line)) {
            // Our own writer records the vertex count so isolated trailing vertices survive.
            if (long long nodes = 0; std::sscanf(line.c_str(), " # nodes: %lld", &nodes) == 1 && nodes > 0) {
                declared = std::max(declared, nodes);
            }
            continue;
        }
        const auto [u, v] = parse_pair(line, line_number);
        max_id = std::max({max_id, u, v});
        if (u == v) {
            ++self_loops;
            continue;
        }
        raw.emplace_back(u, v);
    }
    if (max_id < 0 && declared == 0) {
        throw InvalidDataset("edge list contains no edges");
    }
    const long long n = std::max(max_id + 1, declared);
    if (n > 100000) {
        throw InvalidDataset("vertex count " + std::to_string(n) + " too large for a dense adjacency matrix");
    }
    EdgeListLoad out;
    out.self_loops_dropped = self_loops;
    out.graph = AdjacencyMatrix(static_cast<Index>(n));
    for (const auto& [u, v] : raw) {
        if (out.graph.has_edge(u, v)) {
            ++out.duplicate_edges;
            continue;
        }
        out.graph.set_edge(u, v);
    }
    return out;
}

EdgeListLoad load_edge_list(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_edge_list(in);
}

LabelVector read_labels(std::istream& in) {
    std::map<long long, long long> department_of;
    std::map<long long, int> renumbered;
    std::vector<long long> order;
    std::string line;
    long line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (is_skippable(line)) {
            continue;
        }
        const auto [node, dept] = parse_pair(line, line_number);
        if (!department_of.emplace(node, dept).second) {
            throw InvalidDataset("vertex " + std::to_string(node) + " labeled twice (line " +
                                 std::to_string(line_number) + ")");
        }
        order.push_back(dept);
    }
    if (department_of.empty()) {
        throw InvalidDataset("label file is empty");
    }
    // Departments are renumbered by first appearance in file order.
    for (const long long dept : order) {
        renumbered.emplace(dept, static_cast<int>(renumbered.size()) + 1);
    }
    std::vector<int> labels;
    labels.reserve(department_of.size());
    long long expected = 0;
    for (const auto& [node, dept] : department_of) {
        if (node != expected) {
            throw InvalidDataset("label file is missing vertex " + std::to_string(expected));
        }
        labels.push_back(renumbered.at(dept));
        ++expected;
    }
    return LabelVector(std::move(labels));
}

LabelVector load_labels(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_labels(in);
}

void write_edge_list(const AdjacencyMatrix& a, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "# nodes: " << a.size() << '\n';
    for (const auto& [u, v] : a.edges()) {
        out << u << ' ' << v << '\n';
    }
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    long line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        std::size_t start = 0;
        for (;;) {
            const auto comma = line.find(',', start);
            const std::string field = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            std::size_t used = 0;
            double value = 0.0;
            try {
                value = std::stod(field, &used);
            } catch (const std::exception&) {
                throw IoError("non-numeric field '" + field + "' in " + path.string(), line_number);
            }
            if (field.find_first_not_of(" \t", used) != std::string::npos) {
                throw IoError("non-numeric field '" + field + "' in " + path.string(), line_number);
            }
            row.push_back(value);
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw IoError("ragged row in " + path.string(), line_number);
        }
        rows.push_back(std::move(row));
    }
    Matrix m(static_cast<Index>(rows.size()), rows.empty() ? 0 : static_cast<Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
        }
    }
    return m;
}

void write_matrix_csv(const Matrix& m, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << std::setprecision(17);
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j > 0) out << ',';
            out << m(i, j);
        }
        out << '\n';
    }
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

}  // namespace pclique::harness
