#include "oracles.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

namespace oracle {

Matrix naive_gee(const Matrix& a, const std::vector<int>& y) {
    const Index n = a.rows();
    const int k = *std::max_element(y.begin(), y.end());
    std::vector<double> counts(static_cast<std::size_t>(k), 0.0);
    for (const int label : y) counts[static_cast<std::size_t>(label - 1)] += 1.0;
    Matrix z = Matrix::Zero(n, k);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            const int c = y[static_cast<std::size_t>(j)] - 1;
            z(i, c) += a(i, j);
        }
    }
    for (int c = 0; c < k; ++c) z.col(c) /= counts[static_cast<std::size_t>(c)];
    return z;
}

Vector dense_eigenvalues_by_magnitude(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    std::vector<double> values(solver.eigenvalues().data(), solver.eigenvalues().data() + m.rows());
    std::stable_sort(values.begin(), values.end(), [](double x, double y) {
        if (std::abs(std::abs(x) - std::abs(y)) > 1e-12) return std::abs(x) > std::abs(y);
        return x > y;
    });
    return Eigen::Map<Vector>(values.data(), static_cast<Index>(values.size()));
}

std::vector<double> dense_singular_values(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    const Vector s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

double profile_loglik(const std::vector<double>& v, int q) {
    const int p = static_cast<int>(v.size());
    double mu1 = 0.0;
    double mu2 = 0.0;
    for (int i = 0; i < q; ++i) mu1 += v[static_cast<std::size_t>(i)] / q;
    for (int i = q; i < p; ++i) mu2 += v[static_cast<std::size_t>(i)] / (p - q);
    double ss = 0.0;
    for (int i = 0; i < p; ++i) {
        const double mu = i < q ? mu1 : mu2;
        ss += (v[static_cast<std::size_t>(i)] - mu) * (v[static_cast<std::size_t>(i)] - mu);
    }
    if (p <= 2 || ss <= 0.0) return std::numeric_limits<double>::infinity();
    const double var = ss / (p - 2);
    double ll = 0.0;
    for (int i = 0; i < p; ++i) {
        const double mu = i < q ? mu1 : mu2;
        const double r = v[static_cast<std::size_t>(i)] - mu;
        ll += -0.5 * std::log(2.0 * std::numbers::pi * var) - r * r / (2.0 * var);
    }
    return ll;
}

int exhaustive_elbow(const std::vector<double>& values) {
    int best_q = 1;
    double best = profile_loglik(values, 1);
    for (int q = 2; q < static_cast<int>(values.size()); ++q) {
        const double ll = profile_loglik(values, q);
        if (ll > best) {
            best = ll;
            best_q = q;
        }
    }
    return best_q;
}

double naive_modularity(const Matrix& a, const std::vector<int>& labels) {
    const Index n = a.rows();
    const Vector d = a.rowwise().sum();
    const double two_m = d.sum();
    if (two_m == 0.0) return 0.0;
    double q = 0.0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)]) {
                q += a(i, j) - d(i) * d(j) / two_m;
            }
        }
    }
    return q / two_m;
}

double naive_cpm(const Matrix& a, const std::vector<int>& labels, double gamma) {
    std::map<int, double> edges;
    std::map<int, double> sizes;
    const Index n = a.rows();
    for (Index i = 0; i < n; ++i) {
        sizes[labels[static_cast<std::size_t>(i)]] += 1.0;
        for (Index j = i + 1; j < n; ++j) {
            if (labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)]) {
                edges[labels[static_cast<std::size_t>(i)]] += a(i, j);
            }
        }
    }
    double q = 0.0;
    for (const auto& [c, size] : sizes) q += edges[c] - gamma * size * (size - 1.0) / 2.0;
    return q;
}

double best_single_move_gain(const Matrix& a, const std::vector<int>& labels, bool modularity, double gamma) {
    // Per-community totals, then each candidate partition's quality is rebuilt
    // from those totals (exact, not a gain formula).
    const Index n = a.rows();
    const Vector deg = a.rowwise().sum();
    const double two_m = deg.sum();
    std::map<int, double> e;
    std::map<int, double> vol;
    std::map<int, double> size;
    for (Index i = 0; i < n; ++i) {
        const int ci = labels[static_cast<std::size_t>(i)];
        vol[ci] += deg(i);
        size[ci] += 1.0;
        e[ci] += 0.0;
        for (Index j = i + 1; j < n; ++j) {
            if (labels[static_cast<std::size_t>(j)] == ci) e[ci] += a(i, j);
        }
    }
    auto quality = [&](const std::map<int, double>& ee, const std::map<int, double>& vv,
                       const std::map<int, double>& ss) {
        double q = 0.0;
        for (const auto& [c, s] : ss) {
            if (s == 0.0) continue;
            if (modularity) {
                if (two_m == 0.0) continue;
                const double share = vv.at(c) / two_m;
                q += 2.0 * ee.at(c) / two_m - share * share;
            } else {
                q += ee.at(c) - gamma * s * (s - 1.0) / 2.0;
            }
        }
        return q;
    };
    const double base = quality(e, vol, size);
    const int fresh = *std::max_element(labels.begin(), labels.end()) + 1;
    double best = -std::numeric_limits<double>::infinity();
    for (Index v = 0; v < n; ++v) {
        const int from = labels[static_cast<std::size_t>(v)];
        std::map<int, double> to_comm;
        for (Index j = 0; j < n; ++j) {
            if (j != v) to_comm[labels[static_cast<std::size_t>(j)]] += a(v, j);
        }
        std::vector<int> targets;
        for (const auto& [c, s] : size) {
            if (c != from) targets.push_back(c);
        }
        if (size[from] > 1.0) targets.push_back(fresh);
        for (const int to : targets) {
            auto e2 = e;
            auto v2 = vol;
            auto s2 = size;
            e2[from] -= to_comm[from];
            v2[from] -= deg(v);
            s2[from] -= 1.0;
            e2[to] += to_comm[to];
            v2[to] += deg(v);
            s2[to] += 1.0;
            best = std::max(best, quality(e2, v2, s2) - base);
        }
    }
    return best;
}

std::vector<std::vector<int>> all_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> current(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int i, int blocks) -> void {
        if (i == n) {
            out.push_back(current);
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            current[static_cast<std::size_t>(i)] = b;
            self(self, i + 1, std::max(blocks, b + 1));
        }
    };
    if (n > 0) {
        current[0] = 0;
        rec(rec, 1, 1);
    }
    return out;
}

Matrix gaussian(Index rows, Index cols, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) m(i, j) = normal(gen);
    }
    return m;
}

Matrix random_orthogonal(int k, std::uint64_t seed) {
    const Matrix g = gaussian(k, k, seed);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < k; ++j) {
        if (r(j, j) < 0.0) q.col(j) *= -1.0;
    }
    return q;
}

Matrix sbm(const std::vector<int>& blocks, double p_in, double p_out, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const auto n = static_cast<Index>(blocks.size());
    Matrix a = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double p = blocks[static_cast<std::size_t>(i)] == blocks[static_cast<std::size_t>(j)] ? p_in : p_out;
            if (unif(gen) < p) a(i, j) = a(j, i) = 1.0;
        }
    }
    return a;
}

std::filesystem::path scratch_dir(const std::string& tag) {
    static std::mt19937_64 gen(std::random_device{}());
    const auto dir = std::filesystem::temp_directory_path() / ("pclique_" + tag + "_" + std::to_string(gen()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace oracle
