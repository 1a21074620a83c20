#include "pclique/spectral_embed.hpp"

#include "pclique/error.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pclique {

namespace {

// Householder tridiagonalization Q^T M Q = T, kept so that eigenvectors of T
// can be mapped back with a single dormtr call.
struct Tridiagonal {
    Matrix reflectors;
    std::vector<double> diag;
    std::vector<double> offdiag;
    std::vector<double> tau;
};

Tridiagonal tridiagonalize(const Matrix& m) {
    const auto n = static_cast<lapack_int>(m.rows());
    Tridiagonal t;
    t.reflectors = m;
    t.diag.resize(static_cast<std::size_t>(n));
    t.offdiag.resize(static_cast<std::size_t>(std::max<lapack_int>(n, 1)));
    t.tau.resize(static_cast<std::size_t>(std::max<lapack_int>(n - 1, 1)));
    const lapack_int info = LAPACKE_dsytrd(LAPACK_COL_MAJOR, 'L', n, t.reflectors.data(), n, t.diag.data(),
                                           t.offdiag.data(), t.tau.data());
    if (info != 0) {
        throw NumericFailure("dsytrd failed with info " + std::to_string(info));
    }
    return t;
}

std::vector<double> ascending_eigenvalues(const Tridiagonal& t) {
    auto d = t.diag;
    auto e = t.offdiag;
    const lapack_int info = LAPACKE_dsterf(static_cast<lapack_int>(d.size()), d.data(), e.data());
    if (info != 0) {
        throw NumericFailure("dsterf failed with info " + std::to_string(info));
    }
    return d;
}

// Positions (into the ascending spectrum) of the `count` selected eigenvalues,
// in output order. The low-end picks are exactly [0, from_bottom).
struct Selection {
    std::vector<Index> picks;
    Index from_bottom = 0;
};

Selection select_positions(const std::vector<double>& ascending, Index count, SpectrumOrder order) {
    const auto n = static_cast<Index>(ascending.size());
    Selection out;
    auto& picks = out.picks;
    picks.reserve(static_cast<std::size_t>(count));
    if (order == SpectrumOrder::Algebraic) {
        for (Index i = 0; i < count; ++i) {
            picks.push_back(n - 1 - i);
        }
        return out;
    }
    double scale = 0.0;
    for (const double v : ascending) {
        scale = std::max(scale, std::abs(v));
    }
    const double tie = 1e-12 * scale;
    Index lo = 0;
    Index hi = n - 1;
    while (static_cast<Index>(picks.size()) < count) {
        const double top = std::abs(ascending[static_cast<std::size_t>(hi)]);
        const double bottom = std::abs(ascending[static_cast<std::size_t>(lo)]);
        if (bottom > top + tie) {
            picks.push_back(lo++);
        } else {
            picks.push_back(hi--);
        }
    }
    out.from_bottom = lo;
    return out;
}

void fix_signs(Matrix& vectors) {
    for (Index j = 0; j < vectors.cols(); ++j) {
        Index arg = 0;
        double best = -1.0;
        for (Index i = 0; i < vectors.rows(); ++i) {
            const double magnitude = std::abs(vectors(i, j));
            if (magnitude > best) {
                best = magnitude;
                arg = i;
            }
        }
        if (vectors(arg, j) < 0.0) {
            vectors.col(j) *= -1.0;
        }
    }
}

// Eigenvectors of T for the contiguous 0-based index range [first, last] of the
// ascending spectrum, mapped back to the original basis.
Matrix block_eigenvectors(const Tridiagonal& t, Index first, Index last) {
    const auto n = static_cast<lapack_int>(t.diag.size());
    auto d = t.diag;
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    std::copy_n(t.offdiag.begin(), std::max<lapack_int>(n - 1, 0), e.begin());
    const auto width = static_cast<lapack_int>(last - first + 1);
    std::vector<double> w(static_cast<std::size_t>(n));
    Matrix z(n, width);
    std::vector<lapack_int> support(static_cast<std::size_t>(2 * std::max<lapack_int>(width, 1)));
    lapack_int found = 0;
    lapack_logical tryrac = 1;
    lapack_int info = LAPACKE_dstemr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0, 0.0,
                                     static_cast<lapack_int>(first + 1), static_cast<lapack_int>(last + 1), &found,
                                     w.data(), z.data(), n, width, support.data(), &tryrac);
    if (info != 0 || found != width) {
        throw NumericFailure("dstemr failed with info " + std::to_string(info));
    }
    Matrix reflectors = t.reflectors;
    info = LAPACKE_dormtr(LAPACK_COL_MAJOR, 'L', 'L', 'N', n, width, reflectors.data(), n, t.tau.data(), z.data(), n);
    if (info != 0) {
        throw NumericFailure("dormtr failed with info " + std::to_string(info));
    }
    return z;
}

void require_symmetric_input(const Matrix& m, Index count) {
    if (m.rows() != m.cols()) {
        throw InvalidArgument("spectral routines need a square matrix");
    }
    if (count < 1 || count > m.rows()) {
        throw InvalidArgument("requested " + std::to_string(count) + " eigenpairs of a " + std::to_string(m.rows()) +
                              "-vertex matrix");
    }
    if (!m.allFinite()) {
        throw NumericFailure("matrix has non-finite entries");
    }
}

}  // namespace

Eigenpairs top_eigenpairs(const Matrix& m, Index count, SpectrumOrder order) {
    require_symmetric_input(m, count);
    const Index n = m.rows();
    Eigenpairs out;
    out.values.resize(count);
    out.vectors.resize(n, count);
    if (n == 1) {
        out.values(0) = m(0, 0);
        out.vectors(0, 0) = 1.0;
        return out;
    }
    const Tridiagonal t = tridiagonalize(m);
    const auto ascending = ascending_eigenvalues(t);
    const auto [picks, bottom] = select_positions(ascending, count, order);
    const Index top_first = n - (count - bottom);
    Matrix low;
    Matrix high;
    if (bottom > 0) {
        low = block_eigenvectors(t, 0, bottom - 1);
    }
    if (top_first < n) {
        high = block_eigenvectors(t, top_first, n - 1);
    }
    for (Index j = 0; j < count; ++j) {
        const Index p = picks[static_cast<std::size_t>(j)];
        out.values(j) = ascending[static_cast<std::size_t>(p)];
        if (p < bottom) {
            out.vectors.col(j) = low.col(p);
        } else {
            out.vectors.col(j) = high.col(p - top_first);
        }
    }
    fix_signs(out.vectors);
    return out;
}

Vector top_eigenvalues(const Matrix& m, Index count, SpectrumOrder order) {
    require_symmetric_input(m, count);
    if (m.rows() == 1) {
        return Vector::Constant(1, m(0, 0));
    }
    const auto ascending = ascending_eigenvalues(tridiagonalize(m));
    const auto picks = select_positions(ascending, count, order).picks;
    Vector values(count);
    for (Index j = 0; j < count; ++j) {
        values(j) = ascending[static_cast<std::size_t>(picks[static_cast<std::size_t>(j)])];
    }
    return values;
}

Embedding ase(const Matrix& symmetric, Index d) {
    const Eigenpairs pairs = top_eigenpairs(symmetric, d, SpectrumOrder::Magnitude);
    Embedding out;
    out.method = EmbeddingMethod::ASE;
    out.z = pairs.vectors * pairs.values.cwiseAbs().cwiseSqrt().asDiagonal();
    return out;
}

Embedding ase(const AdjacencyMatrix& a, Index d) { return ase(a.matrix(), d); }

Embedding ase(const ProbMatrix& p, Index d) { return ase(p.matrix(), d); }

ScreeData singular_values(const Matrix& symmetric, Index k) {
    const Vector values = top_eigenvalues(symmetric, k, SpectrumOrder::Magnitude);
    ScreeData out;
    out.values.reserve(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) {
        out.values.push_back(std::abs(values(i)));
    }
    return out;
}

ScreeData singular_values(const AdjacencyMatrix& a, Index k) { return singular_values(a.matrix(), k); }

double elbow_profile_loglik(const std::vector<double>& values, Index q) {
    const auto p = static_cast<Index>(values.size());
    if (q < 1 || q >= p) {
        throw InvalidArgument("elbow split index out of range");
    }
    auto segment_ss = [&](Index begin, Index end) {
        double mean = 0.0;
        for (Index i = begin; i < end; ++i) mean += values[static_cast<std::size_t>(i)];
        mean /= static_cast<double>(end - begin);
        double ss = 0.0;
        for (Index i = begin; i < end; ++i) {
            const double r = values[static_cast<std::size_t>(i)] - mean;
            ss += r * r;
        }
        return ss;
    };
    const double ss = segment_ss(0, q) + segment_ss(q, p);
    if (p <= 2 || ss <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    // Pooled variance with the two estimated means removed.
    const double variance = ss / static_cast<double>(p - 2);
    const double pd = static_cast<double>(p);
    return -0.5 * pd * std::log(2.0 * std::numbers::pi * variance) - ss / (2.0 * variance);
}

Index elbow_dimension(const ScreeData& scree) {
    const auto& values = scree.values;
    if (values.size() < 2) {
        throw InvalidArgument("elbow_dimension needs at least 2 values");
    }
    Index best_q = 1;
    double best = elbow_profile_loglik(values, 1);
    for (Index q = 2; q < static_cast<Index>(values.size()); ++q) {
        const double ll = elbow_profile_loglik(values, q);
        if (ll > best) {
            best = ll;
            best_q = q;
        }
    }
    return best_q;
}

}  // namespace pclique
