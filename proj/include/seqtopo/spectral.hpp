#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "seqtopo/errors.hpp"
#include "seqtopo/filtration.hpp"
#include "seqtopo/linalg.hpp"

namespace seqtopo {

struct LaplacianMatrix {
    Eigen::MatrixXd m;
    int dim = 0;
    Rational a, b;  // window (a == b for the combinatorial case)
};

struct SpectrumResult {
    std::vector<double> eigenvalues;  // ascending
    long zero_count = 0;
    double spectral_gap = 0.0;  // smallest positive eigenvalue, 0 when none
};

struct SpectralGapCurve {
    int dim = 0;
    std::vector<Rational> grid;
    std::vector<double> values;
};

namespace detail {

/// Dense double boundary of grade n restricted to a prefix.
inline Eigen::MatrixXd prefix_boundary_matrix(const FilteredComplex& F, int n, std::size_t prefix) {
    std::vector<std::int64_t> row_of(F.cells.size(), -1);
    std::size_t rows = 0, cols = 0;
    for (std::size_t i = 0; i < prefix; ++i) {
        if (F.cells[i].dim == n - 1) row_of[i] = static_cast<std::int64_t>(rows++);
        if (F.cells[i].dim == n) ++cols;
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows),
                                              static_cast<Eigen::Index>(cols));
    std::size_t j = 0;
    for (std::size_t i = 0; i < prefix; ++i) {
        if (F.cells[i].dim != n) continue;
        for (const auto& [fi, coeff] : F.cells[i].boundary)
            m(row_of[fi], static_cast<Eigen::Index>(j)) += coeff;
        ++j;
    }
    return m;
}

/// Modified Gram-Schmidt with column pivoting; returns an orthonormal basis
/// of the column span.
inline Eigen::MatrixXd mgs_orthonormalize(Eigen::MatrixXd k) {
    const Eigen::Index rows = k.rows(), cols = k.cols();
    Eigen::MatrixXd q(rows, cols);
    Eigen::Index kept = 0;
    std::vector<bool> used(static_cast<std::size_t>(cols), false);
    for (Eigen::Index step = 0; step < cols; ++step) {
        Eigen::Index best = -1;
        double best_norm = 0.0;
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (used[static_cast<std::size_t>(c)]) continue;
            const double nn = k.col(c).norm();
            if (nn > best_norm) {
                best_norm = nn;
                best = c;
            }
        }
        if (best < 0 || best_norm < 1e-12) break;
        used[static_cast<std::size_t>(best)] = true;
        q.col(kept) = k.col(best) / best_norm;
        for (Eigen::Index c = 0; c < cols; ++c)
            if (!used[static_cast<std::size_t>(c)])
                k.col(c) -= q.col(kept) * q.col(kept).dot(k.col(c));
        ++kept;
    }
    return q.leftCols(kept);
}

}  // namespace detail

/// Combinatorial Laplacian of the complex at native parameter a, on the
/// canonical orthonormal cell basis: B_n^T B_n + B_{n+1} B_{n+1}^T, with the
/// down term absent at n = 0.
inline LaplacianMatrix combinatorial_laplacian(const FilteredComplex& F, int n, const Rational& a) {
    if (n < 0) throw ConfigError("laplacian dimension must be >= 0");
    const std::size_t p = F.prefix_size(a);
    const std::size_t cn = F.count_dim(n, p);
    LaplacianMatrix out;
    out.dim = n;
    out.a = a;
    out.b = a;
    out.m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cn), static_cast<Eigen::Index>(cn));
    if (cn == 0) return out;
    if (n >= 1 && F.count_dim(n - 1, p) > 0) {
        Eigen::MatrixXd bn = detail::prefix_boundary_matrix(F, n, p);
        out.m += bn.transpose() * bn;
    }
    if (F.count_dim(n + 1, p) > 0) {
        Eigen::MatrixXd bn1 = detail::prefix_boundary_matrix(F, n + 1, p);
        out.m += bn1 * bn1.transpose();
    }
    return out;
}

/// Exact rational kernel basis of the outside-row block of the grade-(n+1)
/// boundary at b: spans the (n+1)-chains at b whose boundary stays inside the
/// complex at a. Also returns the inside-row block as doubles.
struct PersistentUpParts {
    std::vector<std::vector<Rational>> kernel_basis;  // each of length = #(n+1)-cells at b
    Eigen::MatrixXd inside_rows;                      // (#n-cells at a) x (#(n+1)-cells at b)
};

inline PersistentUpParts persistent_up_parts(const FilteredComplex& F, int n, const Rational& a,
                                             const Rational& b) {
    const bool ok = F.decreasing ? (a >= b) : (a <= b);
    if (!ok) throw ConfigError("persistent laplacian: window must satisfy a <= b in filtration order");
    const std::size_t pa = F.prefix_size(a), pb = F.prefix_size(b);

    std::vector<std::int64_t> row_at_b(F.cells.size(), -1);
    std::size_t rows_b = 0, rows_a = 0, cols_b = 0;
    for (std::size_t i = 0; i < pb; ++i) {
        if (F.cells[i].dim == n) {
            row_at_b[i] = static_cast<std::int64_t>(rows_b++);
            if (i < pa) ++rows_a;
        }
        if (F.cells[i].dim == n + 1) ++cols_b;
    }
    // n-cells at a come first among n-cells at b (prefix ordering), so the
    // row split is a leading/trailing block split.
    FieldMatrix<Rational> outside(rows_b - rows_a,
                                  std::vector<Rational>(cols_b, Rational(0)));
    Eigen::MatrixXd inside = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows_a),
                                                   static_cast<Eigen::Index>(cols_b));
    std::size_t j = 0;
    for (std::size_t i = 0; i < pb; ++i) {
        if (F.cells[i].dim != n + 1) continue;
        for (const auto& [fi, coeff] : F.cells[i].boundary) {
            const std::size_t r = static_cast<std::size_t>(row_at_b[fi]);
            if (r < rows_a)
                inside(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) += coeff;
            else
                outside[r - rows_a][j] += Rational(coeff);
        }
        ++j;
    }
    PersistentUpParts parts;
    parts.inside_rows = std::move(inside);
    if (rows_b == rows_a) {
        // no outside rows: kernel is the full space
        for (std::size_t c = 0; c < cols_b; ++c) {
            std::vector<Rational> e(cols_b, Rational(0));
            e[c] = Rational(1);
            parts.kernel_basis.push_back(std::move(e));
        }
    } else {
        parts.kernel_basis = field_nullspace(std::move(outside), cols_b);
    }
    return parts;
}

/// Persistent Laplacian: up term from an orthonormal basis of the exact
/// kernel above, down term from the grade-n boundary at a. Collapses to the
/// combinatorial Laplacian when a == b.
inline LaplacianMatrix persistent_laplacian(const FilteredComplex& F, int n, const Rational& a,
                                            const Rational& b) {
    const std::size_t pa = F.prefix_size(a);
    const std::size_t cn = F.count_dim(n, pa);
    LaplacianMatrix out;
    out.dim = n;
    out.a = a;
    out.b = b;
    out.m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cn), static_cast<Eigen::Index>(cn));
    if (cn == 0) return out;

    PersistentUpParts parts = persistent_up_parts(F, n, a, b);
    if (!parts.kernel_basis.empty()) {
        Eigen::MatrixXd k(static_cast<Eigen::Index>(parts.kernel_basis[0].size()),
                          static_cast<Eigen::Index>(parts.kernel_basis.size()));
        for (std::size_t c = 0; c < parts.kernel_basis.size(); ++c)
            for (std::size_t r = 0; r < parts.kernel_basis[c].size(); ++r)
                k(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    to_double(parts.kernel_basis[c][r]);
        Eigen::MatrixXd z = detail::mgs_orthonormalize(std::move(k));
        Eigen::MatrixXd dz = parts.inside_rows * z;
        out.m += dz * dz.transpose();
    }
    if (n >= 1 && F.count_dim(n - 1, pa) > 0) {
        Eigen::MatrixXd bn = detail::prefix_boundary_matrix(F, n, pa);
        out.m += bn.transpose() * bn;
    }
    return out;
}

/// Full symmetric eigendecomposition with tolerance-thresholded zero
/// classification. Eigenvalues below -tol*scale indicate an assembly bug.
inline SpectrumResult spectrum(const LaplacianMatrix& L, double tol = 1e-9) {
    const Eigen::MatrixXd& m = L.m;
    SpectrumResult out;
    if (m.rows() == 0) return out;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InternalError("laplacian matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw InternalError("eigendecomposition failed");
    const auto& ev = es.eigenvalues();
    const double lmax = std::max(0.0, ev(ev.size() - 1));
    const double thr = tol * std::max(1.0, lmax);
    out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    for (double x : out.eigenvalues) {
        if (x < -thr) throw InternalError("negative laplacian eigenvalue: " + std::to_string(x));
        if (x < thr) ++out.zero_count;
        else if (out.spectral_gap == 0.0) out.spectral_gap = x;
    }
    return out;
}

/// lambda(t): smallest positive eigenvalue of the dimension-n Laplacian at
/// each grid value; 0 where the grade is empty or fully harmonic.
inline SpectralGapCurve spectral_gap_curve(const FilteredComplex& F, int n,
                                           const std::vector<Rational>& grid, double tol = 1e-9) {
    SpectralGapCurve c;
    c.dim = n;
    c.grid = grid;
    c.values.reserve(grid.size());
    for (const auto& t : grid)
        c.values.push_back(spectrum(combinatorial_laplacian(F, n, t), tol).spectral_gap);
    return c;
}

}  // namespace seqtopo
