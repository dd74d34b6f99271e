#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "vanderkit/errors.hpp"
#include "vanderkit/field.hpp"
#include "vanderkit/matrix.hpp"

// Brute-force ground truth, kept independent of the structured factorization
// code on purpose: it shares only the core scalar/matrix types.

namespace vanderkit::oracle {

namespace detail {

// Pivot choice: any nonzero row suffices in exact arithmetic; floats take the
// largest magnitude.
template <scalar_field S>
int pick_pivot(const DenseMatrix<S>& m, int col, int from_row) {
    if constexpr (field_traits<S>::exact) {
        for (int r = from_row; r < m.rows(); ++r)
            if (!field_traits<S>::is_zero(m.at(r, col))) return r;
        return -1;
    } else {
        int best = -1;
        double best_abs = 0.0;
        for (int r = from_row; r < m.rows(); ++r) {
            double a = field_traits<S>::to_double(m.at(r, col).abs());
            if (a > best_abs) {
                best_abs = a;
                best = r;
            }
        }
        return best;
    }
}

template <scalar_field S>
void swap_rows(DenseMatrix<S>& m, int a, int b) {
    if (a == b) return;
    for (int j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

}  // namespace detail

// Gauss-Jordan elimination on the augmented [m | I]. Exact in the rational
// semantics; partial pivoting by magnitude in floats.
template <scalar_field S>
DenseMatrix<S> gauss_jordan_invert(const DenseMatrix<S>& m) {
    if (m.rows() != m.cols())
        raise(errc::dimension_mismatch, "gauss_jordan_invert: matrix must be square");
    const int n = m.rows();
    DenseMatrix<S> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = field_traits<S>::one();
    }
    for (int col = 0; col < n; ++col) {
        int p = detail::pick_pivot(aug, col, col);
        if (p < 0 || field_traits<S>::is_zero(aug.at(p, col)))
            raise(errc::singular_matrix, "gauss_jordan_invert: no nonzero pivot");
        detail::swap_rows(aug, p, col);
        const S pivot = aug.at(col, col);
        for (int j = 0; j < 2 * n; ++j) aug.at(col, j) = aug.at(col, j) / pivot;
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const S factor = aug.at(r, col);
            for (int j = 0; j < 2 * n; ++j)
                aug.at(r, j) = aug.at(r, j) - factor * aug.at(col, j);
        }
    }
    DenseMatrix<S> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

// Signed pivot-product determinant from one elimination sweep.
template <scalar_field S>
S gauss_jordan_det(const DenseMatrix<S>& m) {
    if (m.rows() != m.cols())
        raise(errc::dimension_mismatch, "gauss_jordan_det: matrix must be square");
    const int n = m.rows();
    DenseMatrix<S> work = m;
    S det = field_traits<S>::one();
    for (int col = 0; col < n; ++col) {
        int p = detail::pick_pivot(work, col, col);
        if (p < 0 || field_traits<S>::is_zero(work.at(p, col)))
            return field_traits<S>::zero();
        if (p != col) {
            detail::swap_rows(work, p, col);
            det = -det;
        }
        const S pivot = work.at(col, col);
        det = det * pivot;
        for (int r = col + 1; r < n; ++r) {
            const S factor = work.at(r, col) / pivot;
            for (int j = col; j < n; ++j)
                work.at(r, j) = work.at(r, j) - factor * work.at(col, j);
        }
    }
    return det;
}

// Laplace expansion along the first row. Exponential cost; callers keep
// N <= 8.
template <scalar_field S>
S cofactor_det(const DenseMatrix<S>& m) {
    if (m.rows() != m.cols())
        raise(errc::dimension_mismatch, "cofactor_det: matrix must be square");
    const int n = m.rows();
    if (n == 1) return m.at(0, 0);
    S det = field_traits<S>::zero();
    for (int j = 0; j < n; ++j) {
        if (field_traits<S>::is_zero(m.at(0, j))) continue;
        DenseMatrix<S> minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        }
        S term = m.at(0, j) * cofactor_det(minor);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

// Truncated power series sum_{k=0}^{terms-1} A^k / k!.
template <scalar_field S>
DenseMatrix<S> series_exp(const DenseMatrix<S>& a, int terms) {
    if (a.rows() != a.cols())
        raise(errc::dimension_mismatch, "series_exp: matrix must be square");
    if (terms < 1) raise(errc::index_out_of_range, "series_exp: terms must be >= 1");
    DenseMatrix<S> sum = DenseMatrix<S>::identity(a.rows());
    DenseMatrix<S> term = DenseMatrix<S>::identity(a.rows());
    for (int k = 1; k < terms; ++k) {
        term = mat_mul(term, a);
        const S kk = field_traits<S>::from_int(k);
        for (int i = 0; i < term.rows(); ++i)
            for (int j = 0; j < term.cols(); ++j) term.at(i, j) = term.at(i, j) / kk;
        for (int i = 0; i < sum.rows(); ++i)
            for (int j = 0; j < sum.cols(); ++j) sum.at(i, j) += term.at(i, j);
    }
    return sum;
}

// e_r(vals) by the standard O(n*r) prefix recurrence.
template <scalar_field S>
S elementary_symmetric(const std::vector<S>& vals, int r) {
    if (r < 0 || r > static_cast<int>(vals.size()))
        raise(errc::index_out_of_range,
              "elementary_symmetric: order outside [0, n]");
    std::vector<S> e(static_cast<std::size_t>(r) + 1, field_traits<S>::zero());
    e[0] = field_traits<S>::one();
    int seen = 0;
    for (const S& v : vals) {
        ++seen;
        for (int j = std::min(r, seen); j >= 1; --j) e[j] += v * e[j - 1];
    }
    return e[r];
}

}  // namespace vanderkit::oracle
