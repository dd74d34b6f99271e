#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "vanderkit/errors.hpp"
#include "vanderkit/field.hpp"
#include "vanderkit/matrix.hpp"
#include "vanderkit/spectrum.hpp"
#include "vanderkit/vander.hpp"

namespace vanderkit {

struct FactorOptions {
    // Max-norm of V*inverse - I above which the float path flags the result.
    // Negative means the default 1e-8 * N.
    double residual_warn_tol = -1.0;
};

inline double effective_warn_tol(double override_tol, int n) {
    return override_tol >= 0.0 ? override_tol : 1e-8 * n;
}

// Max-abs entry of m*minv - I.
template <scalar_field S>
S residual(const DenseMatrix<S>& m, const DenseMatrix<S>& minv) {
    if (m.rows() != m.cols() || minv.rows() != minv.cols() || m.rows() != minv.rows())
        raise(errc::dimension_mismatch, "residual: matrices must be square and equal size");
    DenseMatrix<S> prod = mat_mul(m, minv);
    S worst = field_traits<S>::zero();
    for (int i = 0; i < prod.rows(); ++i)
        for (int j = 0; j < prod.cols(); ++j) {
            S diff = prod.at(i, j) - (i == j ? field_traits<S>::one() : field_traits<S>::zero());
            S a = diff.abs();
            if (worst < a) worst = a;
        }
    return worst;
}

namespace detail {

template <scalar_field S>
void require_simple(const Spectrum<S>& s, const char* what) {
    if (!s.simple())
        raise(errc::confluent_spectrum, std::string(what) + " requires a simple spectrum");
}

// Unit lower triangular matrix generated by
//   L[i][j] = L[i-1][j-1] - L[i-1][j] * x[i-1]   (1-based, column 1 included,
//   boundary L[k][0] = 0),
// equivalently L[i][j] = (-1)^(i-j) e_{i-j}(x_1..x_{i-1}): row i holds the
// monomial coefficients of prod_{t<i} (x - x_t).
template <scalar_field S>
DenseMatrix<S> unit_lower_from_nodes(const std::vector<S>& xs) {
    const int n = static_cast<int>(xs.size());
    DenseMatrix<S> l(n, n);
    for (int i = 0; i < n; ++i) l.at(i, i) = field_traits<S>::one();
    for (int r = 1; r < n; ++r)
        for (int c = r - 1; c >= 0; --c) {
            S up_left = c >= 1 ? l.at(r - 1, c - 1) : field_traits<S>::zero();
            l.at(r, c) = up_left - l.at(r - 1, c) * xs[r - 1];
        }
    return l;
}

// Unpivoted LU with unit diagonal on the lower factor. Every leading
// principal submatrix of a (confluent) Vandermonde matrix is itself one, so
// pivots are nonzero in exact arithmetic.
template <scalar_field S>
std::pair<DenseMatrix<S>, DenseMatrix<S>> lu_unit_lower(const DenseMatrix<S>& a) {
    if (a.rows() != a.cols())
        raise(errc::dimension_mismatch, "lu_unit_lower: matrix must be square");
    const int n = a.rows();
    DenseMatrix<S> lo(n, n), up(n, n);
    for (int i = 0; i < n; ++i) lo.at(i, i) = field_traits<S>::one();
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            S sum = a.at(i, j);
            for (int k = 0; k < i; ++k) sum -= lo.at(i, k) * up.at(k, j);
            up.at(i, j) = sum;
        }
        if (field_traits<S>::is_zero(up.at(i, i)))
            raise(errc::singular_matrix, "lu_unit_lower: zero pivot");
        for (int r = i + 1; r < n; ++r) {
            S sum = a.at(r, i);
            for (int k = 0; k < i; ++k) sum -= lo.at(r, k) * up.at(k, i);
            lo.at(r, i) = sum / up.at(i, i);
        }
    }
    return {std::move(lo), std::move(up)};
}

template <scalar_field S>
DenseMatrix<S> invert_unit_lower(const DenseMatrix<S>& lo) {
    const int n = lo.rows();
    DenseMatrix<S> x(n, n);
    for (int i = 0; i < n; ++i) x.at(i, i) = field_traits<S>::one();
    for (int j = 0; j < n; ++j)
        for (int i = j + 1; i < n; ++i) {
            S sum = field_traits<S>::zero();
            for (int k = j; k < i; ++k) sum += lo.at(i, k) * x.at(k, j);
            x.at(i, j) = -sum;
        }
    return x;
}

template <scalar_field S>
DenseMatrix<S> invert_upper(const DenseMatrix<S>& up) {
    const int n = up.rows();
    DenseMatrix<S> x(n, n);
    for (int j = n - 1; j >= 0; --j) {
        if (field_traits<S>::is_zero(up.at(j, j)))
            raise(errc::singular_matrix, "invert_upper: zero diagonal");
        x.at(j, j) = field_traits<S>::one() / up.at(j, j);
        for (int i = j - 1; i >= 0; --i) {
            S sum = field_traits<S>::zero();
            for (int k = i + 1; k <= j; ++k) sum += up.at(i, k) * x.at(k, j);
            x.at(i, j) = -sum / up.at(i, i);
        }
    }
    return x;
}

// Spectrum layout helpers for the confluent path.
template <scalar_field S>
int repeated_node_count(const Spectrum<S>& s) {
    int c = 0;
    for (const auto& node : s.nodes())
        if (node.multiplicity > 1) ++c;
    return c;
}

template <scalar_field S>
void require_canonical_confluent(const Spectrum<S>& s, const char* what) {
    int repeated = repeated_node_count(s);
    if (repeated > 1)
        raise(errc::unsupported_spectrum,
              std::string(what) + ": more than one repeated node; use invert_confluent");
    if (repeated == 1 && s.nodes()[0].multiplicity == 1)
        raise(errc::unsupported_spectrum,
              std::string(what) +
                  ": the repeated node must come first; invert_confluent reorders internally");
}

}  // namespace detail

// Upper factor of the inverse: U[i][j] = prod_{k<=j, k!=i} 1/(x_i - x_k) for
// i <= j. Each row keeps a running denominator so the whole factor costs
// O(N^2) multiplicative ops.
template <scalar_field S>
TriangularFactor<S> factor_u(const Spectrum<S>& s) {
    detail::require_simple(s, "factor_u");
    const int n = s.size();
    auto nodes = s.nodes();
    DenseMatrix<S> u(n, n);
    for (int i = 0; i < n; ++i) {
        S den = field_traits<S>::one();
        for (int k = 0; k < i; ++k) den = den * (nodes[i].value - nodes[k].value);
        u.at(i, i) = field_traits<S>::one() / den;
        for (int j = i + 1; j < n; ++j) {
            den = den * (nodes[i].value - nodes[j].value);
            u.at(i, j) = field_traits<S>::one() / den;
        }
    }
    return {TriShape::upper, std::move(u)};
}

// Diagonal factor: D[i][i] = prod_{k!=i} 1/(x_i - x_k).
template <scalar_field S>
TriangularFactor<S> factor_d(const Spectrum<S>& s) {
    detail::require_simple(s, "factor_d");
    const int n = s.size();
    auto nodes = s.nodes();
    DenseMatrix<S> d(n, n);
    for (int i = 0; i < n; ++i) {
        S den = field_traits<S>::one();
        for (int k = 0; k < n; ++k)
            if (k != i) den = den * (nodes[i].value - nodes[k].value);
        d.at(i, i) = field_traits<S>::one() / den;
    }
    return {TriShape::diagonal, std::move(d)};
}

// Upper factor W[i][j] = prod_{k=j+1..N} (x_i - x_k) for i <= j; the last
// column is all ones (empty product). Filled right to left, one multiply per
// entry.
template <scalar_field S>
TriangularFactor<S> factor_w(const Spectrum<S>& s) {
    detail::require_simple(s, "factor_w");
    const int n = s.size();
    auto nodes = s.nodes();
    DenseMatrix<S> w(n, n);
    for (int i = 0; i < n; ++i) {
        S acc = field_traits<S>::one();
        w.at(i, n - 1) = acc;
        for (int j = n - 2; j >= i; --j) {
            acc = acc * (nodes[i].value - nodes[j + 1].value);
            w.at(i, j) = acc;
        }
    }
    return {TriShape::upper, std::move(w)};
}

// Unit lower factor from the boundary-extended recurrence; see
// unit_lower_from_nodes.
template <scalar_field S>
TriangularFactor<S> factor_l(const Spectrum<S>& s) {
    detail::require_simple(s, "factor_l");
    return {TriShape::lower, detail::unit_lower_from_nodes(s.expanded())};
}

template <scalar_field S>
struct InverseFactorization {
    Spectrum<S> spectrum;
    TriangularFactor<S> d;
    TriangularFactor<S> w;
    TriangularFactor<S> l;
    DenseMatrix<S> inverse;
    // Max-norm of V*inverse - I; exactly zero in the rational semantics.
    double residual_norm = 0.0;
    bool ill_conditioned = false;
};

// V^{-1} = D * W * L.
template <scalar_field S>
InverseFactorization<S> invert_simple(const Spectrum<S>& s, const FactorOptions& opts = {}) {
    detail::require_simple(s, "invert_simple");
    auto d = factor_d(s);
    auto w = factor_w(s);
    auto l = factor_l(s);
    DenseMatrix<S> inverse = mat_mul(mat_mul(d.m, w.m), l.m);
    auto v = build_vandermonde(s);
    double resid = field_traits<S>::to_double(residual(v.matrix, inverse));
    bool ill = !field_traits<S>::exact &&
               resid > effective_warn_tol(opts.residual_warn_tol, s.size());
    return {s, std::move(d), std::move(w), std::move(l), std::move(inverse), resid, ill};
}

// Confluent upper factor, derived by inverting the upper factor of the unit-
// lower LU of C. Requires at most one repeated node, placed first.
template <scalar_field S>
TriangularFactor<S> factor_uc(const Spectrum<S>& s) {
    detail::require_canonical_confluent(s, "factor_uc");
    auto c = build_confluent(s);
    auto [lo, up] = detail::lu_unit_lower(c.matrix);
    return {TriShape::upper, detail::invert_upper(up)};
}

// Confluent lower factor: the same recurrence as factor_l, run on the
// multiplicity-expanded node list.
template <scalar_field S>
TriangularFactor<S> factor_lc(const Spectrum<S>& s) {
    detail::require_canonical_confluent(s, "factor_lc");
    return {TriShape::lower, detail::unit_lower_from_nodes(s.expanded())};
}

template <scalar_field S>
struct ConfluentInverseFactorization {
    Spectrum<S> spectrum;
    // Factors in canonical block order (repeated node first, when one node
    // repeats). column_permutation[j] is the canonical column of caller
    // column j; inverse row j equals row column_permutation[j] of uc*lc.
    TriangularFactor<S> uc;
    TriangularFactor<S> lc;
    std::vector<int> column_permutation;
    DenseMatrix<S> inverse;  // inverse of C in the caller's column order
    double residual_norm = 0.0;
    bool ill_conditioned = false;
};

// C^{-1} via the triangular factors. Single-repeated-node spectra reorder to
// canonical block order internally and un-permute the result; everything
// else (simple, or several repeated nodes) goes through LU on C as given.
template <scalar_field S>
ConfluentInverseFactorization<S> invert_confluent(const Spectrum<S>& s,
                                                  const FactorOptions& opts = {}) {
    const int n = s.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    TriangularFactor<S> uc{TriShape::upper, DenseMatrix<S>(n, n)};
    TriangularFactor<S> lc{TriShape::lower, DenseMatrix<S>(n, n)};
    DenseMatrix<S> inverse(n, n);

    int rep_index = -1;
    if (detail::repeated_node_count(s) == 1) {
        for (std::size_t i = 0; i < s.nodes().size(); ++i)
            if (s.nodes()[i].multiplicity > 1) rep_index = static_cast<int>(i);
    }

    if (rep_index >= 0) {
        std::vector<int> node_order;
        node_order.push_back(rep_index);
        for (int i = 0; i < static_cast<int>(s.nodes().size()); ++i)
            if (i != rep_index) node_order.push_back(i);

        // Column map: caller column j of C lands at canonical column perm[j].
        std::vector<int> node_start(s.nodes().size());
        {
            int off = 0;
            for (int i : node_order) {
                node_start[i] = off;
                off += s.nodes()[i].multiplicity;
            }
        }
        {
            int col = 0;
            for (std::size_t i = 0; i < s.nodes().size(); ++i)
                for (int k = 0; k < s.nodes()[i].multiplicity; ++k, ++col)
                    perm[col] = node_start[i] + k;
        }

        std::vector<SpectrumNode<S>> reordered;
        reordered.reserve(s.nodes().size());
        for (int i : node_order) reordered.push_back(s.nodes()[i]);
        Spectrum<S> canonical = s.with_node_order(std::move(reordered));

        uc = factor_uc(canonical);
        lc = factor_lc(canonical);
        DenseMatrix<S> canonical_inverse = mat_mul(uc.m, lc.m);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) inverse.at(j, k) = canonical_inverse.at(perm[j], k);
    } else {
        auto c = build_confluent(s);
        auto [lo, up] = detail::lu_unit_lower(c.matrix);
        uc = {TriShape::upper, detail::invert_upper(up)};
        lc = {TriShape::lower, detail::invert_unit_lower(lo)};
        inverse = mat_mul(uc.m, lc.m);
    }

    auto c = build_confluent(s);
    double resid = field_traits<S>::to_double(residual(c.matrix, inverse));
    bool ill = !field_traits<S>::exact &&
               resid > effective_warn_tol(opts.residual_warn_tol, n);
    return {s,        std::move(uc), std::move(lc), std::move(perm),
            std::move(inverse), resid,        ill};
}

}  // namespace vanderkit
