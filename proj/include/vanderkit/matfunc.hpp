#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "vanderkit/errors.hpp"
#include "vanderkit/factor.hpp"
#include "vanderkit/field.hpp"
#include "vanderkit/matrix.hpp"
#include "vanderkit/spectrum.hpp"

namespace vanderkit {

// Per-node function value and derivatives up to multiplicity-1, flattened in
// block order; the right-hand side of the Hermite interpolation system.
template <scalar_field S>
struct HermiteData {
    Spectrum<S> spectrum;
    std::vector<S> values;
};

// Coefficients of p(x) = sum c[k] x^k, low degree first.
template <scalar_field S>
struct PolynomialCoefficients {
    std::vector<S> c;

    bool operator==(const PolynomialCoefficients&) const = default;
};

// Solves C^T c = values: row r of C^T applied to the coefficient vector
// reproduces p or its derivatives at the nodes, so c = (C^{-1})^T * values.
template <scalar_field S>
PolynomialCoefficients<S> hermite_coefficients(const HermiteData<S>& h) {
    const int n = h.spectrum.size();
    if (static_cast<int>(h.values.size()) != n)
        raise(errc::dimension_mismatch,
              "hermite_coefficients: expected " + std::to_string(n) + " values, got " +
                  std::to_string(h.values.size()));
    DenseMatrix<S> inv = invert_confluent(h.spectrum).inverse;
    std::vector<S> c(static_cast<std::size_t>(n), field_traits<S>::zero());
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < n; ++r) c[i] += inv.at(r, i) * h.values[r];
    return {std::move(c)};
}

// Horner evaluation of p(A); degree-many matrix multiplications.
template <scalar_field S>
DenseMatrix<S> apply_polynomial(const PolynomialCoefficients<S>& p, const DenseMatrix<S>& a) {
    if (a.rows() != a.cols())
        raise(errc::dimension_mismatch, "apply_polynomial: matrix must be square");
    const int n = a.rows();
    DenseMatrix<S> result(n, n);
    if (p.c.empty()) return result;
    for (int i = 0; i < n; ++i) result.at(i, i) = p.c.back();
    for (int k = static_cast<int>(p.c.size()) - 2; k >= 0; --k) {
        result = mat_mul(result, a);
        for (int i = 0; i < n; ++i) result.at(i, i) += p.c[k];
    }
    return result;
}

enum class MatrixFunction { exp, log };

struct MatfuncOptions {
    // Gross-mismatch guard comparing det(A) against the spectrum's eigenvalue
    // product; applies only when the multiplicities sum to dim(A).
    double det_check_tol = 1e-6;
};

namespace detail {

inline double float_det(const DenseMatrix<F64>& m) {
    const int n = m.rows();
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j).v;
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int p = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[p][col])) p = r;
        if (a[p][col] == 0.0) return 0.0;
        if (p != col) {
            std::swap(a[p], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            for (int j = col; j < n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return det;
}

// f and its derivatives at x, orders 0..count-1. exp is its own derivative;
// d^r/dx^r log x = (-1)^(r-1) (r-1)! / x^r for r >= 1.
inline void append_derivatives(MatrixFunction f, double x, int count,
                               std::vector<F64>& out) {
    if (f == MatrixFunction::exp) {
        double e = std::exp(x);
        for (int r = 0; r < count; ++r) out.push_back(F64(e));
        return;
    }
    out.push_back(F64(std::log(x)));
    double num = 1.0;  // (r-1)! with alternating sign
    double xp = x;
    for (int r = 1; r < count; ++r) {
        out.push_back(F64(num / xp));
        num *= -static_cast<double>(r);
        xp *= x;
    }
}

}  // namespace detail

// Interpolation data for exp or log on a spectrum: per node, the function
// value and derivatives up to multiplicity-1, from the closed-form tables.
// log requires strictly positive nodes.
inline HermiteData<F64> hermite_data_for(MatrixFunction f, const Spectrum<F64>& s) {
    if (f == MatrixFunction::log) {
        for (const auto& node : s.nodes())
            if (node.value.v <= 0.0)
                raise(errc::nonpositive_eigenvalue,
                      "log requires strictly positive eigenvalues");
    }
    HermiteData<F64> h{s, {}};
    h.values.reserve(s.size());
    for (const auto& node : s.nodes())
        detail::append_derivatives(f, node.value.v, node.multiplicity, h.values);
    return h;
}

// f(A) = p(A) with p the Hermite interpolant of f on the supplied spectrum.
// The caller owns the spectrum (multiplicity at least the largest Jordan
// block per eigenvalue; algebraic multiplicity always suffices). Float
// semantics only: the interpolation data are transcendental.
inline DenseMatrix<F64> matrix_function(const DenseMatrix<F64>& a, const Spectrum<F64>& s,
                                        MatrixFunction f, const MatfuncOptions& opts = {}) {
    if (a.rows() != a.cols())
        raise(errc::dimension_mismatch, "matrix_function: matrix must be square");

    HermiteData<F64> h = hermite_data_for(f, s);

    if (s.size() == a.rows()) {
        double prod = 1.0;
        for (const auto& node : s.nodes())
            prod *= std::pow(node.value.v, node.multiplicity);
        double det = detail::float_det(a);
        double scale = std::max({1.0, std::fabs(det), std::fabs(prod)});
        if (std::fabs(det - prod) > opts.det_check_tol * scale)
            raise(errc::spectrum_mismatch,
                  "matrix_function: det(A) = " + std::to_string(det) +
                      " does not match the eigenvalue product " + std::to_string(prod));
    }

    return apply_polynomial(hermite_coefficients(h), a);
}

}  // namespace vanderkit
