#pragma once

#include "vanderkit/errors.hpp"
#include "vanderkit/field.hpp"
#include "vanderkit/matrix.hpp"
#include "vanderkit/spectrum.hpp"

namespace vanderkit {

enum class VanderKind { simple, confluent };

template <scalar_field S>
struct VandermondeMatrix {
    Spectrum<S> spectrum;
    DenseMatrix<S> matrix;
    VanderKind kind;
};

namespace detail {

// Entry at 1-based row j of the k-th column (k = 0..m-1) of a node's block:
// 0 for j <= k, (j-1)!/(j-k-1)! * x^(j-k-1) for j > k. Column k is the k-th
// derivative in x of the plain power column.
template <scalar_field S>
S confluent_entry(const S& x, int row1, int k) {
    if (row1 <= k) return field_traits<S>::zero();
    S coeff = field_traits<S>::factorial(static_cast<unsigned>(row1 - 1)) /
              field_traits<S>::factorial(static_cast<unsigned>(row1 - k - 1));
    return coeff * pow_nonneg(x, static_cast<unsigned>(row1 - k - 1));
}

}  // namespace detail

// N x N matrix with entry (i, j) = x_j^(i-1), 1-based: powers in rows, nodes
// in columns.
template <scalar_field S>
VandermondeMatrix<S> build_vandermonde(const Spectrum<S>& s) {
    if (!s.simple())
        raise(errc::confluent_spectrum, "build_vandermonde requires all multiplicities = 1");
    const int n = s.size();
    DenseMatrix<S> m(n, n);
    for (int j = 0; j < n; ++j) {
        const S& x = s.nodes()[j].value;
        S p = field_traits<S>::one();
        for (int i = 0; i < n; ++i) {
            m.at(i, j) = p;
            if (i + 1 < n) p = p * x;
        }
    }
    return {s, std::move(m), VanderKind::simple};
}

// Confluent construction: a node of multiplicity m contributes m adjacent
// columns, the k-th being the k-th derivative (in the node) of the power
// column. Simple spectra delegate to build_vandermonde bit-for-bit.
template <scalar_field S>
VandermondeMatrix<S> build_confluent(const Spectrum<S>& s) {
    if (s.simple()) return build_vandermonde(s);
    const int n = s.size();
    DenseMatrix<S> m(n, n);
    int col = 0;
    for (const auto& node : s.nodes()) {
        for (int k = 0; k < node.multiplicity; ++k, ++col)
            for (int i = 0; i < n; ++i)
                m.at(i, col) = detail::confluent_entry(node.value, i + 1, k);
    }
    return {s, std::move(m), VanderKind::confluent};
}

// det V = prod over i < j of (x_j - x_i). The product over the non-strict
// range would be identically zero, contradicting nonsingularity, so the
// strict range is the only coherent reading.
template <scalar_field S>
S det_product_formula(const Spectrum<S>& s) {
    if (!s.simple())
        raise(errc::confluent_spectrum,
              "det_product_formula applies to simple spectra only");
    auto nodes = s.nodes();
    S det = field_traits<S>::one();
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            det = det * (nodes[j].value - nodes[i].value);
    return det;
}

}  // namespace vanderkit
