#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "vanderkit/errors.hpp"
#include "vanderkit/field.hpp"

namespace vanderkit {

// Row-major dense matrix. Everything in this library is square and small;
// triangular factors keep their structural zeros stored (and asserted), not
// compressed.
template <scalar_field S>
class DenseMatrix {
public:
    DenseMatrix() : rows_(0), cols_(0) {}
    DenseMatrix(int rows, int cols)
        : rows_(rows), cols_(cols),
          entries_(static_cast<std::size_t>(rows) * cols, field_traits<S>::zero()) {
        if (rows < 1 || cols < 1)
            raise(errc::dimension_mismatch, "matrix dimensions must be positive");
    }

    static DenseMatrix identity(int n) {
        DenseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = field_traits<S>::one();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    S& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
    const S& at(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }

    const std::vector<S>& entries() const { return entries_; }

    bool operator==(const DenseMatrix&) const = default;

private:
    int rows_, cols_;
    std::vector<S> entries_;
};

template <scalar_field S>
DenseMatrix<S> mat_mul(const DenseMatrix<S>& a, const DenseMatrix<S>& b) {
    if (a.cols() != b.rows())
        raise(errc::dimension_mismatch,
              "mat_mul: " + std::to_string(a.cols()) + " columns vs " +
                  std::to_string(b.rows()) + " rows");
    DenseMatrix<S> c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const S& aik = a.at(i, k);
            if (field_traits<S>::is_zero(aik)) continue;
            for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

// Max-abs entry of a - b, as a double; handy for float assertions.
template <scalar_field S>
double max_abs_diff(const DenseMatrix<S>& a, const DenseMatrix<S>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        raise(errc::dimension_mismatch, "max_abs_diff: shape mismatch");
    double worst = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            worst = std::max(worst,
                             field_traits<S>::to_double((a.at(i, j) - b.at(i, j)).abs()));
    return worst;
}

enum class TriShape { lower, upper, diagonal };

inline const char* tri_shape_name(TriShape s) {
    switch (s) {
        case TriShape::lower: return "lower";
        case TriShape::upper: return "upper";
        case TriShape::diagonal: return "diagonal";
    }
    return "?";
}

// Triangular matrix with a shape tag; the region outside the declared
// triangle must hold exact zeros.
template <scalar_field S>
struct TriangularFactor {
    TriShape shape;
    DenseMatrix<S> m;

    int order() const { return m.rows(); }

    bool structure_holds() const {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                bool structural_zero = (shape == TriShape::lower && j > i) ||
                                       (shape == TriShape::upper && i > j) ||
                                       (shape == TriShape::diagonal && i != j);
                if (structural_zero && !field_traits<S>::is_zero(m.at(i, j))) return false;
            }
        return true;
    }

    bool operator==(const TriangularFactor&) const = default;
};

}  // namespace vanderkit
