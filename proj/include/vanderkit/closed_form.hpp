#pragma once

#include <string>
#include <vector>

#include "vanderkit/factor.hpp"

// Literal closed-form entry rules for the confluent inverse factors, kept
// separate from the LU-derived factors so the two routes can be compared
// entrywise. The acceptance suite runs the comparison over randomized
// spectra and emits a machine-readable agreement report.

namespace vanderkit {

// Closed-form confluent upper factor. With m the first node's multiplicity
// and x the multiplicity-expanded node list (x_1..x_m all equal), the entry
// rules are, 1-based:
//   head block   (i,j <= m):        delta_ij / (i-1)!
//   cross block  (i <= m < j):      -1/(i-1)! * sum_{a=m+1..j}
//                                     prod_{b=i..j, b!=a} 1/(x_a - x_b)
//   tail block   (m < i <= j):      prod_{b=1..j, b!=i} 1/(x_i - x_b)
// Same layout precondition as factor_uc: at most one repeated node, first.
template <scalar_field S>
TriangularFactor<S> closed_form_uc(const Spectrum<S>& s) {
    detail::require_canonical_confluent(s, "closed_form_uc");
    const int n = s.size();
    const int m = s.nodes()[0].multiplicity;
    const std::vector<S> x = s.expanded();
    DenseMatrix<S> u(n, n);
    for (int i = 1; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
            if (i <= m && j <= m) {
                if (i == j)
                    u.at(i - 1, j - 1) = field_traits<S>::one() /
                                         field_traits<S>::factorial(static_cast<unsigned>(i - 1));
            } else if (i <= m) {
                S sum = field_traits<S>::zero();
                for (int a = m + 1; a <= j; ++a) {
                    S den = field_traits<S>::one();
                    for (int b = i; b <= j; ++b)
                        if (b != a) den = den * (x[a - 1] - x[b - 1]);
                    sum += field_traits<S>::one() / den;
                }
                u.at(i - 1, j - 1) =
                    -sum / field_traits<S>::factorial(static_cast<unsigned>(i - 1));
            } else {
                S den = field_traits<S>::one();
                for (int b = 1; b <= j; ++b)
                    if (b != i) den = den * (x[i - 1] - x[b - 1]);
                u.at(i - 1, j - 1) = field_traits<S>::one() / den;
            }
        }
    }
    return {TriShape::upper, std::move(u)};
}

// Closed-form confluent lower factor: the factor_l recurrence on the
// multiplicity-expanded node list.
template <scalar_field S>
TriangularFactor<S> closed_form_lc(const Spectrum<S>& s) {
    detail::require_canonical_confluent(s, "closed_form_lc");
    return {TriShape::lower, detail::unit_lower_from_nodes(s.expanded())};
}

// Entrywise agreement between the closed-form rules and the LU-derived
// factors, bucketed by rule region.
struct ClosedFormAgreement {
    struct Region {
        long entries = 0;
        long mismatches = 0;

        bool agrees() const { return mismatches == 0; }
        void add(const Region& o) {
            entries += o.entries;
            mismatches += o.mismatches;
        }
    };
    Region uc_head_block;
    Region uc_cross_block;
    Region uc_tail_block;
    Region lc_recurrence;
    long spectra = 0;

    void add(const ClosedFormAgreement& o) {
        uc_head_block.add(o.uc_head_block);
        uc_cross_block.add(o.uc_cross_block);
        uc_tail_block.add(o.uc_tail_block);
        lc_recurrence.add(o.lc_recurrence);
        spectra += o.spectra;
    }
};

// Lower-recurrence agreement alone; valid for any confluent layout (the
// recurrence only needs the expanded node list, not the one-repeated-block
// structure the upper rules assume).
template <scalar_field S>
ClosedFormAgreement compare_lower_recurrence(const Spectrum<S>& s, double tol = 0.0) {
    auto c = build_confluent(s);
    auto [lo, up] = detail::lu_unit_lower(c.matrix);
    DenseMatrix<S> lc_lu = detail::invert_unit_lower(lo);
    DenseMatrix<S> lc_cf = detail::unit_lower_from_nodes(s.expanded());
    ClosedFormAgreement r;
    r.spectra = 1;
    for (int i = 0; i < s.size(); ++i)
        for (int j = 0; j <= i; ++j) {
            ++r.lc_recurrence.entries;
            if (!field_traits<S>::approx_equal(lc_cf.at(i, j), lc_lu.at(i, j), tol))
                ++r.lc_recurrence.mismatches;
        }
    return r;
}

// Compares on one spectrum (canonical layout required). Exact comparison in
// the rational semantics is the meaningful one; float inputs compare within
// tol.
template <scalar_field S>
ClosedFormAgreement compare_closed_forms(const Spectrum<S>& s, double tol = 0.0) {
    auto c = build_confluent(s);
    auto [lo, up] = detail::lu_unit_lower(c.matrix);
    DenseMatrix<S> uc_lu = detail::invert_upper(up);
    DenseMatrix<S> lc_lu = detail::invert_unit_lower(lo);
    TriangularFactor<S> uc_cf = closed_form_uc(s);
    TriangularFactor<S> lc_cf = closed_form_lc(s);

    const int n = s.size();
    const int m = s.nodes()[0].multiplicity;
    ClosedFormAgreement r;
    r.spectra = 1;
    auto check = [&](ClosedFormAgreement::Region& region, const S& got, const S& want) {
        ++region.entries;
        if (!field_traits<S>::approx_equal(got, want, tol)) ++region.mismatches;
    };
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            const S& cf = uc_cf.m.at(i - 1, j - 1);
            const S& lu = uc_lu.at(i - 1, j - 1);
            if (i <= m && j <= m)
                check(r.uc_head_block, cf, lu);
            else if (i <= m)
                check(r.uc_cross_block, cf, lu);
            else
                check(r.uc_tail_block, cf, lu);
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            check(r.lc_recurrence, lc_cf.m.at(i, j), lc_lu.at(i, j));
    return r;
}

}  // namespace vanderkit
