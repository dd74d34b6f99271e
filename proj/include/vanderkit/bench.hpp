#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <random>
#include <vector>

#include "vanderkit/errors.hpp"
#include "vanderkit/factor.hpp"
#include "vanderkit/oracle.hpp"
#include "vanderkit/ops_counter.hpp"

namespace vanderkit::bench {

// Instrumented-op sweep: the structured kernel (D, W, L factor construction)
// against dense Gauss-Jordan inversion. Multiplication counts come from the
// scalar counters, so the O(N^2) / O(N^3) split is measured, not assumed.
struct Case {
    int n = 0;
    std::uint64_t structured_mul = 0;
    std::uint64_t structured_div = 0;
    std::uint64_t dense_mul = 0;
    std::uint64_t dense_div = 0;
    double structured_seconds = 0.0;
    double dense_seconds = 0.0;

    std::uint64_t structured_ops() const { return structured_mul + structured_div; }
    std::uint64_t dense_ops() const { return dense_mul + dense_div; }
};

struct Fit {
    double structured_c2 = 0.0;   // median structured_ops / n^2
    double structured_max_dev = 0.0;  // max relative deviation from the fit
    double dense_c3 = 0.0;        // median dense_ops / n^3
    double dense_max_dev = 0.0;
};

struct Report {
    std::vector<Case> cases;
    Fit fit;
};

namespace detail {

inline Spectrum<F64> equispaced_spectrum(int n) {
    std::vector<F64> xs;
    xs.reserve(n);
    for (int i = 0; i < n; ++i)
        xs.push_back(F64(-1.0 + 2.0 * i / (n - 1)));
    return simple_spectrum<F64>(std::move(xs));
}

inline DenseMatrix<F64> random_matrix(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DenseMatrix<F64> m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = F64(dist(rng));
    return m;
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t k = v.size() / 2;
    return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

}  // namespace detail

inline Report run(int n_min, int n_max) {
    if (n_min < 2 || n_max < n_min)
        raise(errc::index_out_of_range, "bench sweep needs 2 <= min <= max");
    using clock = std::chrono::steady_clock;
    Report report;
    for (int n = n_min; n <= n_max; ++n) {
        Case c;
        c.n = n;

        auto s = detail::equispaced_spectrum(n);
        scalar_ops::reset();
        auto t0 = clock::now();
        auto d = factor_d(s);
        auto w = factor_w(s);
        auto l = factor_l(s);
        auto t1 = clock::now();
        c.structured_mul = scalar_ops::counts().mul;
        c.structured_div = scalar_ops::counts().div;
        c.structured_seconds = std::chrono::duration<double>(t1 - t0).count();
        (void)d; (void)w; (void)l;

        auto m = detail::random_matrix(n, 9000u + static_cast<unsigned>(n));
        scalar_ops::reset();
        auto t2 = clock::now();
        auto inv = oracle::gauss_jordan_invert(m);
        auto t3 = clock::now();
        c.dense_mul = scalar_ops::counts().mul;
        c.dense_div = scalar_ops::counts().div;
        c.dense_seconds = std::chrono::duration<double>(t3 - t2).count();
        (void)inv;

        report.cases.push_back(c);
    }
    scalar_ops::reset();

    std::vector<double> r2, r3;
    for (const auto& c : report.cases) {
        r2.push_back(static_cast<double>(c.structured_ops()) / (double(c.n) * c.n));
        r3.push_back(static_cast<double>(c.dense_ops()) / (double(c.n) * c.n * c.n));
    }
    report.fit.structured_c2 = detail::median(r2);
    report.fit.dense_c3 = detail::median(r3);
    for (std::size_t i = 0; i < report.cases.size(); ++i) {
        report.fit.structured_max_dev =
            std::max(report.fit.structured_max_dev,
                     std::abs(r2[i] - report.fit.structured_c2) / report.fit.structured_c2);
        report.fit.dense_max_dev =
            std::max(report.fit.dense_max_dev,
                     std::abs(r3[i] - report.fit.dense_c3) / report.fit.dense_c3);
    }
    return report;
}

}  // namespace vanderkit::bench
