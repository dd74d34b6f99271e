#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "vanderkit/closed_form.hpp"
#include "vanderkit/factor.hpp"
#include "vanderkit/oracle.hpp"
#include "vanderkit/vander.hpp"

using namespace vanderkit;

namespace {

Rational rat(long long n, long long d = 1) { return Rational(n, d); }

Spectrum<Rational> simple(std::initializer_list<long long> xs) {
    std::vector<Rational> v;
    for (auto x : xs) v.push_back(rat(x));
    return simple_spectrum<Rational>(std::move(v));
}

DenseMatrix<Rational> mat(int n, std::initializer_list<long long> nums,
                          std::initializer_list<long long> dens = {}) {
    DenseMatrix<Rational> m(n, n);
    auto it = nums.begin();
    auto dt = dens.begin();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long long d = dens.size() ? *dt++ : 1;
            m.at(i, j) = Rational(*it++, d);
        }
    return m;
}

std::vector<long long> distinct_ints(std::mt19937& rng, int count, long long lo, long long hi) {
    std::uniform_int_distribution<long long> dist(lo, hi);
    std::set<long long> seen;
    while (static_cast<int>(seen.size()) < count) seen.insert(dist(rng));
    std::vector<long long> vals(seen.begin(), seen.end());
    std::shuffle(vals.begin(), vals.end(), rng);
    return vals;
}

Spectrum<Rational> random_simple(std::mt19937& rng, int n) {
    std::vector<Rational> xs;
    for (auto v : distinct_ints(rng, n, -10, 10)) xs.push_back(rat(v));
    return simple_spectrum<Rational>(std::move(xs));
}

// One repeated node (mult 2..4) somewhere in the order, the rest simple.
Spectrum<Rational> random_one_repeat(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> mult_dist(2, std::min(4, n));
    int mult = mult_dist(rng);
    int singles = n - mult;
    auto vals = distinct_ints(rng, singles + 1, -10, 10);
    std::uniform_int_distribution<int> pos_dist(0, singles);
    int pos = pos_dist(rng);
    std::vector<SpectrumNode<Rational>> nodes;
    int v = 0;
    for (int i = 0; i <= singles; ++i) {
        nodes.push_back({rat(vals[v++]), i == pos ? mult : 1});
    }
    return Spectrum<Rational>::validate(std::move(nodes));
}

Spectrum<Rational> random_two_repeats(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> m1_dist(2, n - 2);
    int m1 = m1_dist(rng);
    std::uniform_int_distribution<int> m2_dist(2, n - m1);
    int m2 = m2_dist(rng);
    int singles = n - m1 - m2;
    auto vals = distinct_ints(rng, singles + 2, -10, 10);
    std::vector<SpectrumNode<Rational>> nodes;
    nodes.push_back({rat(vals[0]), m1});
    nodes.push_back({rat(vals[1]), m2});
    for (int i = 0; i < singles; ++i) nodes.push_back({rat(vals[2 + i]), 1});
    std::shuffle(nodes.begin(), nodes.end(), rng);
    return Spectrum<Rational>::validate(std::move(nodes));
}

}  // namespace

TEST_CASE("factor_u frozen examples") {
    CHECK(factor_u(simple({1, 2, 3})).m ==
          mat(3, {1, -1, 1, 0, 1, -1, 0, 0, 1}, {1, 1, 2, 1, 1, 1, 1, 1, 2}));
    CHECK(factor_u(simple({4})).m == mat(1, {1}));
    CHECK(factor_u(simple({0, 1})).m == mat(2, {1, -1, 0, 1}));
    CHECK(factor_u(simple({1, 2, 3})).structure_holds());
    auto confluent = Spectrum<Rational>::validate({{rat(1), 2}});
    CHECK_THROWS_AS(factor_u(confluent), Error);
}

TEST_CASE("factor_d frozen examples") {
    CHECK(factor_d(simple({1, 2, 3})).m ==
          mat(3, {1, 0, 0, 0, -1, 0, 0, 0, 1}, {2, 1, 1, 1, 1, 1, 1, 1, 2}));
    CHECK(factor_d(simple({5})).m == mat(1, {1}));
    CHECK(factor_d(simple({0, 1})).m == mat(2, {-1, 0, 0, 1}));
    CHECK(factor_d(simple({1, 2, 3})).shape == TriShape::diagonal);
    CHECK(factor_d(simple({1, 2, 3})).structure_holds());
}

TEST_CASE("factor_w frozen examples") {
    CHECK(factor_w(simple({1, 2, 3})).m == mat(3, {2, -2, 1, 0, -1, 1, 0, 0, 1}));
    CHECK(factor_w(simple({8})).m == mat(1, {1}));
    CHECK(factor_w(simple({0, 1})).m == mat(2, {-1, 1, 0, 1}));
}

TEST_CASE("last column of W is all ones") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        auto s = random_simple(rng, 2 + trial % 6);
        auto w = factor_w(s);
        for (int i = 0; i < s.size(); ++i)
            CHECK(w.m.at(i, s.size() - 1) == rat(1));
        CHECK(w.structure_holds());
    }
}

TEST_CASE("factor_l frozen examples") {
    CHECK(factor_l(simple({1, 2, 3})).m == mat(3, {1, 0, 0, -1, 1, 0, 2, -3, 1}));
    CHECK(factor_l(simple({0, 1})).m == mat(2, {1, 0, 0, 1}));
    // symbolic 2x2: L = [[1,0],[-x1,1]]
    std::mt19937 rng(31);
    std::uniform_int_distribution<long long> node(-9, 9);
    for (int trial = 0; trial < 10; ++trial) {
        long long x1 = node(rng), x2 = node(rng);
        while (x2 == x1) x2 = node(rng);
        auto l = factor_l(simple({x1, x2}));
        CHECK(l.m.at(1, 0) == rat(-x1));
        CHECK(l.m.at(0, 0) == rat(1));
        CHECK(l.m.at(1, 1) == rat(1));
    }
}

TEST_CASE("L entries are signed elementary symmetric polynomials") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = random_simple(rng, 2 + trial % 7);
        auto l = factor_l(s);
        auto xs = s.expanded();
        for (int i = 0; i < s.size(); ++i)
            for (int j = 0; j <= i; ++j) {
                std::vector<Rational> prefix(xs.begin(), xs.begin() + i);
                Rational expect = oracle::elementary_symmetric(prefix, i - j);
                if ((i - j) % 2 == 1) expect = -expect;
                CHECK(l.m.at(i, j) == expect);
            }
    }
}

TEST_CASE("factor consistency: D*W = U exactly") {
    std::mt19937 rng(51);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = random_simple(rng, 1 + trial % 8);
        CHECK(mat_mul(factor_d(s).m, factor_w(s).m) == factor_u(s).m);
    }
}

TEST_CASE("invert_simple frozen examples") {
    auto f = invert_simple(simple({1, 2, 3}));
    CHECK(f.inverse == mat(3, {3, -5, 1, -3, 4, -1, 1, -3, 1},
                           {1, 2, 2, 1, 1, 1, 1, 2, 2}));
    CHECK(f.residual_norm == 0.0);
    CHECK_FALSE(f.ill_conditioned);
    CHECK(invert_simple(simple({6})).inverse == mat(1, {1}));
    CHECK(invert_simple(simple({0, 1})).inverse == mat(2, {1, -1, 0, 1}));
}

TEST_CASE("invert_simple equals the elimination oracle exactly") {
    std::mt19937 rng(61);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + trial % 7;
        auto s = random_simple(rng, n);
        auto f = invert_simple(s);
        auto v = build_vandermonde(s);
        CHECK(mat_mul(v.matrix, f.inverse) == DenseMatrix<Rational>::identity(n));
        CHECK(f.inverse == oracle::gauss_jordan_invert(v.matrix));
        CHECK(f.d.structure_holds());
        CHECK(f.w.structure_holds());
        CHECK(f.l.structure_holds());
    }
}

TEST_CASE("scaling law: nodes c*x scale inverse columns by c^(1-j)") {
    std::mt19937 rng(71);
    std::vector<Rational> scales{rat(3), rat(-2), rat(1, 2)};
    for (int trial = 0; trial < 15; ++trial) {
        int n = 2 + trial % 5;
        auto s = random_simple(rng, n);
        const Rational c = scales[trial % scales.size()];
        std::vector<Rational> scaled;
        for (const auto& node : s.nodes()) scaled.push_back(node.value * c);
        auto s2 = simple_spectrum<Rational>(std::move(scaled));
        auto inv = invert_simple(s).inverse;
        auto inv2 = invert_simple(s2).inverse;
        for (int i = 0; i < n; ++i) {
            Rational factor = rat(1);
            for (int j = 0; j < n; ++j) {
                CHECK(inv2.at(i, j) * factor == inv.at(i, j));
                factor = factor * c;
            }
        }
    }
}

TEST_CASE("residual operation") {
    auto eye = DenseMatrix<Rational>::identity(3);
    CHECK(residual(eye, eye) == rat(0));

    auto s = simple({1, 2, 3});
    auto v = build_vandermonde(s);
    auto inv = invert_simple(s).inverse;
    CHECK(residual(v.matrix, inv) == rat(0));

    auto perturbed = inv;
    perturbed.at(1, 1) += rat(1, 1000);
    // V * E has column norms >= 1 here, so the residual sees the bump
    CHECK(residual(v.matrix, perturbed) >= rat(1, 1000));

    DenseMatrix<Rational> wide(2, 2);
    DenseMatrix<Rational> big(3, 3);
    CHECK_THROWS_AS(residual(wide, big), Error);
}

TEST_CASE("factor_uc frozen examples") {
    // {(1,2),(2,1)}: uc*lc must reproduce the elimination-oracle inverse
    auto s = Spectrum<Rational>::validate({{rat(1), 2}, {rat(2), 1}});
    auto uc = factor_uc(s);
    auto lc = factor_lc(s);
    CHECK(uc.structure_holds());
    CHECK(lc.structure_holds());
    auto expect = mat(3, {0, 2, -1, -2, 3, -1, 1, -2, 1});
    CHECK(mat_mul(uc.m, lc.m) == expect);
    CHECK(oracle::gauss_jordan_invert(build_confluent(s).matrix) == expect);

    // {(0,2)}: C = I2, factors trivial, (U_c)_{2,2} = 1/1! = 1
    auto s2 = Spectrum<Rational>::validate({{rat(0), 2}});
    CHECK(factor_uc(s2).m == DenseMatrix<Rational>::identity(2));
    CHECK(factor_uc(s2).m.at(1, 1) == rat(1));

    // {(0,3)}: inverse = diag(1,1,1/2), (U_c)_{3,3} = 1/2! = 1/2
    auto s3 = Spectrum<Rational>::validate({{rat(0), 3}});
    auto uc3 = factor_uc(s3);
    CHECK(uc3.m.at(2, 2) == rat(1, 2));
    auto inv3 = mat_mul(uc3.m, factor_lc(s3).m);
    CHECK(inv3 == mat(3, {1, 0, 0, 0, 1, 0, 0, 0, 1}, {1, 1, 1, 1, 1, 1, 1, 1, 2}));
}

TEST_CASE("factor_lc frozen examples") {
    auto s = Spectrum<Rational>::validate({{rat(1), 2}, {rat(2), 1}});
    CHECK(factor_lc(s).m == mat(3, {1, 0, 0, -1, 1, 0, 1, -2, 1}));

    auto s2 = Spectrum<Rational>::validate({{rat(0), 2}});
    CHECK(factor_lc(s2).m == DenseMatrix<Rational>::identity(2));

    auto s3 = Spectrum<Rational>::validate({{rat(2), 2}});
    CHECK(factor_lc(s3).m == mat(2, {1, 0, -2, 1}));
    CHECK(mat_mul(factor_uc(s3).m, factor_lc(s3).m) ==
          oracle::gauss_jordan_invert(build_confluent(s3).matrix));
}

TEST_CASE("factor_uc layout preconditions") {
    auto two_repeats =
        Spectrum<Rational>::validate({{rat(1), 2}, {rat(2), 2}});
    CHECK_THROWS_AS(factor_uc(two_repeats), Error);
    try {
        factor_uc(two_repeats);
    } catch (const Error& e) {
        CHECK(e.code() == errc::unsupported_spectrum);
    }

    auto repeat_last = Spectrum<Rational>::validate({{rat(2), 1}, {rat(1), 2}});
    CHECK_THROWS_AS(factor_uc(repeat_last), Error);
    CHECK_THROWS_AS(factor_lc(repeat_last), Error);
}

TEST_CASE("invert_confluent frozen examples") {
    auto s = Spectrum<Rational>::validate({{rat(1), 2}, {rat(2), 1}});
    auto f = invert_confluent(s);
    CHECK(f.inverse == mat(3, {0, 2, -1, -2, 3, -1, 1, -2, 1}));
    CHECK(f.residual_norm == 0.0);

    auto s2 = Spectrum<Rational>::validate({{rat(0), 2}});
    CHECK(invert_confluent(s2).inverse == DenseMatrix<Rational>::identity(2));

    // two repeated nodes: exact match against the elimination oracle
    auto s3 = Spectrum<Rational>::validate({{rat(1), 2}, {rat(2), 2}});
    auto f3 = invert_confluent(s3);
    auto c3 = build_confluent(s3);
    CHECK(f3.inverse == oracle::gauss_jordan_invert(c3.matrix));
    CHECK(mat_mul(c3.matrix, f3.inverse) == DenseMatrix<Rational>::identity(4));
    CHECK(f3.inverse == mat_mul(f3.uc.m, f3.lc.m));
}

TEST_CASE("invert_confluent handles any node order via permutation") {
    std::mt19937 rng(81);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + trial % 6;
        auto s = random_one_repeat(rng, n);
        auto c = build_confluent(s);
        auto f = invert_confluent(s);
        CHECK(mat_mul(c.matrix, f.inverse) == DenseMatrix<Rational>::identity(n));
        CHECK(f.inverse == oracle::gauss_jordan_invert(c.matrix));
        CHECK(f.uc.structure_holds());
        CHECK(f.lc.structure_holds());
        // inverse rows are the permuted rows of uc*lc
        auto prod = mat_mul(f.uc.m, f.lc.m);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                CHECK(f.inverse.at(j, k) == prod.at(f.column_permutation[j], k));
    }
}

TEST_CASE("invert_confluent multi-block spectra match the oracle exactly") {
    std::mt19937 rng(91);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 4 + trial % 5;
        auto s = random_two_repeats(rng, n);
        auto c = build_confluent(s);
        auto f = invert_confluent(s);
        CHECK(mat_mul(c.matrix, f.inverse) == DenseMatrix<Rational>::identity(n));
        CHECK(f.inverse == oracle::gauss_jordan_invert(c.matrix));
        CHECK(f.inverse == mat_mul(f.uc.m, f.lc.m));
    }
}

TEST_CASE("degeneration: invert_confluent equals invert_simple on simple spectra") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = random_simple(rng, 1 + trial % 8);
        auto via_simple = invert_simple(s);
        auto via_confluent = invert_confluent(s);
        CHECK(via_confluent.inverse == via_simple.inverse);
        // and the LU-derived factors reproduce U = D*W and L
        CHECK(via_confluent.uc.m == factor_u(s).m);
        CHECK(via_confluent.lc.m == factor_l(s).m);
    }
}

TEST_CASE("closed-form factor rules agree with the LU-derived factors") {
    std::mt19937 rng(111);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + trial % 7;
        auto shuffled = random_one_repeat(rng, n);
        // canonicalize: repeated node first
        std::vector<SpectrumNode<Rational>> nodes(shuffled.nodes().begin(),
                                                  shuffled.nodes().end());
        std::stable_sort(nodes.begin(), nodes.end(),
                         [](const auto& a, const auto& b) {
                             return a.multiplicity > b.multiplicity;
                         });
        auto s = Spectrum<Rational>::validate(std::move(nodes));
        auto agreement = compare_closed_forms(s);
        CHECK(agreement.uc_head_block.mismatches == 0);
        CHECK(agreement.uc_cross_block.mismatches == 0);
        CHECK(agreement.uc_tail_block.mismatches == 0);
        CHECK(agreement.lc_recurrence.mismatches == 0);
    }
}

TEST_CASE("float path flags ill-conditioned spectra") {
    // clustered nodes push the residual past the 1e-8*N warning threshold
    std::vector<F64> xs;
    for (int i = 0; i < 12; ++i) xs.push_back(F64(1.0 + i * 1e-3));
    auto s = simple_spectrum<F64>(std::move(xs));
    auto f = invert_simple(s);
    CHECK(f.ill_conditioned);
    CHECK(f.residual_norm > 1e-8 * 12);

    // generous override silences the flag
    auto relaxed = invert_simple(s, FactorOptions{1e30});
    CHECK_FALSE(relaxed.ill_conditioned);

    // well-separated nodes stay quiet
    auto good = invert_simple(simple_spectrum<F64>({F64(0.0), F64(1.0), F64(2.0)}));
    CHECK_FALSE(good.ill_conditioned);
    CHECK(good.residual_norm < 1e-12);
}

TEST_CASE("structured factor construction costs O(N^2) multiplicative ops") {
    for (int n : {8, 16, 32, 64}) {
        std::vector<F64> xs;
        for (int i = 0; i < n; ++i) xs.push_back(F64(-1.0 + 2.0 * i / (n - 1)));
        auto s = simple_spectrum<F64>(std::move(xs));
        scalar_ops::reset();
        factor_d(s);
        factor_w(s);
        factor_l(s);
        auto ops = scalar_ops::counts().total();
        // 2N^2 - N multiplicative ops, exactly
        CHECK(ops == static_cast<std::uint64_t>(2 * n * n - n));
    }
    scalar_ops::reset();
}
