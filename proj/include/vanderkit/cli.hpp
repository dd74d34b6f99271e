#pragma once

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "vanderkit/bench.hpp"
#include "vanderkit/closed_form.hpp"
#include "vanderkit/factor.hpp"
#include "vanderkit/json_io.hpp"
#include "vanderkit/matfunc.hpp"
#include "vanderkit/oracle.hpp"
#include "vanderkit/vander.hpp"

namespace vanderkit::cli {

using io::json;
using io::ParseError;

enum class Command { build, det, factor, invert, matfunc, verify, bench };
enum class ScalarMode { rational, floating };
enum class OutputFormat { json_out, table };

struct Job {
    Command command = Command::build;
    ScalarMode scalar = ScalarMode::rational;
    OutputFormat output = OutputFormat::json_out;
    json input;        // parsed input document
    double tol = -1.0; // residual tolerance override
    int terms = 35;    // series terms for the verify exp oracle
};

inline const char* command_name(Command c) {
    switch (c) {
        case Command::build: return "build";
        case Command::det: return "det";
        case Command::factor: return "factor";
        case Command::invert: return "invert";
        case Command::matfunc: return "matfunc";
        case Command::verify: return "verify";
        case Command::bench: return "bench";
    }
    return "?";
}

namespace detail {

template <scalar_field S>
Spectrum<S> require_spectrum(const Job& job) {
    if (!job.input.is_object() || !job.input.contains("nodes"))
        throw ParseError(std::string(command_name(job.command)) +
                         " needs an input with a \"nodes\" array");
    return io::spectrum_from_json<S>(job.input);
}

// Block-diagonal Jordan realization of a spectrum: one block per node of its
// multiplicity's size.
inline DenseMatrix<F64> jordan_matrix(const Spectrum<F64>& s) {
    DenseMatrix<F64> m(s.size(), s.size());
    int off = 0;
    for (const auto& node : s.nodes()) {
        for (int k = 0; k < node.multiplicity; ++k) {
            m.at(off + k, off + k) = node.value;
            if (k + 1 < node.multiplicity) m.at(off + k, off + k + 1) = F64(1.0);
        }
        off += node.multiplicity;
    }
    return m;
}

template <scalar_field S>
json run_build(const Job& job) {
    auto s = require_spectrum<S>(job);
    auto vm = build_confluent(s);
    return {{"kind", vm.kind == VanderKind::simple ? "simple" : "confluent"},
            {"n", s.size()},
            {"matrix", io::matrix_to_json(vm.matrix)}};
}

template <scalar_field S>
json run_det(const Job& job) {
    auto s = require_spectrum<S>(job);
    return {{"n", s.size()}, {"det", io::scalar_to_json(det_product_formula(s))}};
}

template <scalar_field S>
json run_factor(const Job& job) {
    auto s = require_spectrum<S>(job);
    if (s.simple()) {
        auto d = factor_d(s);
        auto w = factor_w(s);
        auto l = factor_l(s);
        auto u = factor_u(s);
        return {{"kind", "simple"},
                {"d", io::matrix_to_json(d.m)},
                {"w", io::matrix_to_json(w.m)},
                {"l", io::matrix_to_json(l.m)},
                {"u", io::matrix_to_json(u.m)}};
    }
    FactorOptions opts{job.tol};
    auto f = invert_confluent(s, opts);
    return {{"kind", "confluent"},
            {"uc", io::matrix_to_json(f.uc.m)},
            {"lc", io::matrix_to_json(f.lc.m)},
            {"column_permutation", f.column_permutation}};
}

template <scalar_field S>
json run_invert(const Job& job, std::ostream& err) {
    auto s = require_spectrum<S>(job);
    FactorOptions opts{job.tol};
    DenseMatrix<S> inverse(1, 1);
    bool ill = false;
    if (s.simple()) {
        auto f = invert_simple(s, opts);
        inverse = std::move(f.inverse);
        ill = f.ill_conditioned;
    } else {
        auto f = invert_confluent(s, opts);
        inverse = std::move(f.inverse);
        ill = f.ill_conditioned;
    }
    S resid = residual(build_confluent(s).matrix, inverse);
    if (ill)
        err << "warning: residual " << field_traits<S>::to_double(resid)
            << " exceeds the conditioning tolerance; result may be inaccurate\n";
    json out{{"n", s.size()},
             {"inverse", io::matrix_to_json(inverse)},
             {"residual", io::scalar_to_json(resid)}};
    if constexpr (!field_traits<S>::exact) out["ill_conditioned"] = ill;
    return out;
}

inline json run_matfunc(const Job& job, ScalarMode mode) {
    if (mode == ScalarMode::rational)
        throw ParseError("matfunc needs float semantics (exp/log values are transcendental); "
                         "set \"scalar\":\"float\"");
    if (!job.input.is_object() || !job.input.contains("matrix"))
        throw ParseError("matfunc needs a \"matrix\" field");
    if (!job.input.contains("function") || !job.input["function"].is_string())
        throw ParseError("matfunc needs \"function\": \"exp\" or \"log\"");
    const std::string fname = job.input["function"].get<std::string>();
    MatrixFunction f;
    if (fname == "exp")
        f = MatrixFunction::exp;
    else if (fname == "log")
        f = MatrixFunction::log;
    else
        throw ParseError("unknown function \"" + fname + "\"");

    auto s = require_spectrum<F64>(job);
    auto a = io::matrix_from_json<F64>(job.input["matrix"]);

    auto coeffs = hermite_coefficients(hermite_data_for(f, s));
    auto result = matrix_function(a, s, f);

    json cj = json::array();
    for (const auto& c : coeffs.c) cj.push_back(io::scalar_to_json(c));
    return {{"function", fname},
            {"n", s.size()},
            {"coefficients", std::move(cj)},
            {"result", io::matrix_to_json(result)}};
}

template <scalar_field S>
json verify_case(const json& case_json, const Job& job, double& max_residual) {
    auto s = io::spectrum_from_json<S>(case_json);
    const double tol = job.tol >= 0.0 ? job.tol : 1e-8 * s.size();

    auto c = build_confluent(s);
    auto f = invert_confluent(s);
    double resid = field_traits<S>::to_double(residual(c.matrix, f.inverse));
    double oracle_diff = max_abs_diff(oracle::gauss_jordan_invert(c.matrix), f.inverse);

    json out{{"n", s.size()},
             {"kind", s.simple() ? "simple" : "confluent"},
             {"residual", resid},
             {"oracle_diff", oracle_diff},
             {"tolerance", tol}};
    double worst = std::max(resid, oracle_diff);
    if constexpr (!field_traits<S>::exact) {
        DenseMatrix<F64> jm = jordan_matrix(s);
        double exp_diff =
            max_abs_diff(matrix_function(jm, s, MatrixFunction::exp),
                         oracle::series_exp(jm, job.terms));
        out["exp_series_diff"] = exp_diff;
        worst = std::max(worst, exp_diff);
    }
    out["pass"] = worst <= tol;
    max_residual = std::max(max_residual, worst);
    if (case_json.contains("name")) out["name"] = case_json["name"];
    return out;
}

template <scalar_field S>
json run_verify(const Job& job, int& exit_code) {
    json cases = json::array();
    if (job.input.is_object() && job.input.contains("cases")) {
        if (!job.input["cases"].is_array()) throw ParseError("\"cases\" must be an array");
        cases = job.input["cases"];
    } else {
        // Deterministic built-in suite: simple, confluent, repeated-not-first
        // and two-repeated-node layouts.
        cases = json::array({
            {{"name", "simple-3"}, {"nodes", {1, 2, 3}}},
            {{"name", "simple-2"}, {"nodes", {0, 1}}},
            {{"name", "simple-4"}, {"nodes", {-3, -1, 2, 5}}},
            {{"name", "confluent-one-repeat"},
             {"nodes", {{{"value", 1}, {"multiplicity", 2}}, {{"value", 2}}}}},
            {{"name", "confluent-triple"},
             {"nodes", {{{"value", 0}, {"multiplicity", 3}}}}},
            {{"name", "confluent-repeat-last"},
             {"nodes", {{{"value", 3}}, {{"value", 1}, {"multiplicity", 3}}}}},
            {{"name", "confluent-two-repeats"},
             {"nodes",
              {{{"value", 1}, {"multiplicity", 2}}, {{"value", 2}, {"multiplicity", 2}}}}},
        });
    }
    double max_residual = 0.0;
    json results = json::array();
    bool all_pass = true;
    for (const auto& cj : cases) {
        json r = verify_case<S>(cj, job, max_residual);
        all_pass = all_pass && r["pass"].get<bool>();
        results.push_back(std::move(r));
    }
    exit_code = all_pass ? 0 : 1;
    return {{"cases", std::move(results)},
            {"max_residual", max_residual},
            {"pass", all_pass}};
}

inline json run_bench(const Job& job) {
    int n_min = 4, n_max = 12;
    if (job.input.is_object() && job.input.contains("sweep")) {
        const auto& sw = job.input["sweep"];
        if (!sw.is_object() || !sw.contains("min") || !sw.contains("max"))
            throw ParseError("\"sweep\" needs integer \"min\" and \"max\"");
        n_min = sw["min"].get<int>();
        n_max = sw["max"].get<int>();
    }
    auto report = bench::run(n_min, n_max);
    json cases = json::array();
    for (const auto& c : report.cases)
        cases.push_back({{"n", c.n},
                         {"structured_mul", c.structured_mul},
                         {"structured_div", c.structured_div},
                         {"structured_ops", c.structured_ops()},
                         {"dense_ops", c.dense_ops()},
                         {"structured_seconds", c.structured_seconds},
                         {"dense_seconds", c.dense_seconds}});
    return {{"sweep", std::move(cases)},
            {"fit",
             {{"structured_c2", report.fit.structured_c2},
              {"structured_max_dev", report.fit.structured_max_dev},
              {"dense_c3", report.fit.dense_c3},
              {"dense_max_dev", report.fit.dense_max_dev}}}};
}

inline void print_table_value(std::ostream& out, const std::string& key, const json& value,
                              int indent);

inline void print_matrix_table(std::ostream& out, const json& m, int indent) {
    std::vector<std::vector<std::string>> cells;
    std::size_t width = 0;
    for (const auto& row : m) {
        cells.emplace_back();
        for (const auto& v : row) {
            std::string s = v.is_string() ? v.get<std::string>() : v.dump();
            width = std::max(width, s.size());
            cells.back().push_back(std::move(s));
        }
    }
    for (const auto& row : cells) {
        out << std::string(indent, ' ') << "[";
        for (std::size_t j = 0; j < row.size(); ++j)
            out << (j ? " " : "") << std::setw(static_cast<int>(width)) << row[j];
        out << "]\n";
    }
}

inline bool looks_like_matrix(const json& v) {
    return v.is_array() && !v.empty() && v[0].is_array() &&
           (v[0].empty() || !v[0][0].is_structured());
}

inline void print_table_value(std::ostream& out, const std::string& key, const json& value,
                              int indent) {
    std::string pad(indent, ' ');
    if (looks_like_matrix(value)) {
        out << pad << key << ":\n";
        print_matrix_table(out, value, indent + 2);
    } else if (value.is_array() && !value.empty() && value[0].is_object()) {
        out << pad << key << ":\n";
        for (const auto& item : value) {
            out << pad << "  -";
            for (auto it = item.begin(); it != item.end(); ++it)
                out << " " << it.key() << "=" << it.value().dump();
            out << "\n";
        }
    } else if (value.is_object()) {
        out << pad << key << ":\n";
        for (auto it = value.begin(); it != value.end(); ++it)
            print_table_value(out, it.key(), it.value(), indent + 2);
    } else {
        out << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
            << "\n";
    }
}

inline void print_report(const Job& job, const json& report, std::ostream& out) {
    if (job.output == OutputFormat::json_out) {
        out << report.dump(2) << "\n";
        return;
    }
    for (auto it = report.begin(); it != report.end(); ++it)
        print_table_value(out, it.key(), it.value(), 0);
}

}  // namespace detail

// Executes a job and writes its report; returns the process exit status.
// Library errors produce {"error":{code,message}} and 1; malformed input
// produces the same shape with code MalformedInput and 2.
inline int run_job(const Job& job, std::ostream& out, std::ostream& err) {
    const auto started = std::chrono::steady_clock::now();
    int exit_code = 0;
    json report;
    try {
        json result;
        switch (job.command) {
            case Command::build:
                result = job.scalar == ScalarMode::rational
                             ? detail::run_build<Rational>(job)
                             : detail::run_build<F64>(job);
                break;
            case Command::det:
                result = job.scalar == ScalarMode::rational ? detail::run_det<Rational>(job)
                                                            : detail::run_det<F64>(job);
                break;
            case Command::factor:
                result = job.scalar == ScalarMode::rational
                             ? detail::run_factor<Rational>(job)
                             : detail::run_factor<F64>(job);
                break;
            case Command::invert:
                result = job.scalar == ScalarMode::rational
                             ? detail::run_invert<Rational>(job, err)
                             : detail::run_invert<F64>(job, err);
                break;
            case Command::matfunc:
                result = detail::run_matfunc(job, job.scalar);
                break;
            case Command::verify:
                result = job.scalar == ScalarMode::rational
                             ? detail::run_verify<Rational>(job, exit_code)
                             : detail::run_verify<F64>(job, exit_code);
                break;
            case Command::bench:
                result = detail::run_bench(job);
                break;
        }
        report = {{"command", command_name(job.command)},
                  {"scalar", job.scalar == ScalarMode::rational ? "rational" : "float"},
                  {"input", job.input}};
        report.update(result);
    } catch (const Error& e) {
        report = {{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}};
        err << "error: " << e.what() << "\n";
        detail::print_report(job, report, out);
        return 1;
    } catch (const ParseError& e) {
        report = {{"error", {{"code", "MalformedInput"}, {"message", e.what()}}}};
        err << "error: " << e.what() << "\n";
        detail::print_report(job, report, out);
        return 2;
    } catch (const json::exception& e) {
        report = {{"error", {{"code", "MalformedInput"}, {"message", e.what()}}}};
        err << "error: " << e.what() << "\n";
        detail::print_report(job, report, out);
        return 2;
    }
    const auto elapsed = std::chrono::steady_clock::now() - started;
    report["elapsed_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    detail::print_report(job, report, out);
    return exit_code;
}

}  // namespace vanderkit::cli
