#pragma once

#include <json.hpp>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "vanderkit/field.hpp"
#include "vanderkit/matrix.hpp"
#include "vanderkit/spectrum.hpp"

namespace vanderkit::io {

using json = nlohmann::json;

// Malformed input (schema/format problems). The CLI maps this to exit 2,
// as opposed to library errors (exit 1).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rationals travel as "p/q" strings (q omitted when 1) so exactness survives
// serialization; floats as plain JSON numbers with shortest round-trip form.
inline json scalar_to_json(const Rational& r) { return r.str(); }
inline json scalar_to_json(const F64& f) { return f.v; }

template <scalar_field S>
S scalar_from_json(const json& j);

template <>
inline Rational scalar_from_json<Rational>(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        auto parsed = Rational::parse(j.get<std::string>());
        if (!parsed) throw ParseError("not a rational: \"" + j.get<std::string>() + "\"");
        return *parsed;
    }
    throw ParseError("rational values must be integers or \"p/q\" strings, got " + j.dump());
}

template <>
inline F64 scalar_from_json<F64>(const json& j) {
    if (j.is_number()) return F64(j.get<double>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        char* end = nullptr;
        double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0')
            throw ParseError("not a float: \"" + s + "\"");
        return F64(v);
    }
    throw ParseError("float values must be numbers, got " + j.dump());
}

// {"nodes":[{"value":...,"multiplicity":...}, ...]}; multiplicity defaults to
// 1 and a bare value is shorthand for a multiplicity-1 node.
template <scalar_field S>
Spectrum<S> spectrum_from_json(const json& j, double separation_tol = kDefaultSeparationTol) {
    if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array())
        throw ParseError("expected an object with a \"nodes\" array");
    std::vector<SpectrumNode<S>> nodes;
    for (const auto& entry : j["nodes"]) {
        if (entry.is_object()) {
            if (!entry.contains("value")) throw ParseError("node without \"value\"");
            int mult = 1;
            if (entry.contains("multiplicity")) {
                if (!entry["multiplicity"].is_number_integer())
                    throw ParseError("multiplicity must be an integer");
                mult = entry["multiplicity"].get<int>();
            }
            nodes.push_back({scalar_from_json<S>(entry["value"]), mult});
        } else {
            nodes.push_back({scalar_from_json<S>(entry), 1});
        }
    }
    if (nodes.empty()) throw ParseError("spectrum needs at least one node");
    return Spectrum<S>::validate(std::move(nodes), separation_tol);
}

template <scalar_field S>
json spectrum_to_json(const Spectrum<S>& s) {
    json nodes = json::array();
    for (const auto& node : s.nodes())
        nodes.push_back({{"value", scalar_to_json(node.value)},
                         {"multiplicity", node.multiplicity}});
    return json{{"nodes", std::move(nodes)}};
}

// Matrices serialize as nested row arrays; the parser also accepts the
// {"rows":N,"entries":[...flat row-major...]} object form.
template <scalar_field S>
json matrix_to_json(const DenseMatrix<S>& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <scalar_field S>
DenseMatrix<S> matrix_from_json(const json& j) {
    if (j.is_array()) {
        if (j.empty() || !j[0].is_array()) throw ParseError("matrix rows must be arrays");
        const int rows = static_cast<int>(j.size());
        const int cols = static_cast<int>(j[0].size());
        DenseMatrix<S> m(rows, cols);
        for (int i = 0; i < rows; ++i) {
            if (static_cast<int>(j[i].size()) != cols)
                throw ParseError("ragged matrix rows");
            for (int c = 0; c < cols; ++c) m.at(i, c) = scalar_from_json<S>(j[i][c]);
        }
        return m;
    }
    if (j.is_object() && j.contains("rows") && j.contains("entries")) {
        if (!j["rows"].is_number_integer() || !j["entries"].is_array())
            throw ParseError("matrix object needs integer \"rows\" and an \"entries\" array");
        const int rows = j["rows"].get<int>();
        const auto& entries = j["entries"];
        if (rows < 1 || entries.size() % rows != 0)
            throw ParseError("entries length must be a multiple of rows");
        const int cols = static_cast<int>(entries.size()) / rows;
        DenseMatrix<S> m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int c = 0; c < cols; ++c)
                m.at(i, c) = scalar_from_json<S>(entries[i * cols + c]);
        return m;
    }
    throw ParseError("matrix must be nested arrays or {\"rows\",\"entries\"}");
}

}  // namespace vanderkit::io
