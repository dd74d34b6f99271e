#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vanderkit/errors.hpp"
#include "vanderkit/field.hpp"

namespace vanderkit {

// Near-coincident float nodes are rejected rather than silently inverted;
// the factorization divides by node differences.
inline constexpr double kDefaultSeparationTol = 1e-9;

template <scalar_field S>
struct SpectrumNode {
    S value;
    int multiplicity = 1;

    bool operator==(const SpectrumNode&) const = default;
};

// Ordered multiset of nodes with multiplicities; the single input defining a
// (confluent) Vandermonde matrix. Order is the caller's: the factorization
// formulas are index-sensitive, so no internal sorting ever happens.
template <scalar_field S>
class Spectrum {
public:
    // Validates distinctness (exact for rationals, separation_tol for floats)
    // and positivity of multiplicities.
    static Spectrum validate(std::vector<SpectrumNode<S>> nodes,
                             double separation_tol = kDefaultSeparationTol) {
        if (nodes.empty())
            raise(errc::index_out_of_range, "spectrum needs at least one node");
        int n = 0;
        for (const auto& node : nodes) {
            if (node.multiplicity < 1)
                raise(errc::nonpositive_multiplicity,
                      "node multiplicity must be >= 1, got " +
                          std::to_string(node.multiplicity));
            n += node.multiplicity;
        }
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                bool coincide;
                if constexpr (field_traits<S>::exact) {
                    coincide = nodes[i].value == nodes[j].value;
                } else {
                    coincide = field_traits<S>::approx_equal(nodes[i].value, nodes[j].value,
                                                             separation_tol);
                }
                if (coincide)
                    raise(errc::duplicate_node,
                          "nodes " + std::to_string(i) + " and " + std::to_string(j) +
                              " coincide; express repetition as multiplicity");
            }
        }
        return Spectrum(std::move(nodes), n);
    }

    int size() const { return size_; }
    bool simple() const { return size_ == static_cast<int>(nodes_.size()); }
    std::span<const SpectrumNode<S>> nodes() const { return nodes_; }

    // Node values repeated by multiplicity, in block order.
    std::vector<S> expanded() const {
        std::vector<S> xs;
        xs.reserve(size_);
        for (const auto& node : nodes_)
            for (int k = 0; k < node.multiplicity; ++k) xs.push_back(node.value);
        return xs;
    }

    // Same nodes in a different order; skips re-validation since distinctness
    // does not depend on order. The reordering must be a permutation of this
    // spectrum's nodes.
    Spectrum with_node_order(std::vector<SpectrumNode<S>> reordered) const {
        if (reordered.size() != nodes_.size())
            raise(errc::index_out_of_range, "with_node_order: node count mismatch");
        int n = 0;
        for (const auto& node : reordered) n += node.multiplicity;
        if (n != size_)
            raise(errc::index_out_of_range, "with_node_order: size mismatch");
        return Spectrum(std::move(reordered), size_);
    }

    bool operator==(const Spectrum&) const = default;

private:
    Spectrum(std::vector<SpectrumNode<S>> nodes, int size)
        : nodes_(std::move(nodes)), size_(size) {}

    std::vector<SpectrumNode<S>> nodes_;
    int size_;
};

// Convenience for the pervasive all-simple case.
template <scalar_field S>
Spectrum<S> simple_spectrum(std::vector<S> values,
                            double separation_tol = kDefaultSeparationTol) {
    std::vector<SpectrumNode<S>> nodes;
    nodes.reserve(values.size());
    for (auto& v : values) nodes.push_back({std::move(v), 1});
    return Spectrum<S>::validate(std::move(nodes), separation_tol);
}

}  // namespace vanderkit
