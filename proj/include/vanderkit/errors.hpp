#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace vanderkit {

// Error codes carried by every library exception. The CLI maps these to the
// structured {code, message} object and exit status 1.
enum class errc {
    duplicate_node,
    nonpositive_multiplicity,
    confluent_spectrum,
    dimension_mismatch,
    singular_matrix,
    zero_division,
    unsupported_spectrum,
    nonpositive_eigenvalue,
    spectrum_mismatch,
    index_out_of_range,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::duplicate_node: return "DuplicateNode";
        case errc::nonpositive_multiplicity: return "NonpositiveMultiplicity";
        case errc::confluent_spectrum: return "ConfluentSpectrum";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::singular_matrix: return "SingularMatrix";
        case errc::zero_division: return "ZeroDivision";
        case errc::unsupported_spectrum: return "UnsupportedSpectrum";
        case errc::nonpositive_eigenvalue: return "NonpositiveEigenvalue";
        case errc::spectrum_mismatch: return "SpectrumMismatch";
        case errc::index_out_of_range: return "IndexOutOfRange";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace vanderkit
