#pragma once

#include <cstdint>

namespace vanderkit::scalar_ops {

// Thread-local multiply/divide counters, incremented by the scalar types.
// The bench harness resets them around each measured kernel; per-thread
// storage keeps parallel cases isolated without locking.
struct Counts {
    std::uint64_t mul = 0;
    std::uint64_t div = 0;

    std::uint64_t total() const { return mul + div; }
};

inline Counts& counts() {
    thread_local Counts c;
    return c;
}

inline void reset() { counts() = Counts{}; }
inline void count_mul() { ++counts().mul; }
inline void count_div() { ++counts().div; }

}  // namespace vanderkit::scalar_ops
