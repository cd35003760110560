#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "mtco/permutation.hpp"

namespace mtco {

/// SplitMix64 finaliser; the mixing step of the counter-based seed scheme.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Derives an independent sub-seed from a root seed and a list of counters.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> counters) noexcept;

/// Seedable generator with platform-independent draws (the standard
/// distributions are implementation-defined, so bounded integers and
/// unit reals are derived from the raw 64-bit engine output here).
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, 1).
    double uniform01();
    /// Uniform integer on [lo, hi], inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    /// Uniformly random permutation of {0..n-1} (Fisher-Yates).
    Permutation permutation(std::size_t n);
    void shuffle(std::vector<int>& values);

private:
    std::mt19937_64 engine_;
};

}  // namespace mtco
