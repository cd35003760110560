#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mtco/instance.hpp"

namespace mtco {

struct MultiTaskInstance {
    Instance problem1;
    Instance problem2;
    double p_r = 0.0;
    std::uint64_t seed = 0;
    std::optional<double> recorded_distance;
    /// Row-major n x m flags; true where problem2's cell was redrawn.
    std::vector<bool> replaced;
};

/// Problem 2 redraws each cell of `base` from {1..99} with probability p_r.
/// Every cell's draws come from its own sub-seed of (seed, i, j).
MultiTaskInstance generate_pair(const Instance& base, double p_r, std::uint64_t seed);

/// One pair per (base, p_r, rep) with distances recorded, ordered
/// base-major, then p_r, then rep.
std::vector<MultiTaskInstance> generate_suite(const std::vector<Instance>& bases,
                                              const std::vector<double>& p_r_grid,
                                              std::size_t reps, std::uint64_t seed);

/// {step, 2 step, ..., 1} with `intervals` equal steps.
std::vector<double> replacing_probability_grid(std::size_t intervals);

}  // namespace mtco
