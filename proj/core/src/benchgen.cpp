#include "mtco/benchgen.hpp"

#include <stdexcept>

#include "mtco/distance.hpp"
#include "mtco/random.hpp"

namespace mtco {

MultiTaskInstance generate_pair(const Instance& base, double p_r, std::uint64_t seed) {
    if (!(p_r >= 0.0 && p_r <= 1.0)) throw std::invalid_argument("generate_pair: p_r must lie in [0, 1]");
    if (base.due()) throw std::invalid_argument("generate_pair: due-date instances are not supported");
    const std::size_t n = base.jobs();
    const std::size_t m = base.machines();
    Matrix p2 = base.processing();
    std::vector<bool> replaced(n * m, false);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            Rng cell(derive_seed(seed, {i, j}));
            if (cell.uniform01() < p_r) {
                p2(i, j) = static_cast<double>(cell.uniform_int(1, 99));
                replaced[i * m + j] = true;
            }
        }
    }
    MultiTaskInstance out{base, Instance(std::move(p2), base.objective()), p_r, seed, std::nullopt,
                          std::move(replaced)};
    return out;
}

std::vector<MultiTaskInstance> generate_suite(const std::vector<Instance>& bases,
                                              const std::vector<double>& p_r_grid, std::size_t reps,
                                              std::uint64_t seed) {
    if (bases.empty() || p_r_grid.empty() || reps == 0)
        throw std::invalid_argument("generate_suite: empty bases, grid or reps");
    std::vector<MultiTaskInstance> out;
    out.reserve(bases.size() * p_r_grid.size() * reps);
    for (std::size_t b = 0; b < bases.size(); ++b) {
        for (std::size_t r = 0; r < p_r_grid.size(); ++r) {
            for (std::size_t k = 0; k < reps; ++k) {
                MultiTaskInstance mt = generate_pair(bases[b], p_r_grid[r], derive_seed(seed, {b, r, k}));
                mt.recorded_distance = inter_task_distance(mt.problem2, mt.problem1).normalized;
                out.push_back(std::move(mt));
            }
        }
    }
    return out;
}

std::vector<double> replacing_probability_grid(std::size_t intervals) {
    if (intervals == 0) throw std::invalid_argument("replacing_probability_grid: need at least one interval");
    std::vector<double> grid(intervals);
    for (std::size_t k = 0; k < intervals; ++k)
        grid[k] = static_cast<double>(k + 1) / static_cast<double>(intervals);
    return grid;
}

}  // namespace mtco
