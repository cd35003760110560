#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mtco/instance.hpp"
#include "mtco/permutation.hpp"

namespace mtco {

/// Best / average / worst percent error relative to a reference value C*.
struct ErrorSummary {
    double bre = 0.0;
    double are = 0.0;
    double wre = 0.0;
};

/// Throws std::invalid_argument when c_star <= 0 or results is empty.
ErrorSummary relative_errors(std::span<const double> results, double c_star);

/// results[a][k][l]: best value of algorithm a on problem k in repetition l.
using ResultCube = std::vector<std::vector<std::vector<double>>>;

struct RPSTable {
    std::vector<double> scores;
    /// Problems whose spread was zero; their terms contribute nothing.
    std::vector<std::size_t> degenerate_problems;
};

/// Regularised performance score: per-problem z-scores (population
/// standard deviation over every repetition of every algorithm), summed
/// per algorithm. Lower is better.
RPSTable rps(const ResultCube& results);

/// 1 + number of sampled permutations strictly better than source_best on
/// the target.
std::uint64_t transferability_value(const Permutation& source_best, const Instance& target,
                                    std::size_t samples, std::uint64_t seed);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

struct WilcoxonResult {
    double w_plus = 0.0;
    double w_minus = 0.0;
    std::size_t nonzero = 0;
    /// Two-sided.
    double p_value = 1.0;
    bool exact = false;
};

/// Paired signed-rank test; zero differences dropped, average ranks for
/// ties. Exact null distribution up to 25 non-zero pairs, normal
/// approximation (with tie correction) beyond.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y);

}  // namespace mtco
