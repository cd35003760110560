#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>

#include "mtco/instance.hpp"
#include "mtco/matrix.hpp"
#include "mtco/permutation.hpp"

namespace mtco {

struct Dimensions {
    std::size_t jobs = 0;
    std::size_t machines = 0;

    friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

/// What was done to the pair before the distance was taken.
struct Preprocessing {
    Dimensions q_original;
    Dimensions p_original;
    Dimensions common;
    bool padded = false;
    /// Row reordering applied to Q (X_Q), when job alignment was requested.
    std::optional<SolutionMatrix> job_matching;
};

struct DistanceReport {
    double t_star = 0.0;
    double b_star = 0.0;
    /// ||Q* - t* P*||_F, in time units.
    double raw = 0.0;
    /// Normalised inter-task distance in [0, 1].
    double normalized = 0.0;
    Preprocessing preprocessing;
};

struct ScaleShift {
    double t_star = 0.0;
    double b_star = 0.0;
};

struct MatchingResult {
    SolutionMatrix assignment;
    double score = 0.0;
};

/// Subtracts the grand mean from every element.
Matrix center(const Matrix& p);

/// Least-squares fit of Q ~ t P + b E with t >= 0.
/// Throws DegenerateSourceError when P is constant.
ScaleShift fit_scale_shift(const Matrix& q, const Matrix& p);

/// Distance from Q to the order-isomorphic set of P. Symmetric; 0 when Q is
/// a positive affine image of P, 1 when the centred matrices are orthogonal
/// or anti-correlated.
DistanceReport normalized_distance(const Matrix& q, const Matrix& p);

/// Zero-pads both instances to max(jobs) x max(machines). Virtual jobs get
/// due dates that can never be missed.
std::pair<Instance, Instance> augment_dimensions(const Instance& q, const Instance& p);

/// Row-correlation matrix S: s(i, j) = pearson(Q row i, P row j).
Matrix row_correlation(const Matrix& q, const Matrix& p);

/// Reorders Q's jobs to maximise tr(X_Q * S).
MatchingResult match_jobs(const Instance& q, const Instance& p);

/// Full pipeline: pad, optionally align Q's jobs to P's, then measure.
DistanceReport inter_task_distance(const Instance& q, const Instance& p, bool align_jobs = false);

/// Fraction of job pairs whose relative order differs (0 identical, 1 reversed).
double precedence_distance(const Permutation& a, const Permutation& b);

/// Spearman correlation of the two objectives over a shared uniform sample
/// of permutations. Average ranks for ties.
double spearman_rcc(const Instance& q, const Instance& p, std::size_t samples, std::uint64_t seed);

/// Spearman correlation of two equal-length samples (average ranks).
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace mtco
