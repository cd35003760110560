#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mtco/evaluate.hpp"
#include "mtco/instance.hpp"
#include "mtco/permutation.hpp"

namespace mtco {

enum class Modality { CompleteSolution, PartialSolution, SolutionEvolution };

const char* to_string(Modality modality);

/// Cumulative votes for (v1) and against (v2) one transfer modality.
struct VotingState {
    std::uint64_t in_favor = 0;
    std::uint64_t against = 0;

    friend bool operator==(const VotingState&, const VotingState&) = default;
};

struct Decision {
    bool transfer = false;
    VotingState state;
};

/// Chooses transfer (p = 2) or not (p = 1) so that the running share of
/// votes against tracks d. Equidistant choices resolve to transfer.
/// Throws std::invalid_argument when d is outside [0, 1].
Decision adaptive_decision(const VotingState& state, double d);

/// O_pi with O_pi * x_init = x_best, i.e. x_best * x_init^T.
SolutionMatrix solution_evolution_operator(const SolutionMatrix& x_init,
                                           const SolutionMatrix& x_best);

/// phi^-1(O_pi * phi(target_best)).
Permutation apply_solution_evolution(const SolutionMatrix& o_pi, const Permutation& target_best);

struct InvarianceProfile {
    /// h[job]: share of other jobs whose relative order with `job` agrees.
    std::vector<double> h;
    /// Size of the non-invariance set.
    std::size_t pt = 0;
};

InvarianceProfile invariance_index(const Permutation& source_best, const Permutation& target_best);

struct InsertionStep {
    int job = 0;
    std::size_t position = 0;
    double value = 0.0;
};

struct PartialTransfer {
    Permutation trial;
    std::vector<InsertionStep> steps;
};

/// Removes the pt least invariant jobs from target_best and greedily
/// reinserts them, least invariant first, at their best positions.
/// Every candidate position bills one evaluation to `target`.
PartialTransfer partial_solution_transfer(const Permutation& source_best,
                                          const Permutation& target_best, Evaluator& target);
Permutation partial_solution_transfer(const Permutation& source_best,
                                      const Permutation& target_best, const Instance& target);

/// The source's best solution, reused as a trial for a target with
/// `target_jobs` jobs.
Permutation complete_solution_transfer(const Permutation& source_best, std::size_t target_jobs);

}  // namespace mtco
