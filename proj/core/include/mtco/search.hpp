#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mtco/evaluate.hpp"
#include "mtco/instance.hpp"
#include "mtco/permutation.hpp"
#include "mtco/random.hpp"

namespace mtco {

// ---- constructive heuristics ----------------------------------------------

/// Inserts `order`'s jobs one at a time at the position minimising the
/// objective of the growing sequence (earliest position on ties).
Permutation insertion_construct(Evaluator& eval, const std::vector<int>& order);

/// Nawaz-Enscore-Ham: descending total processing time, then best insertion.
Permutation neh(Evaluator& eval);
Permutation neh(const Instance& inst);

/// Johnson's rule for the two-machine flowshop with times a, b.
std::vector<int> johnson_order(const std::vector<double>& a, const std::vector<double>& b);

/// Campbell-Dudek-Smith: best of the m-1 Johnson surrogates by true
/// objective. Throws std::invalid_argument when m < 2.
Permutation cds(Evaluator& eval);
Permutation cds(const Instance& inst);

/// Seed orders for the two NEH variants used by diversification.
enum class NehVariantOrders {
    /// Kalczynski-Kamburowski weighted priority, and mean + standard
    /// deviation of processing times.
    Priority,
    /// Descending first-machine time, and descending last-machine time.
    MachineEnds,
};

std::vector<int> kk_priority_order(const Instance& inst);
std::vector<int> mean_deviation_order(const Instance& inst);
std::vector<int> first_machine_order(const Instance& inst);
std::vector<int> last_machine_order(const Instance& inst);

/// Random job order followed by best insertion.
Permutation randomized_insertion(Evaluator& eval, Rng& rng);

/// NEH, CDS and the two NEH variants, then randomised insertion for the
/// rest. All returned permutations are distinct whenever n! >= n_trial.
/// A constructor is only started when its full evaluation cost fits in the
/// remaining budget, so the budget is never exceeded.
std::vector<Permutation> diversification_generation(Evaluator& eval, std::size_t n_trial, Rng& rng,
                                                    NehVariantOrders variants = NehVariantOrders::Priority);

// ---- reference set --------------------------------------------------------

struct Member {
    Permutation perm;
    double value = 0.0;
};

/// The b best distinct solutions seen so far, ascending by objective.
class ReferenceSet {
public:
    explicit ReferenceSet(std::size_t capacity);

    /// Inserts the candidate if it is new and beats the worst member (or the
    /// set has room). Returns whether it was inserted.
    bool offer(const Permutation& perm, double value);

    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const Member& operator[](std::size_t i) const { return members_[i]; }
    const Member& best() const { return members_.front(); }
    const std::vector<Member>& members() const noexcept { return members_; }

private:
    std::size_t capacity_;
    std::vector<Member> members_;
};

ReferenceSet update_reference_set(ReferenceSet rs, const Member& candidate);

/// All unordered index pairs (i < j). Throws when fewer than two members.
std::vector<std::pair<std::size_t, std::size_t>> subset_generation(const ReferenceSet& rs);

/// Voting combination: both parents propose the successor of the last
/// appended job; agreement appends it, disagreement flips a fair coin.
/// `better` must be the parent with the smaller objective.
Permutation solution_combination(const Permutation& better, const Permutation& worse, Rng& rng);

// ---- improvement ----------------------------------------------------------

/// Removes the element at `back` and reinserts it just before `front`.
Permutation insert_move(const Permutation& pi, std::size_t front, std::size_t back);
/// insert_move at two distinct uniformly chosen positions.
Permutation insert_neighbor(const Permutation& pi, Rng& rng);

struct SAParams {
    double t0 = 1.0;
    double lambda = 0.9;
    std::size_t steps = 1;

    /// T0 = sum(p) / (10 n m), lambda = 0.9, n(n-1) metropolis steps.
    static SAParams defaults_for(const Instance& inst);
};

/// min{1, exp(-delta / temperature)}.
double acceptance_probability(double delta, double temperature);

struct SAResult {
    Permutation best;
    double best_value = 0.0;
    /// Best-so-far of this run against the evaluator's global count.
    std::vector<TracePoint> trace;
};

/// Insert-neighbourhood simulated annealing with geometric cooling after
/// every `params.steps` proposals. Stops after `budget` evaluations or when
/// the evaluator is exhausted. `start_value`, when given, saves evaluating
/// the starting point again.
SAResult simulated_annealing(Evaluator& eval, const Permutation& start, const SAParams& params,
                             std::uint64_t budget, Rng& rng,
                             std::optional<double> start_value = std::nullopt);

}  // namespace mtco
