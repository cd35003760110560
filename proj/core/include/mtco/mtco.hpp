#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "mtco/distance.hpp"
#include "mtco/evaluate.hpp"
#include "mtco/instance.hpp"
#include "mtco/permutation.hpp"
#include "mtco/search.hpp"
#include "mtco/transfer.hpp"
#include "mtco/transform.hpp"

namespace mtco {

enum class Variant {
    Mtco,
    Stss,
    MtcoPartial,
    MtcoComplete,
    MtcoEvolution,
    MtcoFixedDistance,
    MtcoNoTransform,
};

std::string_view to_string(Variant variant);
/// Accepts mtco, stss, mtco-p, mtco-c, mtco-e, mtco-dfixed, mtco-nopt (any case).
Variant variant_from_string(std::string_view text);

enum class SubsetMode {
    /// One reference-set pair per iteration, cycling through all pairs.
    RoundRobin,
    /// Every pair combined each iteration; the best trial goes forward.
    Full,
};

struct RunConfig {
    std::size_t n_trial = 20;
    std::size_t rs_size = 12;
    /// Evaluation budget per problem; unset means 200 n (n - 1).
    std::optional<std::uint64_t> max_evals;
    /// Pairs further apart than this are transformed before the search.
    double boundary = 0.5;
    Variant variant = Variant::Mtco;
    /// Distance fed to the voting rule by MtcoFixedDistance.
    double fixed_distance = 0.7;
    std::uint64_t rng_seed = 1;
    SubsetMode subset_mode = SubsetMode::RoundRobin;
    /// Simulated annealing budget per improvement call, in metropolis blocks
    /// of n (n - 1) proposals.
    std::size_t sa_blocks = 1;
    NehVariantOrders neh_variants = NehVariantOrders::Priority;

    std::uint64_t budget_for(std::size_t jobs) const;
};

struct TransferEvent {
    Modality modality = Modality::CompleteSolution;
    /// 0-based index of the problem providing the knowledge.
    int source = 0;
    int target = 1;
    bool fired = false;
    /// Receiver's evaluation count when the decision was taken.
    std::uint64_t evaluations = 0;
};

struct RunTrace {
    Variant variant = Variant::Stss;
    /// Best-so-far objective against evaluations (non-increasing).
    std::vector<TracePoint> points;
    /// Final best, in the original problem's job numbering.
    Permutation best;
    double best_value = 0.0;
    std::uint64_t evaluations = 0;
    /// Transfers received by this problem.
    std::vector<TransferEvent> transfers;
    std::optional<DistanceReport> distance;
    std::optional<TransformRecord> transform;
};

/// Seed of problem `problem` (0 or 1) inside a paired run; run_stss with
/// this seed reproduces that problem's search when nothing is transferred.
std::uint64_t task_seed(std::uint64_t seed, int problem);

/// Single-task scatter search.
RunTrace run_stss(const Instance& inst, const RunConfig& cfg);

/// Solves both problems together, exchanging knowledge in both directions.
std::pair<RunTrace, RunTrace> run_mtco(const Instance& p1, const Instance& p2, const RunConfig& cfg);

/// run_mtco restricted to one modality; cfg.variant must be MtcoPartial,
/// MtcoComplete or MtcoEvolution.
std::pair<RunTrace, RunTrace> run_ablation(const Instance& p1, const Instance& p2, const RunConfig& cfg);

/// First evaluation count at which the trace reaches `target` or better.
std::optional<std::uint64_t> evaluations_to_reach(const std::vector<TracePoint>& trace, double target);

}  // namespace mtco
