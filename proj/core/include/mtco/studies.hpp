#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mtco/benchgen.hpp"
#include "mtco/metrics.hpp"
#include "mtco/mtco.hpp"

namespace mtco {

/// Worker threads for study sweeps, from MTCO_WORKERS (default 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, count) on `workers` threads. Callers write
/// into pre-sized, index-keyed storage so output order never depends on
/// scheduling.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body);

/// The pair as the solver sees it: STSS runs each problem on its own.
std::pair<RunTrace, RunTrace> solve_pair(const Instance& p1, const Instance& p2, const RunConfig& cfg);

// ---- distance vs rank correlation ------------------------------------------

struct SrccRow {
    std::size_t instance = 0;
    double p_r = 0.0;
    double distance = 0.0;
    double srcc = 0.0;
};

struct SrccStudy {
    std::vector<SrccRow> rows;
    LinearFit fit;
};

SrccStudy study_distance_srcc(const std::vector<MultiTaskInstance>& suite, std::size_t samples,
                              std::uint64_t seed);

// ---- transferability ---------------------------------------------------------

struct TransferabilityRow {
    std::size_t instance = 0;
    double p_r = 0.0;
    double distance = 0.0;
    double source_value = 0.0;
    std::uint64_t rank = 0;
};

/// Problem 1's best solution (from a single-task run under `source_cfg`)
/// ranked among `samples` random problem 2 solutions.
std::vector<TransferabilityRow> study_transferability(const std::vector<MultiTaskInstance>& suite,
                                                      std::size_t samples, std::uint64_t seed,
                                                      const RunConfig& source_cfg);

// ---- algorithm comparisons -------------------------------------------------

struct RunRow {
    std::size_t instance = 0;
    double p_r = 0.0;
    double distance = 0.0;
    Variant variant = Variant::Stss;
    std::size_t rep = 0;
    int problem = 1;
    double final_value = 0.0;
    std::uint64_t evaluations = 0;
    /// Evaluations this run needed to match the rep-matched STSS final value
    /// (budget when never matched). Empty when STSS was not part of the study.
    std::optional<std::uint64_t> evals_to_stss_final;
    /// Evaluations the STSS run itself needed to reach its final value.
    std::optional<std::uint64_t> stss_evals_to_final;
    /// Evaluations this run needed to reach its own final value.
    std::optional<std::uint64_t> evals_to_own_final;
    /// Evaluations the rep-matched STSS run needed to reach this run's final
    /// value (budget when never reached).
    std::optional<std::uint64_t> stss_evals_to_own_final;
    std::size_t transfers_fired = 0;
    bool transform_accepted = false;
};

struct VariantSummary {
    Variant variant = Variant::Stss;
    ErrorSummary problem1;
    ErrorSummary problem2;
    /// Mean of the two problem summaries.
    ErrorSummary instance;
    double rps = 0.0;
    /// Mean over p_r groups of mean(STSS evals) / mean(variant evals) to
    /// reach STSS's final quality.
    std::optional<double> speedup;
    /// Same ratio, with this variant's final quality as the target.
    std::optional<double> speedup_to_own_final;
};

struct CompareStudy {
    std::vector<Variant> variants;
    std::vector<RunRow> rows;
    /// Per instance and problem (index 2 i + k - 1): reference value C*.
    std::vector<double> c_star;
    std::vector<VariantSummary> summaries;
    /// Traces keyed by (instance, variant index, rep, problem 0/1).
    std::map<std::tuple<std::size_t, std::size_t, std::size_t, int>, std::vector<TracePoint>> traces;
};

/// Runs every variant on every pair `reps` times with rep-matched seeds.
/// C* is the best value any run found on each problem unless `optima`
/// supplies it for (instance, problem).
CompareStudy study_compare(const std::vector<MultiTaskInstance>& suite,
                           const std::vector<Variant>& variants, std::size_t reps,
                           const RunConfig& cfg,
                           const std::function<std::optional<double>(std::size_t, int)>& optima = {});

/// Recomputes the summaries from run rows alone (used by `report`).
std::vector<VariantSummary> summarize(const std::vector<RunRow>& rows,
                                      const std::vector<Variant>& variants,
                                      const std::vector<double>& c_star);
std::vector<double> best_found(const std::vector<RunRow>& rows, std::size_t instances);

// ---- transformation effect -------------------------------------------------

struct TransformRow {
    std::size_t instance = 0;
    double p_r = 0.0;
    double d_before = 0.0;
    double d_after = 0.0;
    bool accepted = false;
};

std::vector<TransformRow> study_transform(const std::vector<MultiTaskInstance>& suite);

// ---- persistence -------------------------------------------------------------

void write_srcc_csv(std::ostream& out, const SrccStudy& study);
void write_transferability_csv(std::ostream& out, const std::vector<TransferabilityRow>& rows);
void write_runs_csv(std::ostream& out, const std::vector<RunRow>& rows);
std::vector<RunRow> read_runs_csv(std::istream& in);
void write_summary_csv(std::ostream& out, const std::vector<VariantSummary>& summaries);
void write_traces_csv(std::ostream& out, const CompareStudy& study);
void write_transform_csv(std::ostream& out, const std::vector<TransformRow>& rows);

}  // namespace mtco
