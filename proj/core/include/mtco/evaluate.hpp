#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "mtco/instance.hpp"
#include "mtco/matrix.hpp"
#include "mtco/permutation.hpp"

namespace mtco {

struct EvalResult {
    double value = 0.0;
    /// completion(i, j) = C(pi(i), j); rows follow sequence positions.
    std::optional<Matrix> completion;
};

enum class KeepCompletion { No, Yes };

/// Objective value of a complete permutation.
EvalResult evaluate(const Instance& instance, const Permutation& perm,
                    KeepCompletion keep = KeepCompletion::No);

/// Objective of a (possibly partial) job sequence, using `scratch` as the
/// rolling completion-time row. Jobs are 0-indexed; no validation.
double objective_of_sequence(const Instance& instance, std::span<const int> sequence,
                             std::vector<double>& scratch);

struct TracePoint {
    std::uint64_t evaluations = 0;
    double best = 0.0;

    friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

/// Counting objective oracle for one search run. Every call to operator()
/// bills one evaluation; complete sequences also update the best-so-far
/// permutation and the convergence trace.
class Evaluator {
public:
    explicit Evaluator(const Instance& instance,
                       std::uint64_t budget = std::numeric_limits<std::uint64_t>::max());

    double operator()(std::span<const int> sequence);
    double operator()(const Permutation& perm) { return (*this)(perm.jobs()); }

    const Instance& instance() const noexcept { return *instance_; }
    std::uint64_t evaluations() const noexcept { return evaluations_; }
    std::uint64_t budget() const noexcept { return budget_; }
    std::uint64_t remaining() const noexcept {
        return evaluations_ >= budget_ ? 0 : budget_ - evaluations_;
    }
    bool exhausted() const noexcept { return evaluations_ >= budget_; }

    bool has_best() const noexcept { return best_.size() != 0; }
    const Permutation& best() const noexcept { return best_; }
    double best_value() const noexcept { return best_value_; }
    const std::vector<TracePoint>& trace() const noexcept { return trace_; }

private:
    const Instance* instance_;
    std::uint64_t budget_;
    std::uint64_t evaluations_ = 0;
    std::vector<double> scratch_;
    Permutation best_;
    double best_value_ = std::numeric_limits<double>::infinity();
    std::vector<TracePoint> trace_;
};

}  // namespace mtco
