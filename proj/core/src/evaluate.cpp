#include "mtco/evaluate.hpp"

#include <algorithm>
#include <stdexcept>

namespace mtco {

namespace {

// Appends `job` to the rolling completion row. The first job has no
// predecessor, so its row is a plain prefix sum (no max against zero, which
// matters once shifted instances carry negative times).
void advance(const Instance& inst, int job, std::vector<double>& c, bool first) {
    auto p = inst.processing().row(static_cast<std::size_t>(job));
    if (first) {
        c[0] = p[0];
        for (std::size_t j = 1; j < c.size(); ++j) c[j] = c[j - 1] + p[j];
        return;
    }
    c[0] += p[0];
    for (std::size_t j = 1; j < c.size(); ++j) c[j] = std::max(c[j], c[j - 1]) + p[j];
}

}  // namespace

double objective_of_sequence(const Instance& inst, std::span<const int> sequence,
                             std::vector<double>& c) {
    c.assign(inst.machines(), 0.0);
    const std::size_t last = inst.machines() - 1;
    double acc = 0.0;
    bool first = true;
    switch (inst.objective()) {
        case Objective::Makespan:
            for (int job : sequence) {
                advance(inst, job, c, first);
                first = false;
            }
            return c[last];
        case Objective::TotalCompletion:
            for (int job : sequence) {
                advance(inst, job, c, first);
                first = false;
                acc += c[last];
            }
            return acc;
        case Objective::TardyCount: {
            const auto& due = *inst.due();
            for (int job : sequence) {
                advance(inst, job, c, first);
                first = false;
                if (c[last] > due[static_cast<std::size_t>(job)]) acc += 1.0;
            }
            return acc;
        }
    }
    return acc;
}

EvalResult evaluate(const Instance& inst, const Permutation& perm, KeepCompletion keep) {
    if (perm.size() != inst.jobs()) throw std::invalid_argument("evaluate: permutation size != jobs");
    EvalResult out;
    std::vector<double> c;
    if (keep == KeepCompletion::No) {
        out.value = objective_of_sequence(inst, perm.jobs(), c);
        return out;
    }
    Matrix comp(inst.jobs(), inst.machines());
    c.assign(inst.machines(), 0.0);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        advance(inst, perm[i], c, i == 0);
        std::copy(c.begin(), c.end(), comp.row(i).begin());
    }
    out.value = objective_of_sequence(inst, perm.jobs(), c);
    out.completion = std::move(comp);
    return out;
}

Evaluator::Evaluator(const Instance& instance, std::uint64_t budget)
    : instance_(&instance), budget_(budget) {}

double Evaluator::operator()(std::span<const int> sequence) {
    const double v = objective_of_sequence(*instance_, sequence, scratch_);
    ++evaluations_;
    if (sequence.size() == instance_->jobs() && v < best_value_) {
        best_value_ = v;
        best_ = Permutation(std::vector<int>(sequence.begin(), sequence.end()));
        trace_.push_back({evaluations_, v});
    }
    return v;
}

}  // namespace mtco
