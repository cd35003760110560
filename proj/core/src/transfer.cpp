#include "mtco/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mtco {

const char* to_string(Modality modality) {
    switch (modality) {
        case Modality::CompleteSolution: return "complete";
        case Modality::PartialSolution: return "partial";
        case Modality::SolutionEvolution: return "evolution";
    }
    return "complete";
}

Decision adaptive_decision(const VotingState& state, double d) {
    if (!(d >= 0.0 && d <= 1.0)) throw std::invalid_argument("adaptive_decision: d must lie in [0, 1]");
    const double v1 = static_cast<double>(state.in_favor);
    const double v2 = static_cast<double>(state.against);
    const double denom = v1 + v2 + 1.0;
    const double keep = std::abs((v2 + 1.0) / denom - d);
    const double move = std::abs(v2 / denom - d);
    Decision out{move <= keep, state};
    if (out.transfer)
        ++out.state.in_favor;
    else
        ++out.state.against;
    return out;
}

SolutionMatrix solution_evolution_operator(const SolutionMatrix& x_init, const SolutionMatrix& x_best) {
    if (x_init.size() != x_best.size())
        throw std::invalid_argument("solution_evolution_operator: dimension mismatch");
    return x_best * x_init.transposed();
}

Permutation apply_solution_evolution(const SolutionMatrix& o_pi, const Permutation& target_best) {
    if (o_pi.size() != target_best.size())
        throw std::invalid_argument("apply_solution_evolution: dimension mismatch");
    return matrix_to_perm(o_pi * perm_to_matrix(target_best));
}

InvarianceProfile invariance_index(const Permutation& source_best, const Permutation& target_best) {
    if (source_best.size() != target_best.size())
        throw std::invalid_argument("invariance_index: length mismatch");
    const std::size_t n = source_best.size();
    if (n < 2) throw std::invalid_argument("invariance_index: need at least two jobs");
    const auto ps = source_best.position_of();
    const auto pt = target_best.position_of();
    InvarianceProfile out;
    out.h.assign(n, 0.0);
    std::size_t above_half = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t agree = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && (ps[i] < ps[j]) == (pt[i] < pt[j])) ++agree;
        out.h[i] = static_cast<double>(agree) / static_cast<double>(n - 1);
        if (out.h[i] > 0.5) ++above_half;
    }
    if (n < 8)
        out.pt = std::max<std::size_t>(n / 2, 1);
    else
        out.pt = std::min(std::max<std::size_t>(above_half, 4), n / 2);
    return out;
}

PartialTransfer partial_solution_transfer(const Permutation& source_best, const Permutation& target_best,
                                          Evaluator& target) {
    const std::size_t n = target_best.size();
    if (target.instance().jobs() != n)
        throw std::invalid_argument("partial_solution_transfer: target size mismatch");
    const InvarianceProfile prof = invariance_index(source_best, target_best);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return prof.h[a] < prof.h[b]; });
    const std::vector<int> removed(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(prof.pt));

    std::vector<char> is_removed(n, 0);
    for (int j : removed) is_removed[j] = 1;
    std::vector<int> seq;
    seq.reserve(n);
    for (int j : target_best.jobs())
        if (!is_removed[j]) seq.push_back(j);

    PartialTransfer out;
    std::vector<int> cand;
    for (int job : removed) {
        std::size_t best_pos = 0;
        double best_val = std::numeric_limits<double>::infinity();
        for (std::size_t pos = 0; pos <= seq.size(); ++pos) {
            cand = seq;
            cand.insert(cand.begin() + static_cast<std::ptrdiff_t>(pos), job);
            const double v = target(cand);
            if (v < best_val) {
                best_val = v;
                best_pos = pos;
            }
        }
        seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(best_pos), job);
        out.steps.push_back({job, best_pos, best_val});
    }
    out.trial = Permutation(std::move(seq));
    return out;
}

Permutation partial_solution_transfer(const Permutation& source_best, const Permutation& target_best,
                                      const Instance& target) {
    Evaluator eval(target);
    return partial_solution_transfer(source_best, target_best, eval).trial;
}

Permutation complete_solution_transfer(const Permutation& source_best, std::size_t target_jobs) {
    if (source_best.size() != target_jobs)
        throw std::invalid_argument("complete_solution_transfer: dimension mismatch");
    return source_best;
}

}  // namespace mtco
