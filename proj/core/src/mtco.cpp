#include "mtco/mtco.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mtco/random.hpp"

namespace mtco {

std::string_view to_string(Variant variant) {
    switch (variant) {
        case Variant::Mtco: return "MTCO";
        case Variant::Stss: return "STSS";
        case Variant::MtcoPartial: return "MTCO-p";
        case Variant::MtcoComplete: return "MTCO-c";
        case Variant::MtcoEvolution: return "MTCO-e";
        case Variant::MtcoFixedDistance: return "MTCO-Dfixed";
        case Variant::MtcoNoTransform: return "MTCO-noPT";
    }
    return "MTCO";
}

Variant variant_from_string(std::string_view text) {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "mtco") return Variant::Mtco;
    if (s == "stss") return Variant::Stss;
    if (s == "mtco-p") return Variant::MtcoPartial;
    if (s == "mtco-c") return Variant::MtcoComplete;
    if (s == "mtco-e") return Variant::MtcoEvolution;
    if (s == "mtco-dfixed") return Variant::MtcoFixedDistance;
    if (s == "mtco-nopt") return Variant::MtcoNoTransform;
    throw std::invalid_argument("unknown variant: " + std::string(text));
}

std::uint64_t RunConfig::budget_for(std::size_t jobs) const {
    if (max_evals) return *max_evals;
    const auto n = static_cast<std::uint64_t>(jobs);
    return std::max<std::uint64_t>(200 * n * (n > 0 ? n - 1 : 0), 1);
}

std::optional<std::uint64_t> evaluations_to_reach(const std::vector<TracePoint>& trace, double target) {
    for (const auto& p : trace)
        if (p.best <= target) return p.evaluations;
    return std::nullopt;
}

namespace {

constexpr std::array<Modality, 3> kTransferOrder{Modality::CompleteSolution, Modality::PartialSolution,
                                                 Modality::SolutionEvolution};

std::array<bool, 3> enabled_modalities(Variant v) {
    switch (v) {
        case Variant::Stss: return {false, false, false};
        case Variant::MtcoComplete: return {true, false, false};
        case Variant::MtcoPartial: return {false, true, false};
        case Variant::MtcoEvolution: return {false, false, true};
        default: return {true, true, true};
    }
}

void validate(const RunConfig& cfg) {
    if (cfg.n_trial < 4) throw std::invalid_argument("RunConfig: n_trial must be at least 4");
    if (cfg.rs_size < 2) throw std::invalid_argument("RunConfig: rs_size must be at least 2");
    if (!(cfg.boundary >= 0.0 && cfg.boundary <= 1.0)) throw std::invalid_argument("RunConfig: boundary outside [0, 1]");
    if (!(cfg.fixed_distance >= 0.0 && cfg.fixed_distance <= 1.0))
        throw std::invalid_argument("RunConfig: fixed_distance outside [0, 1]");
}

struct Trial {
    Permutation perm;
    double value;
};

// One problem's scatter search state.
class Task {
public:
    Task(const Instance& inst, const RunConfig& cfg, std::uint64_t seed)
        : inst_(inst),
          cfg_(cfg),
          eval_(inst_, cfg.budget_for(inst.jobs())),
          rng_(seed),
          rs_(cfg.rs_size),
          sa_(SAParams::defaults_for(inst)),
          temperature_(sa_.t0) {}

    void initialise() {
        auto pop = diversification_generation(eval_, cfg_.n_trial, rng_, cfg_.neh_variants);
        for (auto& p : pop) {
            if (eval_.exhausted()) break;
            rs_.offer(p, eval_(p));
        }
        if (rs_.empty()) {
            // Budget too small even for one constructive pass; fall back to
            // whatever the evaluator saw, or the identity.
            Permutation p = eval_.has_best() ? eval_.best() : Permutation::identity(inst_.jobs());
            rs_.offer(p, evaluate(inst_, p).value);
        }
        anchor_ = perm_to_matrix(rs_.best().perm);
    }

    bool active() const { return !eval_.exhausted(); }
    std::uint64_t evaluations() const { return eval_.evaluations(); }
    std::uint64_t remaining() const { return eval_.remaining(); }
    const Permutation& best() const { return rs_.best().perm; }
    double best_value() const { return rs_.best().value; }
    Evaluator& evaluator() { return eval_; }
    const Evaluator& evaluator() const { return eval_; }

    /// O_pi from the reference-set anchor to the current best.
    SolutionMatrix evolution() const { return solution_evolution_operator(anchor_, perm_to_matrix(best())); }

    std::optional<Trial> evaluate_trial(Permutation p) {
        if (p == best()) return Trial{std::move(p), best_value()};
        if (eval_.exhausted()) return std::nullopt;
        const double v = eval_(p);
        return Trial{std::move(p), v};
    }

    std::vector<Trial> combination_trials() {
        std::vector<Trial> out;
        if (rs_.size() < 2) {
            if (auto t = evaluate_trial(insert_neighbor(best(), rng_))) out.push_back(std::move(*t));
            return out;
        }
        const auto pairs = subset_generation(rs_);
        auto combine = [&](std::pair<std::size_t, std::size_t> ij) {
            Permutation c = solution_combination(rs_[ij.first].perm, rs_[ij.second].perm, rng_);
            if (eval_.exhausted()) return;
            const double v = eval_(c);
            out.push_back({std::move(c), v});
        };
        if (cfg_.subset_mode == SubsetMode::RoundRobin) {
            combine(pairs[cursor_ % pairs.size()]);
            ++cursor_;
        } else {
            for (const auto& ij : pairs) combine(ij);
        }
        return out;
    }

    void improve_and_update(std::vector<Trial>& trials) {
        if (trials.empty()) return;
        auto best_it = std::min_element(trials.begin(), trials.end(),
                                        [](const Trial& a, const Trial& b) { return a.value < b.value; });
        const Trial start = *best_it;
        for (const auto& t : trials) rs_.offer(t.perm, t.value);
        if (eval_.exhausted() || inst_.jobs() < 2) return;
        SAParams params = sa_;
        params.t0 = temperature_;
        const std::uint64_t block = sa_.steps;
        const std::uint64_t budget = std::min<std::uint64_t>(block * cfg_.sa_blocks, eval_.remaining());
        const SAResult r = simulated_annealing(eval_, start.perm, params, budget, rng_, start.value);
        temperature_ *= std::pow(sa_.lambda, static_cast<double>(cfg_.sa_blocks));
        rs_.offer(r.best, r.best_value);
    }

    Rng& rng() { return rng_; }

private:
    const Instance& inst_;
    const RunConfig& cfg_;
    Evaluator eval_;
    Rng rng_;
    ReferenceSet rs_;
    SAParams sa_;
    double temperature_;
    std::size_t cursor_ = 0;
    SolutionMatrix anchor_;
};

void step_single(Task& task) {
    auto trials = task.combination_trials();
    task.improve_and_update(trials);
}

RunTrace finish(const Task& task, const Instance& original, const SolutionMatrix& o, Variant variant) {
    RunTrace t;
    t.variant = variant;
    t.points = task.evaluator().trace();
    t.evaluations = task.evaluations();
    const Permutation& found = task.evaluator().has_best() ? task.evaluator().best() : task.best();
    const Permutation mapped = inverse_map_solution(found, o);
    std::vector<int> jobs;
    jobs.reserve(original.jobs());
    for (int j : mapped.jobs())
        if (static_cast<std::size_t>(j) < original.jobs()) jobs.push_back(j);
    t.best = Permutation(std::move(jobs));
    t.best_value = evaluate(original, t.best).value;
    return t;
}

}  // namespace

std::uint64_t task_seed(std::uint64_t seed, int problem) {
    return derive_seed(seed, {static_cast<std::uint64_t>(problem)});
}

RunTrace run_stss(const Instance& inst, const RunConfig& cfg) {
    validate(cfg);
    Task task(inst, cfg, cfg.rng_seed);
    task.initialise();
    while (task.active()) {
        const auto before = task.evaluations();
        step_single(task);
        if (task.evaluations() == before) break;
    }
    return finish(task, inst, SolutionMatrix::identity(inst.jobs()), Variant::Stss);
}

std::pair<RunTrace, RunTrace> run_mtco(const Instance& p1, const Instance& p2, const RunConfig& cfg) {
    validate(cfg);
    auto [a1, a2] = augment_dimensions(p1, p2);
    if (a1.jobs() != a2.jobs() || a1.machines() != a2.machines())
        throw std::logic_error("run_mtco: dimensions disagree after augmentation");

    const DistanceReport report = inter_task_distance(p2, p1);
    const std::size_t n = a1.jobs();
    TransformRecord record{SolutionMatrix::identity(n), SolutionMatrix::identity(n), false, report.normalized,
                           report.normalized};
    Instance s1 = a1;
    Instance s2 = a2;
    const bool may_transform = cfg.variant != Variant::Stss && cfg.variant != Variant::MtcoNoTransform;
    if (may_transform && report.normalized > cfg.boundary) {
        TransformedPair tp = transform_pair(a1, a2);
        record = tp.record;
        if (record.accepted) {
            s1 = std::move(tp.p);
            s2 = std::move(tp.q);
        }
    }
    const double d_search = record.accepted ? record.d_after : report.normalized;
    const double d_vote = cfg.variant == Variant::MtcoFixedDistance ? cfg.fixed_distance : d_search;
    const auto enabled = enabled_modalities(cfg.variant);

    std::array<Task, 2> tasks{Task(s1, cfg, task_seed(cfg.rng_seed, 0)), Task(s2, cfg, task_seed(cfg.rng_seed, 1))};
    tasks[0].initialise();
    tasks[1].initialise();
    // votes[receiver][modality]
    std::array<std::array<VotingState, 3>, 2> votes{};
    std::array<std::vector<TransferEvent>, 2> log;

    while (tasks[0].active() || tasks[1].active()) {
        const auto before = tasks[0].evaluations() + tasks[1].evaluations();
        const std::array<Permutation, 2> src_best{tasks[0].best(), tasks[1].best()};
        const std::array<SolutionMatrix, 2> src_evo{tasks[0].evolution(), tasks[1].evolution()};

        for (int t = 0; t < 2; ++t) {
            Task& task = tasks[t];
            if (!task.active()) continue;
            const int s = 1 - t;
            auto trials = task.combination_trials();
            for (std::size_t k = 0; k < kTransferOrder.size(); ++k) {
                if (!enabled[k] || !task.active()) continue;
                const Decision dec = adaptive_decision(votes[t][k], d_vote);
                votes[t][k] = dec.state;
                log[t].push_back({kTransferOrder[k], s, t, dec.transfer, task.evaluations()});
                if (!dec.transfer) continue;
                std::optional<Trial> trial;
                switch (kTransferOrder[k]) {
                    case Modality::CompleteSolution:
                        trial = task.evaluate_trial(complete_solution_transfer(src_best[s], n));
                        break;
                    case Modality::PartialSolution: {
                        if (n < 2) break;
                        const std::size_t pt = invariance_index(src_best[s], task.best()).pt;
                        std::uint64_t cost = 0;
                        for (std::size_t r = 0; r < pt; ++r) cost += n - pt + r + 1;
                        if (task.remaining() < cost) break;
                        PartialTransfer pr = partial_solution_transfer(src_best[s], task.best(), task.evaluator());
                        const double v = pr.steps.empty() ? task.best_value() : pr.steps.back().value;
                        trial = Trial{std::move(pr.trial), v};
                        break;
                    }
                    case Modality::SolutionEvolution:
                        trial = task.evaluate_trial(apply_solution_evolution(src_evo[s], task.best()));
                        break;
                }
                if (trial) trials.push_back(std::move(*trial));
            }
            task.improve_and_update(trials);
        }
        if (tasks[0].evaluations() + tasks[1].evaluations() == before) break;
    }

    RunTrace r1 = finish(tasks[0], p1, record.o_p, cfg.variant);
    RunTrace r2 = finish(tasks[1], p2, record.o_q, cfg.variant);
    r1.transfers = std::move(log[0]);
    r2.transfers = std::move(log[1]);
    r1.distance = r2.distance = report;
    r1.transform = r2.transform = record;
    return {std::move(r1), std::move(r2)};
}

std::pair<RunTrace, RunTrace> run_ablation(const Instance& p1, const Instance& p2, const RunConfig& cfg) {
    if (cfg.variant != Variant::MtcoPartial && cfg.variant != Variant::MtcoComplete &&
        cfg.variant != Variant::MtcoEvolution)
        throw std::invalid_argument("run_ablation: variant must be MTCO-p, MTCO-c or MTCO-e");
    return run_mtco(p1, p2, cfg);
}

}  // namespace mtco
