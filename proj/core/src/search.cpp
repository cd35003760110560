#include "mtco/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

namespace mtco {

namespace {

std::vector<int> iota_jobs(std::size_t n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

// Stable sort of job indices by descending key; lower index wins ties.
std::vector<int> descending_by(const std::vector<double>& key) {
    auto order = iota_jobs(key.size());
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key[a] > key[b]; });
    return order;
}

double factorial_capped(std::size_t n) {
    double f = 1.0;
    for (std::size_t k = 2; k <= n && f < 1e18; ++k) f *= static_cast<double>(k);
    return f;
}

}  // namespace

Permutation insertion_construct(Evaluator& eval, const std::vector<int>& order) {
    const std::size_t n = eval.instance().jobs();
    if (order.size() != n) throw std::invalid_argument("insertion_construct: order size mismatch");
    std::vector<int> seq;
    seq.reserve(n);
    std::vector<int> cand;
    for (int job : order) {
        if (seq.empty()) {
            seq.push_back(job);
            if (n == 1) eval(seq);
            continue;
        }
        std::size_t best_pos = 0;
        double best_val = std::numeric_limits<double>::infinity();
        for (std::size_t pos = 0; pos <= seq.size(); ++pos) {
            cand = seq;
            cand.insert(cand.begin() + static_cast<std::ptrdiff_t>(pos), job);
            const double v = eval(cand);
            if (v < best_val) {
                best_val = v;
                best_pos = pos;
            }
        }
        seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(best_pos), job);
    }
    return Permutation(std::move(seq));
}

Permutation neh(Evaluator& eval) {
    const Instance& inst = eval.instance();
    std::vector<double> total(inst.jobs());
    for (std::size_t i = 0; i < inst.jobs(); ++i) {
        auto r = inst.processing().row(i);
        total[i] = std::accumulate(r.begin(), r.end(), 0.0);
    }
    return insertion_construct(eval, descending_by(total));
}

Permutation neh(const Instance& inst) {
    Evaluator eval(inst);
    return neh(eval);
}

std::vector<int> johnson_order(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("johnson_order: length mismatch");
    std::vector<int> first, second;
    for (std::size_t i = 0; i < a.size(); ++i) (a[i] < b[i] ? first : second).push_back(static_cast<int>(i));
    std::stable_sort(first.begin(), first.end(), [&](int x, int y) { return a[x] < a[y]; });
    std::stable_sort(second.begin(), second.end(), [&](int x, int y) { return b[x] > b[y]; });
    first.insert(first.end(), second.begin(), second.end());
    return first;
}

Permutation cds(Evaluator& eval) {
    const Instance& inst = eval.instance();
    const std::size_t n = inst.jobs();
    const std::size_t m = inst.machines();
    if (m < 2) throw std::invalid_argument("cds: needs at least two machines");
    std::vector<double> a(n), b(n);
    std::vector<int> best;
    double best_val = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < m; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            double sa = 0.0, sb = 0.0;
            for (std::size_t j = 0; j < k; ++j) sa += inst.p(i, j);
            for (std::size_t j = m - k; j < m; ++j) sb += inst.p(i, j);
            a[i] = sa;
            b[i] = sb;
        }
        auto order = johnson_order(a, b);
        const double v = eval(order);
        if (v < best_val) {
            best_val = v;
            best = std::move(order);
        }
    }
    return Permutation(std::move(best));
}

Permutation cds(const Instance& inst) {
    Evaluator eval(inst);
    return cds(eval);
}

std::vector<int> kk_priority_order(const Instance& inst) {
    const std::size_t n = inst.jobs();
    const double m = static_cast<double>(inst.machines());
    const double base = (m - 1.0) * (m - 2.0) / 2.0;
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        double a = 0.0, b = 0.0;
        for (std::size_t j = 0; j < inst.machines(); ++j) {
            const double jj = static_cast<double>(j + 1);
            a += (base + m - jj) * inst.p(i, j);
            b += (base + jj - 1.0) * inst.p(i, j);
        }
        c[i] = std::min(a, b);
    }
    return descending_by(c);
}

std::vector<int> mean_deviation_order(const Instance& inst) {
    const std::size_t n = inst.jobs();
    const double m = static_cast<double>(inst.machines());
    std::vector<double> key(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = inst.processing().row(i);
        const double mu = std::accumulate(r.begin(), r.end(), 0.0) / m;
        double ss = 0.0;
        for (double v : r) ss += (v - mu) * (v - mu);
        key[i] = mu + std::sqrt(ss / m);
    }
    return descending_by(key);
}

std::vector<int> first_machine_order(const Instance& inst) {
    std::vector<double> key(inst.jobs());
    for (std::size_t i = 0; i < inst.jobs(); ++i) key[i] = inst.p(i, 0);
    return descending_by(key);
}

std::vector<int> last_machine_order(const Instance& inst) {
    std::vector<double> key(inst.jobs());
    for (std::size_t i = 0; i < inst.jobs(); ++i) key[i] = inst.p(i, inst.machines() - 1);
    return descending_by(key);
}

Permutation randomized_insertion(Evaluator& eval, Rng& rng) {
    const Permutation order = rng.permutation(eval.instance().jobs());
    return insertion_construct(eval, std::vector<int>(order.jobs().begin(), order.jobs().end()));
}

std::vector<Permutation> diversification_generation(Evaluator& eval, std::size_t n_trial, Rng& rng,
                                                    NehVariantOrders variants) {
    if (n_trial < 4) throw std::invalid_argument("diversification_generation: n_trial must be at least 4");
    const Instance& inst = eval.instance();
    const std::size_t n = inst.jobs();
    const bool allow_duplicates = factorial_capped(n) < static_cast<double>(n_trial);

    std::vector<Permutation> out;
    std::set<Permutation> seen;
    auto add = [&](Permutation p) {
        if (seen.insert(p).second || allow_duplicates) out.push_back(std::move(p));
    };

    // A constructor only starts when its whole evaluation cost fits the budget.
    const std::uint64_t insertion_cost = n == 1 ? 1 : n * (n + 1) / 2 - 1;
    const std::uint64_t cds_cost = inst.machines() >= 2 ? inst.machines() - 1 : insertion_cost;
    auto fits = [&](std::uint64_t cost) { return eval.remaining() >= cost; };

    if (fits(insertion_cost)) add(neh(eval));
    if (fits(cds_cost)) add(inst.machines() >= 2 ? cds(eval) : neh(eval));
    const bool kk = variants == NehVariantOrders::Priority;
    if (fits(insertion_cost))
        add(insertion_construct(eval, kk ? kk_priority_order(inst) : first_machine_order(inst)));
    if (fits(insertion_cost))
        add(insertion_construct(eval, kk ? mean_deviation_order(inst) : last_machine_order(inst)));

    constexpr int constructive_retries = 3;
    constexpr int random_retries = 100;
    while (out.size() < n_trial && fits(insertion_cost)) {
        bool placed = false;
        for (int r = 0; r < constructive_retries && !placed && fits(insertion_cost); ++r) {
            Permutation p = randomized_insertion(eval, rng);
            if (!seen.contains(p)) {
                add(std::move(p));
                placed = true;
            }
        }
        for (int r = 0; r < random_retries && !placed; ++r) {
            Permutation p = rng.permutation(n);
            if (!seen.contains(p)) {
                add(std::move(p));
                placed = true;
            }
        }
        if (!placed) {
            if (!allow_duplicates) break;
            out.push_back(rng.permutation(n));
        }
    }
    return out;
}

ReferenceSet::ReferenceSet(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw std::invalid_argument("ReferenceSet: capacity must be positive");
}

bool ReferenceSet::offer(const Permutation& perm, double value) {
    if (members_.size() >= capacity_ && value >= members_.back().value) return false;
    for (const auto& m : members_)
        if (m.perm == perm) return false;
    auto it = std::upper_bound(members_.begin(), members_.end(), value,
                               [](double v, const Member& m) { return v < m.value; });
    members_.insert(it, Member{perm, value});
    if (members_.size() > capacity_) members_.pop_back();
    return true;
}

ReferenceSet update_reference_set(ReferenceSet rs, const Member& candidate) {
    rs.offer(candidate.perm, candidate.value);
    return rs;
}

std::vector<std::pair<std::size_t, std::size_t>> subset_generation(const ReferenceSet& rs) {
    if (rs.size() < 2) throw std::invalid_argument("subset_generation: need at least two members");
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(rs.size() * (rs.size() - 1) / 2);
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = i + 1; j < rs.size(); ++j) out.emplace_back(i, j);
    return out;
}

Permutation solution_combination(const Permutation& better, const Permutation& worse, Rng& rng) {
    const std::size_t n = better.size();
    if (worse.size() != n) throw std::invalid_argument("solution_combination: length mismatch");
    if (n == 0) return better;
    const auto pos_b = better.position_of();
    const auto pos_w = worse.position_of();
    std::vector<char> used(n, 0);
    std::vector<int> out;
    out.reserve(n);
    auto proposal = [&](const Permutation& parent, const std::vector<int>& pos) {
        const std::size_t start = static_cast<std::size_t>(pos[out.back()]);
        for (std::size_t k = 1; k <= n; ++k) {
            const int job = parent[(start + k) % n];
            if (!used[job]) return job;
        }
        return -1;
    };
    out.push_back(better[0]);
    used[better[0]] = 1;
    while (out.size() < n) {
        const int a = proposal(better, pos_b);
        const int b = proposal(worse, pos_w);
        const int pick = (a == b || rng.uniform01() < 0.5) ? a : b;
        out.push_back(pick);
        used[pick] = 1;
    }
    return Permutation(std::move(out));
}

Permutation insert_move(const Permutation& pi, std::size_t front, std::size_t back) {
    if (front >= back || back >= pi.size()) throw std::invalid_argument("insert_move: need front < back < n");
    std::vector<int> v(pi.jobs().begin(), pi.jobs().end());
    const int job = v[back];
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(back));
    v.insert(v.begin() + static_cast<std::ptrdiff_t>(front), job);
    return Permutation(std::move(v));
}

Permutation insert_neighbor(const Permutation& pi, Rng& rng) {
    const auto n = static_cast<std::int64_t>(pi.size());
    if (n < 2) throw std::invalid_argument("insert_neighbor: need at least two jobs");
    const std::int64_t a = rng.uniform_int(0, n - 1);
    std::int64_t b = rng.uniform_int(0, n - 2);
    if (b >= a) ++b;
    return insert_move(pi, static_cast<std::size_t>(std::min(a, b)), static_cast<std::size_t>(std::max(a, b)));
}

SAParams SAParams::defaults_for(const Instance& inst) {
    SAParams p;
    const double n = static_cast<double>(inst.jobs());
    const double m = static_cast<double>(inst.machines());
    p.t0 = inst.processing().sum() / (10.0 * n * m);
    if (!(p.t0 > 0.0)) p.t0 = 1.0;
    p.lambda = 0.9;
    p.steps = std::max<std::size_t>(inst.jobs() * (inst.jobs() - 1), 1);
    return p;
}

double acceptance_probability(double delta, double temperature) {
    if (delta <= 0.0) return 1.0;
    if (!(temperature > 0.0)) return 0.0;
    return std::min(1.0, std::exp(-delta / temperature));
}

SAResult simulated_annealing(Evaluator& eval, const Permutation& start, const SAParams& params,
                             std::uint64_t budget, Rng& rng, std::optional<double> start_value) {
    if (!(params.t0 > 0.0) || !(params.lambda > 0.0 && params.lambda < 1.0) || params.steps == 0)
        throw std::invalid_argument("simulated_annealing: invalid parameters");
    SAResult out;
    std::uint64_t used = 0;
    double cur_val;
    if (start_value) {
        cur_val = *start_value;
    } else {
        cur_val = eval(start);
        ++used;
    }
    Permutation cur = start;
    out.best = start;
    out.best_value = cur_val;
    out.trace.push_back({eval.evaluations(), cur_val});
    if (start.size() < 2) return out;

    double temperature = params.t0;
    while (used < budget && !eval.exhausted()) {
        for (std::size_t s = 0; s < params.steps && used < budget && !eval.exhausted(); ++s) {
            Permutation cand = insert_neighbor(cur, rng);
            const double v = eval(cand);
            ++used;
            const double delta = v - cur_val;
            if (delta <= 0.0 || rng.uniform01() < acceptance_probability(delta, temperature)) {
                cur = std::move(cand);
                cur_val = v;
                if (cur_val < out.best_value) {
                    out.best = cur;
                    out.best_value = cur_val;
                    out.trace.push_back({eval.evaluations(), cur_val});
                }
            }
        }
        temperature *= params.lambda;
    }
    return out;
}

}  // namespace mtco
