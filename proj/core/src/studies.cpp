#include "mtco/studies.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <istream>
#include <cmath>
#include <limits>
#include <numeric>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mtco/distance.hpp"
#include "mtco/error.hpp"
#include "mtco/random.hpp"
#include "mtco/transform.hpp"

namespace mtco {

std::size_t worker_count() {
    const char* env = std::getenv("MTCO_WORKERS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) return 1;
    return static_cast<std::size_t>(v);
}

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body) {
    workers = std::max<std::size_t>(1, std::min(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next = count;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::pair<RunTrace, RunTrace> solve_pair(const Instance& p1, const Instance& p2, const RunConfig& cfg) {
    if (cfg.variant == Variant::Stss) {
        RunConfig c1 = cfg, c2 = cfg;
        c1.rng_seed = task_seed(cfg.rng_seed, 0);
        c2.rng_seed = task_seed(cfg.rng_seed, 1);
        return {run_stss(p1, c1), run_stss(p2, c2)};
    }
    return run_mtco(p1, p2, cfg);
}

namespace {

double pair_distance(const MultiTaskInstance& mt) {
    if (mt.recorded_distance) return *mt.recorded_distance;
    return inter_task_distance(mt.problem2, mt.problem1).normalized;
}

std::uint64_t or_budget(const std::optional<std::uint64_t>& v, std::uint64_t budget) { return v ? *v : budget; }

ErrorSummary mean_summary(const std::vector<ErrorSummary>& s) {
    ErrorSummary out;
    if (s.empty()) return out;
    for (const auto& e : s) {
        out.bre += e.bre;
        out.are += e.are;
        out.wre += e.wre;
    }
    const double n = static_cast<double>(s.size());
    out.bre /= n;
    out.are /= n;
    out.wre /= n;
    return out;
}

using EvalField = std::optional<std::uint64_t> RunRow::*;

// Mean over p_r groups of mean(stss field) / mean(variant field).
std::optional<double> grouped_speedup(const std::vector<RunRow>& rows, Variant v, EvalField stss, EvalField mine) {
    std::map<double, std::pair<double, double>> sums;
    std::map<double, std::size_t> counts;
    for (const auto& r : rows) {
        if (r.variant != v || !(r.*stss) || !(r.*mine)) continue;
        sums[r.p_r].first += static_cast<double>(*(r.*stss));
        sums[r.p_r].second += static_cast<double>(*(r.*mine));
        ++counts[r.p_r];
    }
    double acc = 0.0;
    std::size_t groups = 0;
    for (const auto& [pr, s] : sums) {
        if (s.second <= 0.0) continue;
        acc += s.first / s.second;
        ++groups;
    }
    if (groups == 0) return std::nullopt;
    return acc / static_cast<double>(groups);
}

std::string opt_str(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string(); }

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

SrccStudy study_distance_srcc(const std::vector<MultiTaskInstance>& suite, std::size_t samples, std::uint64_t seed) {
    SrccStudy study;
    study.rows.resize(suite.size());
    parallel_for(suite.size(), worker_count(), [&](std::size_t i) {
        const auto& mt = suite[i];
        study.rows[i] = {i, mt.p_r, pair_distance(mt),
                         spearman_rcc(mt.problem2, mt.problem1, samples, derive_seed(seed, {i}))};
    });
    std::vector<double> x, y;
    for (const auto& r : study.rows) {
        x.push_back(r.distance);
        y.push_back(r.srcc);
    }
    study.fit = linear_fit(x, y);
    return study;
}

std::vector<TransferabilityRow> study_transferability(const std::vector<MultiTaskInstance>& suite,
                                                      std::size_t samples, std::uint64_t seed,
                                                      const RunConfig& source_cfg) {
    std::vector<TransferabilityRow> rows(suite.size());
    parallel_for(suite.size(), worker_count(), [&](std::size_t i) {
        const auto& mt = suite[i];
        RunConfig cfg = source_cfg;
        cfg.variant = Variant::Stss;
        const RunTrace src = run_stss(mt.problem1, cfg);
        rows[i] = {i, mt.p_r, pair_distance(mt), src.best_value,
                   transferability_value(src.best, mt.problem2, samples, derive_seed(seed, {i}))};
    });
    return rows;
}

std::vector<double> best_found(const std::vector<RunRow>& rows, std::size_t instances) {
    std::vector<double> c(2 * instances, std::numeric_limits<double>::infinity());
    for (const auto& r : rows) {
        auto& slot = c.at(2 * r.instance + static_cast<std::size_t>(r.problem) - 1);
        slot = std::min(slot, r.final_value);
    }
    return c;
}

std::vector<VariantSummary> summarize(const std::vector<RunRow>& rows, const std::vector<Variant>& variants,
                                      const std::vector<double>& c_star) {
    const std::size_t instances = c_star.size() / 2;
    std::size_t reps = 0;
    for (const auto& r : rows) reps = std::max(reps, r.rep + 1);
    auto variant_index = [&](Variant v) {
        auto it = std::find(variants.begin(), variants.end(), v);
        if (it == variants.end()) throw std::invalid_argument("summarize: row for a variant outside the study");
        return static_cast<std::size_t>(it - variants.begin());
    };

    // values[a][2 i + k - 1][rep]
    constexpr double missing = std::numeric_limits<double>::quiet_NaN();
    ResultCube cube(variants.size(), std::vector<std::vector<double>>(c_star.size(), std::vector<double>(reps, missing)));
    for (const auto& r : rows)
        cube[variant_index(r.variant)][2 * r.instance + static_cast<std::size_t>(r.problem) - 1][r.rep] = r.final_value;
    for (auto& a : cube)
        for (auto& k : a) std::erase_if(k, [](double v) { return std::isnan(v); });

    const RPSTable scores = rps(cube);
    std::vector<VariantSummary> out;
    const bool have_stss = std::find(variants.begin(), variants.end(), Variant::Stss) != variants.end();
    for (std::size_t a = 0; a < variants.size(); ++a) {
        VariantSummary s;
        s.variant = variants[a];
        s.rps = scores.scores[a];
        std::vector<ErrorSummary> e1, e2;
        for (std::size_t i = 0; i < instances; ++i) {
            if (!cube[a][2 * i].empty()) e1.push_back(relative_errors(cube[a][2 * i], c_star[2 * i]));
            if (!cube[a][2 * i + 1].empty()) e2.push_back(relative_errors(cube[a][2 * i + 1], c_star[2 * i + 1]));
        }
        s.problem1 = mean_summary(e1);
        s.problem2 = mean_summary(e2);
        s.instance = mean_summary({s.problem1, s.problem2});

        if (have_stss) {
            s.speedup = grouped_speedup(rows, variants[a], &RunRow::stss_evals_to_final, &RunRow::evals_to_stss_final);
            s.speedup_to_own_final =
                grouped_speedup(rows, variants[a], &RunRow::stss_evals_to_own_final, &RunRow::evals_to_own_final);
        }
        out.push_back(s);
    }
    return out;
}

CompareStudy study_compare(const std::vector<MultiTaskInstance>& suite, const std::vector<Variant>& variants,
                           std::size_t reps, const RunConfig& cfg,
                           const std::function<std::optional<double>(std::size_t, int)>& optima) {
    if (variants.empty() || reps == 0) throw std::invalid_argument("study_compare: no variants or reps");
    CompareStudy study;
    study.variants = variants;
    const std::size_t nv = variants.size();
    const std::size_t jobs = suite.size() * nv * reps;
    std::vector<std::pair<RunTrace, RunTrace>> results(jobs);
    parallel_for(jobs, worker_count(), [&](std::size_t job) {
        const std::size_t i = job / (nv * reps);
        const std::size_t a = (job / reps) % nv;
        const std::size_t r = job % reps;
        RunConfig c = cfg;
        c.variant = variants[a];
        c.rng_seed = derive_seed(cfg.rng_seed, {i, r});
        results[job] = solve_pair(suite[i].problem1, suite[i].problem2, c);
    });

    const auto stss_it = std::find(variants.begin(), variants.end(), Variant::Stss);
    const bool have_stss = stss_it != variants.end();
    const std::size_t stss_a = static_cast<std::size_t>(stss_it - variants.begin());

    for (std::size_t i = 0; i < suite.size(); ++i) {
        const double d = pair_distance(suite[i]);
        for (std::size_t a = 0; a < nv; ++a) {
            for (std::size_t r = 0; r < reps; ++r) {
                const auto& res = results[(i * nv + a) * reps + r];
                for (int k = 1; k <= 2; ++k) {
                    const RunTrace& t = k == 1 ? res.first : res.second;
                    RunRow row;
                    row.instance = i;
                    row.p_r = suite[i].p_r;
                    row.distance = d;
                    row.variant = variants[a];
                    row.rep = r;
                    row.problem = k;
                    row.final_value = t.best_value;
                    row.evaluations = t.evaluations;
                    row.transfers_fired = static_cast<std::size_t>(
                        std::count_if(t.transfers.begin(), t.transfers.end(), [](const TransferEvent& e) { return e.fired; }));
                    row.transform_accepted = t.transform && t.transform->accepted;
                    if (have_stss) {
                        const auto& sres = results[(i * nv + stss_a) * reps + r];
                        const RunTrace& st = k == 1 ? sres.first : sres.second;
                        const std::uint64_t budget = cfg.budget_for(suite[i].problem1.jobs());
                        row.stss_evals_to_final = or_budget(evaluations_to_reach(st.points, st.best_value), budget);
                        row.evals_to_stss_final = or_budget(evaluations_to_reach(t.points, st.best_value), budget);
                        row.evals_to_own_final = or_budget(evaluations_to_reach(t.points, t.best_value), budget);
                        row.stss_evals_to_own_final = or_budget(evaluations_to_reach(st.points, t.best_value), budget);
                    }
                    study.traces[{i, a, r, k - 1}] = t.points;
                    study.rows.push_back(row);
                }
            }
        }
    }

    study.c_star = best_found(study.rows, suite.size());
    if (optima) {
        for (std::size_t i = 0; i < suite.size(); ++i)
            for (int k = 1; k <= 2; ++k)
                if (auto v = optima(i, k)) study.c_star[2 * i + static_cast<std::size_t>(k) - 1] = *v;
    }
    study.summaries = summarize(study.rows, variants, study.c_star);
    return study;
}

std::vector<TransformRow> study_transform(const std::vector<MultiTaskInstance>& suite) {
    std::vector<TransformRow> rows(suite.size());
    parallel_for(suite.size(), worker_count(), [&](std::size_t i) {
        const auto tp = transform_pair(suite[i].problem1, suite[i].problem2);
        rows[i] = {i, suite[i].p_r, tp.record.d_before, tp.record.d_after, tp.record.accepted};
    });
    return rows;
}

void write_srcc_csv(std::ostream& out, const SrccStudy& study) {
    out << std::setprecision(12);
    out << "instance,p_r,distance,srcc\n";
    for (const auto& r : study.rows) out << r.instance << ',' << r.p_r << ',' << r.distance << ',' << r.srcc << '\n';
}

void write_transferability_csv(std::ostream& out, const std::vector<TransferabilityRow>& rows) {
    out << std::setprecision(12);
    out << "instance,p_r,distance,source_value,rank\n";
    for (const auto& r : rows)
        out << r.instance << ',' << r.p_r << ',' << r.distance << ',' << r.source_value << ',' << r.rank << '\n';
}

void write_runs_csv(std::ostream& out, const std::vector<RunRow>& rows) {
    out << std::setprecision(12);
    out << "instance,p_r,distance,variant,rep,problem,final_value,evaluations,evals_to_stss_final,"
           "stss_evals_to_final,evals_to_own_final,stss_evals_to_own_final,transfers_fired,transform_accepted\n";
    for (const auto& r : rows) {
        out << r.instance << ',' << r.p_r << ',' << r.distance << ',' << to_string(r.variant) << ',' << r.rep << ','
            << r.problem << ',' << r.final_value << ',' << r.evaluations << ',' << opt_str(r.evals_to_stss_final) << ','
            << opt_str(r.stss_evals_to_final) << ',' << opt_str(r.evals_to_own_final) << ','
            << opt_str(r.stss_evals_to_own_final) << ',' << r.transfers_fired << ',' << (r.transform_accepted ? 1 : 0)
            << '\n';
    }
}

std::vector<RunRow> read_runs_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("runs csv: empty input");
    std::vector<RunRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 14) throw DataError("runs csv: line " + std::to_string(line_no) + " has " + std::to_string(f.size()) + " fields");
        try {
            RunRow r;
            r.instance = std::stoull(f[0]);
            r.p_r = std::stod(f[1]);
            r.distance = std::stod(f[2]);
            r.variant = variant_from_string(f[3]);
            r.rep = std::stoull(f[4]);
            r.problem = std::stoi(f[5]);
            if (r.problem != 1 && r.problem != 2) throw std::invalid_argument("problem must be 1 or 2");
            r.final_value = std::stod(f[6]);
            r.evaluations = std::stoull(f[7]);
            if (!f[8].empty()) r.evals_to_stss_final = std::stoull(f[8]);
            if (!f[9].empty()) r.stss_evals_to_final = std::stoull(f[9]);
            if (!f[10].empty()) r.evals_to_own_final = std::stoull(f[10]);
            if (!f[11].empty()) r.stss_evals_to_own_final = std::stoull(f[11]);
            r.transfers_fired = std::stoull(f[12]);
            r.transform_accepted = f[13] == "1";
            rows.push_back(r);
        } catch (const std::exception& e) {
            throw DataError("runs csv: line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<VariantSummary>& summaries) {
    out << std::setprecision(12);
    out << "variant,p1_bre,p1_are,p1_wre,p2_bre,p2_are,p2_wre,bre,are,wre,rps,speedup,speedup_to_own_final\n";
    for (const auto& s : summaries) {
        out << to_string(s.variant) << ',' << s.problem1.bre << ',' << s.problem1.are << ',' << s.problem1.wre << ','
            << s.problem2.bre << ',' << s.problem2.are << ',' << s.problem2.wre << ',' << s.instance.bre << ','
            << s.instance.are << ',' << s.instance.wre << ',' << s.rps << ',';
        if (s.speedup) out << *s.speedup;
        out << ',';
        if (s.speedup_to_own_final) out << *s.speedup_to_own_final;
        out << '\n';
    }
}

void write_traces_csv(std::ostream& out, const CompareStudy& study) {
    out << std::setprecision(12);
    out << "instance,variant,rep,problem,evaluations,best\n";
    for (const auto& [key, points] : study.traces) {
        const auto& [i, a, r, k] = key;
        for (const auto& p : points)
            out << i << ',' << to_string(study.variants[a]) << ',' << r << ',' << k + 1 << ',' << p.evaluations << ','
                << p.best << '\n';
    }
}

void write_transform_csv(std::ostream& out, const std::vector<TransformRow>& rows) {
    out << std::setprecision(12);
    out << "instance,p_r,d_before,d_after,accepted\n";
    for (const auto& r : rows)
        out << r.instance << ',' << r.p_r << ',' << r.d_before << ',' << r.d_after << ',' << (r.accepted ? 1 : 0) << '\n';
}

}  // namespace mtco
