#include "mtco/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mtco/error.hpp"
#include "mtco/evaluate.hpp"
#include "mtco/hungarian.hpp"
#include "mtco/random.hpp"

namespace mtco {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

// Centred norm small enough to call the matrix constant.
bool is_flat(const Matrix& original, double centred_norm) {
    double scale = 1.0;
    for (double v : original.values()) scale = std::max(scale, std::abs(v));
    return centred_norm <= 1e-12 * scale * std::sqrt(static_cast<double>(original.size()));
}

std::vector<double> average_ranks(std::span<const double> x) {
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> rank(x.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = r;
        i = j + 1;
    }
    return rank;
}

}  // namespace

Matrix center(const Matrix& p) {
    Matrix out = p;
    const double mu = p.mean();
    for (double& v : out.values()) v -= mu;
    return out;
}

ScaleShift fit_scale_shift(const Matrix& q, const Matrix& p) {
    require_same_shape(q, p, "fit_scale_shift");
    const Matrix pc = center(p);
    const double pp = inner(pc, pc);
    if (is_flat(p, std::sqrt(pp))) throw DegenerateSourceError("fit_scale_shift: source matrix is constant");
    const Matrix qc = center(q);
    const double t0 = inner(qc, pc) / pp;
    ScaleShift out;
    out.t_star = std::max(t0, 0.0);
    out.b_star = (q.sum() - out.t_star * p.sum()) / static_cast<double>(q.size());
    return out;
}

DistanceReport normalized_distance(const Matrix& q, const Matrix& p) {
    require_same_shape(q, p, "normalized_distance");
    DistanceReport r;
    const Dimensions dims{q.rows(), q.cols()};
    r.preprocessing.q_original = r.preprocessing.p_original = r.preprocessing.common = dims;

    const Matrix qc = center(q);
    const Matrix pc = center(p);
    const double nq = qc.frobenius_norm();
    const double np = pc.frobenius_norm();
    const bool q_flat = is_flat(q, nq);
    const bool p_flat = is_flat(p, np);

    if (q_flat || p_flat) {
        r.t_star = 0.0;
        r.b_star = q.mean();
        r.raw = nq;
        r.normalized = (q_flat && p_flat) ? 0.0 : 1.0;
        return r;
    }

    const double t0 = inner(qc, pc) / inner(pc, pc);
    r.t_star = std::max(t0, 0.0);
    r.b_star = (q.sum() - r.t_star * p.sum()) / static_cast<double>(q.size());

    double acc = 0.0;
    auto qv = qc.values();
    auto pv = pc.values();
    for (std::size_t k = 0; k < qv.size(); ++k) {
        const double e = qv[k] - r.t_star * pv[k];
        acc += e * e;
    }
    r.raw = std::sqrt(acc);
    if (r.raw == 0.0) {
        r.normalized = 0.0;
        return r;
    }
    // Equal to (1 - cos) / sin of the angle between Q* and P*, without the
    // cancellation near zero.
    r.normalized = std::clamp(r.raw / (nq + r.t_star * np), 0.0, 1.0);
    return r;
}

std::pair<Instance, Instance> augment_dimensions(const Instance& q, const Instance& p) {
    const std::size_t n = std::max(q.jobs(), p.jobs());
    const std::size_t m = std::max(q.machines(), p.machines());
    auto pad = [n, m](const Instance& inst) {
        if (inst.jobs() == n && inst.machines() == m) return inst;
        Matrix mat(n, m, 0.0);
        for (std::size_t i = 0; i < inst.jobs(); ++i)
            for (std::size_t j = 0; j < inst.machines(); ++j) mat(i, j) = inst.p(i, j);
        std::optional<std::vector<double>> due;
        if (inst.due()) {
            due = *inst.due();
            const double never = *std::max_element(due->begin(), due->end()) + inst.processing().sum() + 1.0;
            due->resize(n, never);
        }
        return Instance(std::move(mat), inst.objective(), std::move(due),
                        inst.allows_negative() ? Instance::Sign::AllowNegative : Instance::Sign::NonNegative);
    };
    return {pad(q), pad(p)};
}

Matrix row_correlation(const Matrix& q, const Matrix& p) {
    if (q.cols() != p.cols()) throw std::invalid_argument("row_correlation: column count mismatch");
    Matrix s(q.rows(), p.rows());
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < p.rows(); ++j) s(i, j) = pearson(q.row(i), p.row(j));
    return s;
}

MatchingResult match_jobs(const Instance& q, const Instance& p) {
    if (q.jobs() != p.jobs() || q.machines() != p.machines())
        throw std::invalid_argument("match_jobs: augment dimensions first");
    // Row i of X_Q * Q is Q's row col(i); it should line up with P's row i.
    const Matrix s = row_correlation(q.processing(), p.processing());
    const Assignment a = max_weight_assignment(s.transposed());
    return {SolutionMatrix(a.column_of_row), a.total};
}

DistanceReport inter_task_distance(const Instance& q, const Instance& p, bool align_jobs) {
    auto [qa, pa] = augment_dimensions(q, p);
    std::optional<SolutionMatrix> matching;
    if (align_jobs) {
        matching = match_jobs(qa, pa).assignment;
        qa = row_transform(*matching, qa);
    }
    DistanceReport r = normalized_distance(specification_matrix(qa), specification_matrix(pa));
    r.preprocessing.q_original = {q.jobs(), q.machines()};
    r.preprocessing.p_original = {p.jobs(), p.machines()};
    r.preprocessing.common = {qa.jobs(), qa.machines()};
    r.preprocessing.padded = !(r.preprocessing.q_original == r.preprocessing.common &&
                               r.preprocessing.p_original == r.preprocessing.common);
    r.preprocessing.job_matching = std::move(matching);
    return r;
}

double precedence_distance(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw std::invalid_argument("precedence_distance: length mismatch");
    const std::size_t n = a.size();
    if (n < 2) return 0.0;
    const auto pa = a.position_of();
    const auto pb = b.position_of();
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if ((pa[i] < pa[j]) != (pb[i] < pb[j])) ++count;
    return 2.0 * static_cast<double>(count) / static_cast<double>(n * (n - 1));
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    return pearson(rx, ry);
}

double spearman_rcc(const Instance& q, const Instance& p, std::size_t samples, std::uint64_t seed) {
    if (samples < 2) throw std::invalid_argument("spearman_rcc: need at least two samples");
    if (q.jobs() != p.jobs()) throw std::invalid_argument("spearman_rcc: job count mismatch");
    Rng rng(seed);
    std::vector<double> fq(samples), fp(samples), scratch;
    std::vector<int> seq(q.jobs());
    std::iota(seq.begin(), seq.end(), 0);
    for (std::size_t s = 0; s < samples; ++s) {
        rng.shuffle(seq);
        fq[s] = objective_of_sequence(q, seq, scratch);
        fp[s] = objective_of_sequence(p, seq, scratch);
    }
    return spearman(fq, fp);
}

}  // namespace mtco
