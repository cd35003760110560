#include "mtco/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mtco/evaluate.hpp"
#include "mtco/random.hpp"

namespace mtco {

ErrorSummary relative_errors(std::span<const double> results, double c_star) {
    if (!(c_star > 0.0)) throw std::invalid_argument("relative_errors: c_star must be positive");
    if (results.empty()) throw std::invalid_argument("relative_errors: no results");
    const auto [lo, hi] = std::minmax_element(results.begin(), results.end());
    const double mean = std::accumulate(results.begin(), results.end(), 0.0) / static_cast<double>(results.size());
    auto pct = [c_star](double v) { return 100.0 * (v - c_star) / c_star; };
    return {pct(*lo), pct(mean), pct(*hi)};
}

RPSTable rps(const ResultCube& results) {
    RPSTable out;
    const std::size_t algos = results.size();
    out.scores.assign(algos, 0.0);
    if (algos == 0) return out;
    const std::size_t problems = results.front().size();
    for (const auto& a : results)
        if (a.size() != problems) throw std::invalid_argument("rps: ragged result cube");
    for (std::size_t k = 0; k < problems; ++k) {
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& a : results) {
            for (double v : a[k]) sum += v;
            count += a[k].size();
        }
        if (count == 0) throw std::invalid_argument("rps: empty cell");
        const double mu = sum / static_cast<double>(count);
        double ss = 0.0;
        for (const auto& a : results)
            for (double v : a[k]) ss += (v - mu) * (v - mu);
        const double sigma = std::sqrt(ss / static_cast<double>(count));
        if (sigma <= 1e-12 * std::max(1.0, std::abs(mu))) {
            out.degenerate_problems.push_back(k);
            continue;
        }
        for (std::size_t a = 0; a < algos; ++a)
            for (double v : results[a][k]) out.scores[a] += (v - mu) / sigma;
    }
    return out;
}

std::uint64_t transferability_value(const Permutation& source_best, const Instance& target, std::size_t samples,
                                    std::uint64_t seed) {
    if (source_best.size() != target.jobs()) throw std::invalid_argument("transferability_value: size mismatch");
    std::vector<double> scratch;
    const double ref = objective_of_sequence(target, source_best.jobs(), scratch);
    Rng rng(seed);
    std::vector<int> seq(target.jobs());
    std::iota(seq.begin(), seq.end(), 0);
    std::uint64_t better = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        rng.shuffle(seq);
        if (objective_of_sequence(target, seq, scratch) < ref) ++better;
    }
    return better + 1;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("linear_fit: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("linear_fit: need at least two points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("linear_fit: x has no spread");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += e * e;
    }
    f.r_squared = syy == 0.0 ? (ss_res == 0.0 ? 1.0 : 0.0) : 1.0 - ss_res / syy;
    return f;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("wilcoxon_signed_rank: length mismatch");
    std::vector<double> d;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != y[i]) d.push_back(x[i] - y[i]);
    WilcoxonResult r;
    r.nonzero = d.size();
    if (d.empty()) return r;

    std::vector<std::size_t> idx(d.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return std::abs(d[a]) < std::abs(d[b]); });
    std::vector<double> rank(d.size());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && std::abs(d[idx[j + 1]]) == std::abs(d[idx[i]])) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = avg;
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }
    for (std::size_t i = 0; i < d.size(); ++i) (d[i] > 0 ? r.w_plus : r.w_minus) += rank[i];

    const std::size_t n = d.size();
    if (n <= 25) {
        // Null distribution of W+ over all sign assignments, in half-rank units.
        std::vector<int> twice(n);
        int total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            twice[i] = static_cast<int>(std::lround(2.0 * rank[i]));
            total += twice[i];
        }
        std::vector<double> ways(static_cast<std::size_t>(total) + 1, 0.0);
        ways[0] = 1.0;
        for (int w : twice)
            for (int s = total; s >= w; --s) ways[s] += ways[s - w];
        const double all = std::ldexp(1.0, static_cast<int>(n));
        const int obs = static_cast<int>(std::lround(2.0 * r.w_plus));
        double lower = 0.0, upper = 0.0;
        for (int s = 0; s <= total; ++s) {
            if (s <= obs) lower += ways[s];
            if (s >= obs) upper += ways[s];
        }
        r.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / all);
        r.exact = true;
        return r;
    }
    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
    if (var <= 0.0) return r;
    const double diff = std::abs(r.w_plus - mean);
    const double z = std::max(diff - 0.5, 0.0) / std::sqrt(var);
    r.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return r;
}

}  // namespace mtco
