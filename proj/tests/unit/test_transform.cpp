#include <limits>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mtco/benchgen.hpp"
#include "mtco/distance.hpp"
#include "mtco/evaluate.hpp"
#include "mtco/transform.hpp"

using namespace mtco;
using testing::to_matrix;

namespace {

// Greedy max-entry matching by repeated scans over the unused rows/columns.
std::pair<std::vector<int>, std::vector<int>> greedy_oracle(const oracle::Grid& mf) {
    const std::size_t n = mf.size();
    std::set<std::size_t> rows, cols;
    for (std::size_t i = 0; i < n; ++i) rows.insert(i), cols.insert(i);
    std::vector<int> op, oq;
    while (!rows.empty()) {
        double best = -std::numeric_limits<double>::max();
        std::size_t bi = 0, bj = 0;
        bool any = false;
        for (auto i : rows)
            for (auto j : cols)
                if (!any || mf[i][j] > best) best = mf[i][j], bi = i, bj = j, any = true;
        op.push_back(static_cast<int>(bi));
        oq.push_back(static_cast<int>(bj));
        rows.erase(bi);
        cols.erase(bj);
    }
    return {op, oq};
}

}  // namespace

TEST_CASE("matching_feature_matrix") {
    std::mt19937_64 g(1);
    const auto a = oracle::random_grid(g, 6, 5);
    const auto b = oracle::random_grid(g, 6, 5);
    const Instance p(to_matrix(a)), q(to_matrix(b));
    const auto self = matching_feature_matrix(p, p);
    for (std::size_t i = 0; i < 6; ++i) CHECK(self(i, i) == doctest::Approx(1.0));
    const auto mf = matching_feature_matrix(p, q);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            CHECK(mf(i, j) >= -1.0);
            CHECK(mf(i, j) <= 1.0);
            CHECK(mf(i, j) == doctest::Approx(oracle::naive_pearson(a[i], b[j])).epsilon(1e-12));
        }
    auto c = a;
    for (auto& v : c[2]) v = 3 * v + 7;
    CHECK(matching_feature_matrix(Instance(to_matrix(c)), p)(2, 2) == doctest::Approx(1.0));
}

TEST_CASE("greedy_match") {
    const auto [ip, iq] = greedy_match(Matrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(ip == iq);

    // Maxima 0.9 at (1,2), then 0.8 at (2,0), then 0.1 at (0,1).
    const Matrix mf{{0.5, 0.1, 0.7}, {0.2, 0.3, 0.9}, {0.8, 0.0, 0.6}};
    const auto [op, oq] = greedy_match(mf);
    CHECK(std::vector<int>(op.columns().begin(), op.columns().end()) == std::vector<int>{1, 2, 0});
    CHECK(std::vector<int>(oq.columns().begin(), oq.columns().end()) == std::vector<int>{2, 0, 1});

    std::mt19937_64 g(2);
    std::uniform_int_distribution<int> u(-4, 4);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + g() % 8;
        oracle::Grid w(n, std::vector<double>(n));
        for (auto& r : w)
            for (auto& v : r) v = u(g) / 4.0;  // coarse values force ties
        const auto [a, b] = greedy_match(to_matrix(w));
        const auto [ea, eb] = greedy_oracle(w);
        CHECK(std::vector<int>(a.columns().begin(), a.columns().end()) == ea);
        CHECK(std::vector<int>(b.columns().begin(), b.columns().end()) == eb);
    }
}

TEST_CASE("transform_pair") {
    std::mt19937_64 g(3);
    const Instance p(to_matrix(oracle::random_grid(g, 10, 6)));
    const auto same = transform_pair(p, p);
    CHECK_FALSE(same.record.accepted);
    CHECK(same.record.o_p == SolutionMatrix::identity(10));
    CHECK(same.record.o_q == SolutionMatrix::identity(10));
    CHECK(same.p == p);
    CHECK(same.q == p);

    const Instance q = row_transform(SolutionMatrix(oracle::random_perm(g, 10)), p);
    REQUIRE(inter_task_distance(q, p).normalized > 0.0);
    const auto swapped = transform_pair(p, q);
    CHECK(swapped.record.accepted);
    CHECK(swapped.record.d_after < 1e-12);
    CHECK(inter_task_distance(swapped.q, swapped.p).normalized < 1e-12);
}

TEST_CASE("transform_pair invariants on generated pairs") {
    const auto base = testing::taillard(1);
    double before = 0, after = 0;
    int count = 0;
    for (double pr : {0.5, 0.6, 0.7, 0.8, 0.9, 1.0})
        for (std::uint64_t s = 0; s < 5; ++s) {
            const auto mt = generate_pair(base, pr, s);
            const auto t = transform_pair(mt.problem1, mt.problem2);
            if (t.record.accepted) {
                CHECK(t.record.d_after < t.record.d_before);
                CHECK(t.p == row_transform(t.record.o_p, mt.problem1));
                CHECK(t.q == row_transform(t.record.o_q, mt.problem2));
            } else {
                CHECK(t.p == mt.problem1);
                CHECK(t.q == mt.problem2);
                CHECK(t.record.o_p == SolutionMatrix::identity(base.jobs()));
            }
            CHECK(t.record.d_before == inter_task_distance(mt.problem2, mt.problem1).normalized);
            before += t.record.d_before;
            after += t.record.accepted ? t.record.d_after : t.record.d_before;
            ++count;

            // Solutions of the transformed problems map back with equal value.
            std::mt19937_64 g(s);
            for (int k = 0; k < 5; ++k) {
                const Permutation pi(oracle::random_perm(g, base.jobs()));
                CHECK(evaluate(mt.problem1, inverse_map_solution(pi, t.record.o_p)).value ==
                      evaluate(t.p, pi).value);
                CHECK(evaluate(mt.problem2, inverse_map_solution(pi, t.record.o_q)).value ==
                      evaluate(t.q, pi).value);
            }
        }
    CHECK(after / count <= before / count);
}

TEST_CASE("inverse_map_solution") {
    const auto pi = Permutation::from_one_based({1, 2, 3});
    CHECK(inverse_map_solution(pi, SolutionMatrix::identity(3)) == pi);

    // Cyclic shift o = [[0,1,0],[0,0,1],[1,0,0]]: phi(pi) = I, so the product is o itself.
    const auto o = SolutionMatrix::from_dense(Matrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    const auto back = inverse_map_solution(pi, o);
    CHECK(back.one_based() == std::vector<int>{2, 3, 1});
    const Instance p(Matrix{{4, 1}, {2, 7}, {5, 3}});
    CHECK(evaluate(p, back).value == evaluate(row_transform(o, p), pi).value);
    CHECK_THROWS(inverse_map_solution(Permutation::identity(2), o));

    std::mt19937_64 g(4);
    for (std::size_t n = 1; n <= 5; ++n) {
        const Instance inst(to_matrix(oracle::random_grid(g, n, 3)));
        for (int t = 0; t < 10; ++t) {
            const SolutionMatrix om(oracle::random_perm(g, n));
            const auto moved = row_transform(om, inst);
            oracle::for_each_permutation(n, [&](const std::vector<int>& s) {
                const Permutation x(s);
                REQUIRE(evaluate(inst, inverse_map_solution(x, om)).value == evaluate(moved, x).value);
            });
        }
    }
}
