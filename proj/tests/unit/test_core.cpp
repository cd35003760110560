#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mtco/evaluate.hpp"
#include "mtco/instance.hpp"
#include "mtco/permutation.hpp"

using namespace mtco;
using testing::to_matrix;

namespace {

Instance two_by_two(Objective obj = Objective::Makespan, std::optional<std::vector<double>> due = {}) {
    return Instance(Matrix{{1, 2}, {3, 4}}, obj, std::move(due));
}

// Dense product of two 0/1 matrices, then read off the permutation.
std::vector<int> product_perm(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.rows();
    std::vector<int> out(n, -1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0;
            for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, j);
            if (s == 1.0) out[i] = static_cast<int>(j);
        }
    return out;
}

bool close_rel(double a, double b, double tol = 1e-9) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("evaluate: hand examples") {
    const auto pi = Permutation::from_one_based({1, 2});
    CHECK(evaluate(two_by_two(), pi).value == 8.0);
    CHECK(evaluate(two_by_two(Objective::TotalCompletion), pi).value == 11.0);
    CHECK(evaluate(two_by_two(Objective::TardyCount, std::vector<double>{3, 8}), pi).value == 0.0);
    CHECK(evaluate(two_by_two(Objective::TardyCount, std::vector<double>{2, 7}), pi).value == 2.0);

    const auto r = evaluate(two_by_two(), pi, KeepCompletion::Yes);
    REQUIRE(r.completion);
    CHECK(*r.completion == Matrix{{1, 3}, {4, 8}});
}

TEST_CASE("evaluate: errors") {
    CHECK_THROWS_AS(evaluate(two_by_two(), Permutation::identity(3)), std::invalid_argument);
    CHECK_THROWS_AS(Instance(Matrix{{1, 2}}, Objective::TardyCount), std::invalid_argument);
    CHECK_THROWS_AS(Instance(Matrix{{-1, 2}}), std::invalid_argument);
}

TEST_CASE("evaluate agrees with the full completion-table oracle") {
    std::mt19937_64 g(11);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + g() % 9, m = 1 + g() % 7;
        const auto grid = oracle::random_grid(g, n, m);
        std::vector<double> due(n);
        for (auto& d : due) d = static_cast<double>(g() % (60 * (n + m)));
        const auto seq = oracle::random_perm(g, n);
        const Permutation pi(seq);
        CHECK(evaluate(Instance(to_matrix(grid)), pi).value == oracle::makespan(grid, seq));
        CHECK(evaluate(Instance(to_matrix(grid), Objective::TotalCompletion), pi).value ==
              oracle::total_completion(grid, seq));
        CHECK(evaluate(Instance(to_matrix(grid), Objective::TardyCount, due), pi).value ==
              oracle::tardy_count(grid, due, seq));
        const auto r = evaluate(Instance(to_matrix(grid)), pi, KeepCompletion::Yes);
        CHECK(testing::to_grid(*r.completion) == oracle::completion_table(grid, seq));
    }
}

TEST_CASE("Evaluator bills every call and tracks the best complete sequence") {
    std::mt19937_64 g(3);
    const Instance inst(to_matrix(oracle::random_grid(g, 6, 3)));
    Evaluator ev(inst, 5);
    std::vector<int> partial{0, 1};
    ev(partial);
    CHECK(ev.evaluations() == 1);
    CHECK_FALSE(ev.has_best());
    double best = 1e300;
    for (int i = 0; i < 4; ++i) {
        const auto p = Permutation(oracle::random_perm(g, 6));
        best = std::min(best, ev(p));
    }
    CHECK(ev.evaluations() == 5);
    CHECK(ev.exhausted());
    CHECK(ev.remaining() == 0);
    CHECK(ev.best_value() == best);
    CHECK(evaluate(inst, ev.best()).value == best);
    for (std::size_t i = 1; i < ev.trace().size(); ++i) {
        CHECK(ev.trace()[i].best < ev.trace()[i - 1].best);
        CHECK(ev.trace()[i].evaluations > ev.trace()[i - 1].evaluations);
    }
}

TEST_CASE("perm_to_matrix / matrix_to_perm") {
    CHECK(perm_to_matrix(Permutation::identity(4)) == SolutionMatrix::identity(4));
    CHECK(perm_to_matrix(Permutation::from_one_based({2, 1})).dense() == Matrix{{0, 1}, {1, 0}});
    CHECK(matrix_to_perm(SolutionMatrix::identity(3)) == Permutation::identity(3));
    CHECK(matrix_to_perm(SolutionMatrix::from_dense(Matrix{{0, 1}, {1, 0}})).one_based() ==
          std::vector<int>{2, 1});
    for (std::size_t n = 1; n <= 6; ++n)
        oracle::for_each_permutation(n, [](const std::vector<int>& s) {
            const Permutation p(s);
            const auto x = perm_to_matrix(p);
            const auto d = x.dense();
            for (std::size_t i = 0; i < s.size(); ++i)
                for (std::size_t r = 0; r < s.size(); ++r)
                    REQUIRE(d(i, r) == (s[i] == static_cast<int>(r) ? 1.0 : 0.0));
            REQUIRE(matrix_to_perm(x) == p);
            REQUIRE(perm_to_matrix(matrix_to_perm(x)) == x);
        });
    CHECK_THROWS(SolutionMatrix::from_dense(Matrix{{1, 1}, {0, 0}}));
    CHECK_THROWS(SolutionMatrix::from_dense(Matrix{{1, 0}, {0, 2}}));
    CHECK_THROWS(Permutation(std::vector<int>{0, 0}));
}

TEST_CASE("SolutionMatrix product matches dense multiplication") {
    std::mt19937_64 g(5);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + g() % 7;
        const SolutionMatrix a(oracle::random_perm(g, n)), b(oracle::random_perm(g, n));
        const auto ab = a * b;
        CHECK(std::vector<int>(ab.columns().begin(), ab.columns().end()) == product_perm(a.dense(), b.dense()));
        CHECK((a * a.transposed()) == SolutionMatrix::identity(n));
    }
}

TEST_CASE("row_transform and scale_shift") {
    const Instance p(Matrix{{1, 2}, {3, 4}});
    CHECK(row_transform(SolutionMatrix::identity(2), p) == p);
    const auto swap = SolutionMatrix::from_dense(Matrix{{0, 1}, {1, 0}});
    CHECK(row_transform(swap, p).processing() == Matrix{{3, 4}, {1, 2}});
    const Instance d(Matrix{{1, 2}, {3, 4}}, Objective::TardyCount, std::vector<double>{5, 9});
    CHECK(*row_transform(swap, d).due() == std::vector<double>{9, 5});

    CHECK(scale_shift(p, 1, 0) == p);
    CHECK(scale_shift(p, 2, 3).processing() == Matrix{{5, 7}, {9, 11}});
    CHECK_THROWS_AS(scale_shift(p, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(scale_shift(p, 1, -5), std::invalid_argument);
    CHECK(scale_shift(p, 1, -5, Instance::Sign::AllowNegative).p(0, 0) == -4.0);
}

TEST_CASE("scale and shift identities") {
    std::mt19937_64 g(17);
    std::uniform_real_distribution<double> ut(0.01, 10.0), ub(-20.0, 20.0);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + g() % 8, m = 1 + g() % 8;
        const Instance p(to_matrix(oracle::random_grid(g, n, m)));
        const Instance pc(p.processing(), Objective::TotalCompletion);
        const Permutation pi(oracle::random_perm(g, n));
        const double s = ut(g), b = ub(g);
        const double f = evaluate(p, pi).value;
        CHECK(close_rel(evaluate(scale_shift(p, s, 0), pi).value, s * f));
        CHECK(close_rel(evaluate(scale_shift(p, 1, b, Instance::Sign::AllowNegative), pi).value,
                        f + static_cast<double>(m + n - 1) * b));
        CHECK(close_rel(evaluate(scale_shift(p, s, b, Instance::Sign::AllowNegative), pi).value,
                        s * f + static_cast<double>(m + n - 1) * b));
        const double shift_tc = static_cast<double>(n * m + n * (n - 1) / 2) * b;
        CHECK(close_rel(
            evaluate(scale_shift(pc, 1, b, Instance::Sign::AllowNegative), pi).value,
            evaluate(pc, pi).value + shift_tc));
    }
}

TEST_CASE("row reordering identities, exhaustive for n <= 5") {
    std::mt19937_64 g(23);
    for (std::size_t n = 1; n <= 5; ++n) {
        const Instance p(to_matrix(oracle::random_grid(g, n, 1 + g() % 5)));
        oracle::for_each_permutation(n, [&](const std::vector<int>& os) {
            const SolutionMatrix o(os);
            const auto op = row_transform(o, p);
            const auto oinv = o.transposed();
            oracle::for_each_permutation(n, [&](const std::vector<int>& xs) {
                const SolutionMatrix x(xs);
                const auto via_o = Permutation(product_perm(x.dense(), o.dense()));
                const auto via_inv = Permutation(product_perm(x.dense(), oinv.dense()));
                REQUIRE(evaluate(op, matrix_to_perm(x)).value == evaluate(p, via_o).value);
                REQUIRE(evaluate(p, matrix_to_perm(x)).value == evaluate(op, via_inv).value);
            });
        });
    }
}

TEST_CASE("order isomorphism: t P + b E ranks every permutation identically") {
    std::mt19937_64 g(29);
    std::uniform_real_distribution<double> ut(0.1, 5.0), ub(0.0, 30.0);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + g() % 4;
        const Instance p(to_matrix(oracle::random_grid(g, n, 2 + g() % 4)));
        const auto q = scale_shift(p, ut(g), ub(g));
        std::vector<double> fp, fq;
        oracle::for_each_permutation(n, [&](const std::vector<int>& s) {
            fp.push_back(evaluate(p, Permutation(s)).value);
            fq.push_back(evaluate(q, Permutation(s)).value);
        });
        for (std::size_t i = 0; i < fp.size(); ++i)
            for (std::size_t j = 0; j < fp.size(); ++j)
                REQUIRE((fp[i] <= fp[j]) == (fq[i] <= fq[j] + 1e-9 * std::abs(fq[j])));
    }
}

TEST_CASE("specification matrix appends due dates for TardyCount") {
    const Instance d(Matrix{{1, 2}, {3, 4}}, Objective::TardyCount, std::vector<double>{5, 9});
    CHECK(specification_matrix(d) == Matrix{{1, 2, 5}, {3, 4, 9}});
    CHECK(specification_matrix(Instance(Matrix{{1, 2}})) == Matrix{{1, 2}});
}
