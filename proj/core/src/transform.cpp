#include "mtco/transform.hpp"

#include <limits>
#include <stdexcept>

#include "mtco/distance.hpp"

namespace mtco {

Matrix matching_feature_matrix(const Instance& p, const Instance& q) {
    if (p.jobs() != q.jobs() || p.machines() != q.machines())
        throw std::invalid_argument("matching_feature_matrix: dimension mismatch");
    return row_correlation(specification_matrix(p), specification_matrix(q));
}

std::pair<SolutionMatrix, SolutionMatrix> greedy_match(const Matrix& mf) {
    if (mf.rows() != mf.cols()) throw std::invalid_argument("greedy_match: matrix must be square");
    const std::size_t n = mf.rows();
    constexpr double struck = -std::numeric_limits<double>::infinity();
    Matrix work = mf;
    std::vector<int> op(n), oq(n);
    for (std::size_t round = 0; round < n; ++round) {
        std::size_t bi = 0, bj = 0;
        double best = struck;
        bool found = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (work(i, j) != struck && (!found || work(i, j) > best)) {
                    best = work(i, j);
                    bi = i;
                    bj = j;
                    found = true;
                }
        op[round] = static_cast<int>(bi);
        oq[round] = static_cast<int>(bj);
        for (std::size_t k = 0; k < n; ++k) {
            work(bi, k) = struck;
            work(k, bj) = struck;
        }
    }
    return {SolutionMatrix(std::move(op)), SolutionMatrix(std::move(oq))};
}

TransformedPair transform_pair(const Instance& p, const Instance& q) {
    if (p.jobs() != q.jobs() || p.machines() != q.machines())
        throw std::invalid_argument("transform_pair: dimension mismatch");
    const double before = inter_task_distance(q, p).normalized;
    auto [op, oq] = greedy_match(matching_feature_matrix(p, q));
    Instance p_new = row_transform(op, p);
    Instance q_new = row_transform(oq, q);
    const double after = inter_task_distance(q_new, p_new).normalized;
    if (after < before) {
        return {std::move(p_new), std::move(q_new), {std::move(op), std::move(oq), true, before, after}};
    }
    const auto id = SolutionMatrix::identity(p.jobs());
    return {p, q, {id, id, false, before, after}};
}

Permutation inverse_map_solution(const Permutation& perm, const SolutionMatrix& o) {
    if (perm.size() != o.size()) throw std::invalid_argument("inverse_map_solution: dimension mismatch");
    return matrix_to_perm(perm_to_matrix(perm) * o);
}

}  // namespace mtco
