#pragma once

#include <utility>

#include "mtco/instance.hpp"
#include "mtco/matrix.hpp"
#include "mtco/permutation.hpp"

namespace mtco {

struct TransformRecord {
    SolutionMatrix o_p;
    SolutionMatrix o_q;
    bool accepted = false;
    double d_before = 0.0;
    double d_after = 0.0;
};

struct TransformedPair {
    Instance p;
    Instance q;
    TransformRecord record;
};

/// mf(i, j) = pearson(P row i, Q row j). Dimensions must agree.
Matrix matching_feature_matrix(const Instance& p, const Instance& q);

/// Greedy matching: n rounds, each taking the largest remaining entry
/// (lowest row, then lowest column on ties) and striking out its row and
/// column. Round i places P's job idx_P and Q's job idx_Q at row i.
std::pair<SolutionMatrix, SolutionMatrix> greedy_match(const Matrix& mf);

/// Projects the pair through the greedy matching; keeps the result only
/// when the inter-task distance strictly drops.
TransformedPair transform_pair(const Instance& p, const Instance& q);

/// Maps a permutation of the transformed problem back to the original:
/// phi^-1(phi(perm) * O).
Permutation inverse_map_solution(const Permutation& perm, const SolutionMatrix& o);

}  // namespace mtco
