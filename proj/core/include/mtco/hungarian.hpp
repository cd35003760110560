#pragma once

#include <vector>

#include "mtco/matrix.hpp"

namespace mtco {

struct Assignment {
    /// column_of_row[i] is the column assigned to row i.
    std::vector<int> column_of_row;
    double total = 0.0;
};

/// Maximum-weight perfect matching on a square weight matrix, O(n^3)
/// shortest augmenting paths with potentials. Deterministic: among equally
/// short augmentations the lowest column index is taken.
Assignment max_weight_assignment(const Matrix& weights);

}  // namespace mtco
