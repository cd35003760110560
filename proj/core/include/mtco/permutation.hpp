#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mtco/matrix.hpp"

namespace mtco {

/// A job sequence. Jobs are 0-indexed internally; one_based() gives the
/// 1-indexed form used in files and printed output.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> jobs);

    static Permutation identity(std::size_t n);
    static Permutation from_one_based(const std::vector<int>& jobs);

    std::size_t size() const noexcept { return jobs_.size(); }
    int operator[](std::size_t position) const { return jobs_[position]; }
    std::span<const int> jobs() const noexcept { return jobs_; }
    std::vector<int> one_based() const;
    /// position_of()[job] is the position holding `job`.
    std::vector<int> position_of() const;
    std::string to_string() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> jobs_;
};

/// True when `jobs` is a bijection of {0..n-1}.
bool is_permutation_of_range(std::span<const int> jobs);

/// An n x n permutation matrix, stored as the column index of the single 1
/// in each row. Solution matrices, transformation functions and solution
/// evolution operators all share this type.
class SolutionMatrix {
public:
    SolutionMatrix() = default;
    explicit SolutionMatrix(std::vector<int> column_of_row);

    static SolutionMatrix identity(std::size_t n);
    /// Validates that `dense` is binary with exactly one 1 per row and column.
    static SolutionMatrix from_dense(const Matrix& dense);

    std::size_t size() const noexcept { return col_.size(); }
    int col(std::size_t row) const { return col_[row]; }
    int at(std::size_t row, std::size_t column) const {
        return col_[row] == static_cast<int>(column) ? 1 : 0;
    }
    std::span<const int> columns() const noexcept { return col_; }
    Matrix dense() const;
    SolutionMatrix transposed() const;

    friend SolutionMatrix operator*(const SolutionMatrix& a, const SolutionMatrix& b);
    friend bool operator==(const SolutionMatrix&, const SolutionMatrix&) = default;

private:
    std::vector<int> col_;
};

/// phi: x[i][r] = 1 iff perm[i] = r.
SolutionMatrix perm_to_matrix(const Permutation& perm);
/// phi^-1: pi = [1..n] * X^T.
Permutation matrix_to_perm(const SolutionMatrix& x);

}  // namespace mtco
