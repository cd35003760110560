#include "mtco/permutation.hpp"

#include <sstream>
#include <stdexcept>

namespace mtco {

bool is_permutation_of_range(std::span<const int> jobs) {
    std::vector<char> seen(jobs.size(), 0);
    for (int j : jobs) {
        if (j < 0 || static_cast<std::size_t>(j) >= jobs.size() || seen[j]) return false;
        seen[j] = 1;
    }
    return true;
}

Permutation::Permutation(std::vector<int> jobs) : jobs_(std::move(jobs)) {
    if (!is_permutation_of_range(jobs_))
        throw std::invalid_argument("Permutation: not a permutation of 0..n-1");
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<int> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i);
    return Permutation(std::move(v));
}

Permutation Permutation::from_one_based(const std::vector<int>& jobs) {
    std::vector<int> v(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) v[i] = jobs[i] - 1;
    return Permutation(std::move(v));
}

std::vector<int> Permutation::one_based() const {
    std::vector<int> v(jobs_.size());
    for (std::size_t i = 0; i < jobs_.size(); ++i) v[i] = jobs_[i] + 1;
    return v;
}

std::vector<int> Permutation::position_of() const {
    std::vector<int> pos(jobs_.size());
    for (std::size_t i = 0; i < jobs_.size(); ++i) pos[jobs_[i]] = static_cast<int>(i);
    return pos;
}

std::string Permutation::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < jobs_.size(); ++i) os << (i ? " " : "") << jobs_[i] + 1;
    os << ']';
    return os.str();
}

SolutionMatrix::SolutionMatrix(std::vector<int> column_of_row) : col_(std::move(column_of_row)) {
    if (!is_permutation_of_range(col_))
        throw std::invalid_argument("SolutionMatrix: not a permutation matrix");
}

SolutionMatrix SolutionMatrix::identity(std::size_t n) {
    std::vector<int> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i);
    return SolutionMatrix(std::move(v));
}

SolutionMatrix SolutionMatrix::from_dense(const Matrix& dense) {
    if (dense.rows() != dense.cols()) throw std::invalid_argument("SolutionMatrix: not square");
    std::vector<int> col(dense.rows(), -1);
    for (std::size_t r = 0; r < dense.rows(); ++r) {
        for (std::size_t c = 0; c < dense.cols(); ++c) {
            const double v = dense(r, c);
            if (v == 1.0) {
                if (col[r] != -1) throw std::invalid_argument("SolutionMatrix: two ones in a row");
                col[r] = static_cast<int>(c);
            } else if (v != 0.0) {
                throw std::invalid_argument("SolutionMatrix: entries must be 0 or 1");
            }
        }
        if (col[r] == -1) throw std::invalid_argument("SolutionMatrix: empty row");
    }
    return SolutionMatrix(std::move(col));
}

Matrix SolutionMatrix::dense() const {
    Matrix m(col_.size(), col_.size());
    for (std::size_t r = 0; r < col_.size(); ++r) m(r, col_[r]) = 1.0;
    return m;
}

SolutionMatrix SolutionMatrix::transposed() const {
    std::vector<int> inv(col_.size());
    for (std::size_t r = 0; r < col_.size(); ++r) inv[col_[r]] = static_cast<int>(r);
    return SolutionMatrix(std::move(inv));
}

SolutionMatrix operator*(const SolutionMatrix& a, const SolutionMatrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("SolutionMatrix: dimension mismatch");
    std::vector<int> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = b.col_[a.col_[i]];
    return SolutionMatrix(std::move(out));
}

SolutionMatrix perm_to_matrix(const Permutation& perm) {
    return SolutionMatrix(std::vector<int>(perm.jobs().begin(), perm.jobs().end()));
}

Permutation matrix_to_perm(const SolutionMatrix& x) {
    return Permutation(std::vector<int>(x.columns().begin(), x.columns().end()));
}

}  // namespace mtco
