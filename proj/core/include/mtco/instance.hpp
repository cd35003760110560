#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "mtco/matrix.hpp"

namespace mtco {

class SolutionMatrix;

enum class Objective { Makespan, TotalCompletion, TardyCount };

std::string_view to_string(Objective objective);
Objective objective_from_string(std::string_view text);

/// A permutation flowshop problem: processing times p (jobs x machines),
/// the objective being minimised and, for TardyCount, per-job due dates.
class Instance {
public:
    enum class Sign { NonNegative, AllowNegative };

    explicit Instance(Matrix processing, Objective objective = Objective::Makespan,
                      std::optional<std::vector<double>> due = std::nullopt,
                      Sign sign = Sign::NonNegative);

    std::size_t jobs() const noexcept { return p_.rows(); }
    std::size_t machines() const noexcept { return p_.cols(); }
    const Matrix& processing() const noexcept { return p_; }
    double p(std::size_t job, std::size_t machine) const { return p_(job, machine); }
    Objective objective() const noexcept { return objective_; }
    const std::optional<std::vector<double>>& due() const noexcept { return due_; }
    bool allows_negative() const noexcept { return sign_ == Sign::AllowNegative; }

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    Matrix p_;
    Objective objective_;
    std::optional<std::vector<double>> due_;
    Sign sign_;
};

/// Reorders jobs: row i of the result is row o.col(i) of the input (P' = O * P).
/// Due dates move with their rows.
Instance row_transform(const SolutionMatrix& o, const Instance& inst);

/// P' = t * P + b * E. Negative entries are rejected unless `sign` allows them.
Instance scale_shift(const Instance& inst, double t, double b,
                     Instance::Sign sign = Instance::Sign::NonNegative);

/// The matrix the distance metric compares: P, or [P, d] for TardyCount.
Matrix specification_matrix(const Instance& inst);

}  // namespace mtco
