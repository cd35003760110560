#include "mtco/instance.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mtco/permutation.hpp"

namespace mtco {

std::string_view to_string(Objective objective) {
    switch (objective) {
        case Objective::Makespan: return "makespan";
        case Objective::TotalCompletion: return "total_completion";
        case Objective::TardyCount: return "tardy_count";
    }
    return "makespan";
}

Objective objective_from_string(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "makespan") return Objective::Makespan;
    if (lower == "total_completion" || lower == "totalcompletion") return Objective::TotalCompletion;
    if (lower == "tardy_count" || lower == "tardycount") return Objective::TardyCount;
    throw std::invalid_argument("unknown objective: " + std::string(text));
}

Instance::Instance(Matrix processing, Objective objective, std::optional<std::vector<double>> due,
                   Sign sign)
    : p_(std::move(processing)), objective_(objective), due_(std::move(due)), sign_(sign) {
    if (p_.rows() == 0 || p_.cols() == 0)
        throw std::invalid_argument("Instance: need at least one job and one machine");
    for (double v : p_.values()) {
        if (!std::isfinite(v)) throw std::invalid_argument("Instance: non-finite processing time");
        if (v < 0.0 && sign_ == Sign::NonNegative)
            throw std::invalid_argument("Instance: negative processing time");
    }
    if (objective_ == Objective::TardyCount) {
        if (!due_) throw std::invalid_argument("Instance: TardyCount requires due dates");
        if (due_->size() != p_.rows()) throw std::invalid_argument("Instance: due date count != jobs");
    } else if (due_) {
        throw std::invalid_argument("Instance: due dates only apply to TardyCount");
    }
}

Instance row_transform(const SolutionMatrix& o, const Instance& inst) {
    const std::size_t n = inst.jobs();
    if (o.size() != n) throw std::invalid_argument("row_transform: dimension mismatch");
    Matrix p(n, inst.machines());
    for (std::size_t i = 0; i < n; ++i) {
        auto src = inst.processing().row(static_cast<std::size_t>(o.col(i)));
        std::copy(src.begin(), src.end(), p.row(i).begin());
    }
    std::optional<std::vector<double>> due;
    if (inst.due()) {
        due.emplace(n);
        for (std::size_t i = 0; i < n; ++i) (*due)[i] = (*inst.due())[static_cast<std::size_t>(o.col(i))];
    }
    return Instance(std::move(p), inst.objective(), std::move(due),
                    inst.allows_negative() ? Instance::Sign::AllowNegative : Instance::Sign::NonNegative);
}

Instance scale_shift(const Instance& inst, double t, double b, Instance::Sign sign) {
    if (!(t > 0.0)) throw std::invalid_argument("scale_shift: t must be positive");
    Matrix p = inst.processing();
    for (double& v : p.values()) v = t * v + b;
    std::optional<std::vector<double>> due = inst.due();
    if (due)
        for (double& d : *due) d = t * d + b;
    return Instance(std::move(p), inst.objective(), std::move(due), sign);
}

Matrix specification_matrix(const Instance& inst) {
    if (!inst.due()) return inst.processing();
    Matrix out(inst.jobs(), inst.machines() + 1);
    for (std::size_t i = 0; i < inst.jobs(); ++i) {
        auto src = inst.processing().row(i);
        std::copy(src.begin(), src.end(), out.row(i).begin());
        out(i, inst.machines()) = (*inst.due())[i];
    }
    return out;
}

}  // namespace mtco
