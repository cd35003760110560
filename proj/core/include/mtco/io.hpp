#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "mtco/benchgen.hpp"
#include "mtco/instance.hpp"

namespace mtco {

enum class Orientation {
    /// Decide from the line layout; machine-major when n == m.
    Auto,
    /// m lines of n values.
    MachineMajor,
    /// n lines of m values.
    JobMajor,
};

struct TaillardHeader {
    std::uint64_t seed = 0;
    std::int64_t upper_bound = 0;
    std::int64_t lower_bound = 0;
};

struct TaillardRecord {
    Instance instance;
    std::optional<TaillardHeader> header;
};

TaillardRecord read_taillard(std::istream& in, Orientation orientation = Orientation::Auto);
TaillardRecord read_taillard(const std::filesystem::path& path,
                             Orientation orientation = Orientation::Auto);
Instance load_taillard(const std::filesystem::path& path, Orientation orientation = Orientation::Auto);

/// Writes the OR-library layout (machine-major).
void write_taillard(std::ostream& out, const Instance& inst,
                    const std::optional<TaillardHeader>& header = std::nullopt);
void save_taillard(const std::filesystem::path& path, const Instance& inst,
                   const std::optional<TaillardHeader>& header = std::nullopt);

/// JSON document with n, m, objective, p1_matrix, p2_matrix, p_r, seed,
/// distance (and due1/due2 for TardyCount).
std::string to_multitask_json(const MultiTaskInstance& mt);
MultiTaskInstance from_multitask_json(const std::string& text);
void save_multitask(const std::filesystem::path& path, const MultiTaskInstance& mt);
MultiTaskInstance load_multitask(const std::filesystem::path& path);

}  // namespace mtco
