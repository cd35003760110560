#include "mtco/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "mtco/error.hpp"

namespace mtco {

namespace {

using nlohmann::json;

bool is_label(const std::string& line) {
    const bool has_alpha = std::any_of(line.begin(), line.end(), [](unsigned char c) { return std::isalpha(c); });
    auto last = line.find_last_not_of(" \t\r");
    return has_alpha && last != std::string::npos && line[last] == ':';
}

bool is_blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

std::vector<double> parse_numbers(const std::string& line, std::size_t line_no) {
    std::istringstream is(line);
    std::vector<double> out;
    std::string tok;
    while (is >> tok) {
        double v = 0.0;
        const char* first = tok.data();
        const char* last = tok.data() + tok.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last)
            throw DataError("line " + std::to_string(line_no) + ": non-numeric value '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

std::size_t as_count(double v, const char* what) {
    if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::uint64_t>(v)))
        throw DataError(std::string("taillard header: invalid ") + what);
    return static_cast<std::size_t>(v);
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
    return rows;
}

Matrix matrix_from_json(const json& j, std::size_t n, std::size_t m, const char* field) {
    if (!j.is_array() || j.size() != n) throw DataError(std::string(field) + ": expected " + std::to_string(n) + " rows");
    Matrix out(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != m)
            throw DataError(std::string(field) + ": row " + std::to_string(i + 1) + " has wrong length");
        for (std::size_t k = 0; k < m; ++k) {
            if (!row[k].is_number()) throw DataError(std::string(field) + ": non-numeric entry");
            out(i, k) = row[k].get<double>();
        }
    }
    return out;
}

}  // namespace

TaillardRecord read_taillard(std::istream& in, Orientation orientation) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::vector<double>> header;
    std::vector<std::vector<double>> rows;
    std::size_t n = 0, m = 0, collected = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line) || is_label(line)) {
            if (header && collected >= n * m) break;
            continue;
        }
        auto nums = parse_numbers(line, line_no);
        if (!header) {
            if (nums.size() != 2 && nums.size() != 5)
                throw DataError("taillard header: expected 'n m' or 'n m seed ub lb' on line " + std::to_string(line_no));
            n = as_count(nums[0], "job count");
            m = as_count(nums[1], "machine count");
            header = std::move(nums);
            continue;
        }
        collected += nums.size();
        rows.push_back(std::move(nums));
        if (collected >= n * m) break;
    }
    if (!header) throw DataError("taillard: missing header");
    if (collected != n * m)
        throw DataError("taillard: expected " + std::to_string(n * m) + " processing times, found " +
                        std::to_string(collected));

    const bool machine_lines = rows.size() == m && std::all_of(rows.begin(), rows.end(), [&](auto& r) { return r.size() == n; });
    const bool job_lines = rows.size() == n && std::all_of(rows.begin(), rows.end(), [&](auto& r) { return r.size() == m; });
    bool machine_major = true;
    switch (orientation) {
        case Orientation::MachineMajor: machine_major = true; break;
        case Orientation::JobMajor: machine_major = false; break;
        case Orientation::Auto: machine_major = machine_lines || !job_lines; break;
    }

    std::vector<double> flat;
    flat.reserve(n * m);
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    Matrix p(n, m);
    for (std::size_t k = 0; k < flat.size(); ++k) {
        if (flat[k] < 0.0) throw DataError("taillard: negative processing time");
        if (machine_major)
            p(k % n, k / n) = flat[k];
        else
            p(k / m, k % m) = flat[k];
    }
    TaillardRecord rec{Instance(std::move(p)), std::nullopt};
    if (header->size() == 5) {
        rec.header = TaillardHeader{static_cast<std::uint64_t>((*header)[2]), static_cast<std::int64_t>((*header)[3]),
                                    static_cast<std::int64_t>((*header)[4])};
    }
    return rec;
}

TaillardRecord read_taillard(const std::filesystem::path& path, Orientation orientation) {
    auto in = open_in(path);
    return read_taillard(in, orientation);
}

Instance load_taillard(const std::filesystem::path& path, Orientation orientation) {
    return read_taillard(path, orientation).instance;
}

void write_taillard(std::ostream& out, const Instance& inst, const std::optional<TaillardHeader>& header) {
    out << "number of jobs, number of machines, initial seed, upper bound and lower bound :\n";
    out << std::setw(10) << inst.jobs() << std::setw(10) << inst.machines();
    if (header)
        out << std::setw(12) << header->seed << std::setw(10) << header->upper_bound << std::setw(10)
            << header->lower_bound;
    out << "\nprocessing times :\n";
    out << std::setprecision(17);
    for (std::size_t j = 0; j < inst.machines(); ++j) {
        for (std::size_t i = 0; i < inst.jobs(); ++i) out << ' ' << std::setw(3) << inst.p(i, j);
        out << '\n';
    }
}

void save_taillard(const std::filesystem::path& path, const Instance& inst, const std::optional<TaillardHeader>& header) {
    auto out = open_out(path);
    write_taillard(out, inst, header);
}

std::string to_multitask_json(const MultiTaskInstance& mt) {
    json j;
    j["n"] = mt.problem1.jobs();
    j["m"] = mt.problem1.machines();
    j["objective"] = std::string(to_string(mt.problem1.objective()));
    j["p_r"] = mt.p_r;
    j["seed"] = mt.seed;
    j["distance"] = mt.recorded_distance ? json(*mt.recorded_distance) : json(nullptr);
    j["p1_matrix"] = matrix_json(mt.problem1.processing());
    j["p2_matrix"] = matrix_json(mt.problem2.processing());
    if (mt.problem1.due()) j["due1"] = *mt.problem1.due();
    if (mt.problem2.due()) j["due2"] = *mt.problem2.due();
    return j.dump(2) + "\n";
}

MultiTaskInstance from_multitask_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("multitask: ") + e.what());
    }
    try {
        const auto n = j.at("n").get<std::size_t>();
        const auto m = j.at("m").get<std::size_t>();
        Objective obj = Objective::Makespan;
        try {
            obj = objective_from_string(j.at("objective").get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw DataError(e.what());
        }
        auto due = [&](const char* key) -> std::optional<std::vector<double>> {
            if (!j.contains(key)) return std::nullopt;
            return j.at(key).get<std::vector<double>>();
        };
        const double p_r = j.at("p_r").get<double>();
        if (!(p_r >= 0.0 && p_r <= 1.0)) throw DataError("multitask: p_r outside [0, 1]");
        MultiTaskInstance mt{Instance(matrix_from_json(j.at("p1_matrix"), n, m, "p1_matrix"), obj, due("due1")),
                             Instance(matrix_from_json(j.at("p2_matrix"), n, m, "p2_matrix"), obj, due("due2")),
                             p_r,
                             j.at("seed").get<std::uint64_t>(),
                             std::nullopt,
                             {}};
        if (j.contains("distance") && !j.at("distance").is_null()) mt.recorded_distance = j.at("distance").get<double>();
        return mt;
    } catch (const json::exception& e) {
        throw DataError(std::string("multitask: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("multitask: ") + e.what());
    }
}

void save_multitask(const std::filesystem::path& path, const MultiTaskInstance& mt) {
    auto out = open_out(path);
    out << to_multitask_json(mt);
}

MultiTaskInstance load_multitask(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_multitask_json(ss.str());
}

}  // namespace mtco
