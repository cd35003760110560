#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mtco/benchgen.hpp"
#include "mtco/distance.hpp"
#include "mtco/error.hpp"
#include "mtco/io.hpp"
#include "mtco/mtco.hpp"
#include "mtco/studies.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_multitask_file(const fs::path& p) {
    const auto ext = p.extension().string();
    return ext == ".mt" || ext == ".json";
}

mtco::Orientation parse_orientation(const std::string& s) {
    if (s == "auto") return mtco::Orientation::Auto;
    if (s == "machine") return mtco::Orientation::MachineMajor;
    if (s == "job") return mtco::Orientation::JobMajor;
    throw UsageError("--orientation must be auto, machine or job");
}

std::ofstream open_out(const fs::path& p) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p);
    if (!out) throw mtco::DataError("cannot write " + p.string());
    return out;
}

std::vector<double> pr_grid(const std::vector<double>& explicit_grid, std::size_t intervals) {
    if (!explicit_grid.empty()) return explicit_grid;
    return mtco::replacing_probability_grid(intervals);
}

struct SuiteOptions {
    std::vector<std::string> bases;
    std::vector<std::string> pairs;
    std::vector<double> grid;
    std::size_t intervals = 10;
    std::size_t pair_reps = 1;
    std::string orientation = "auto";

    void attach(CLI::App* cmd) {
        cmd->add_option("--bases", bases, "Taillard instance files used as problem 1");
        cmd->add_option("--pairs", pairs, "Pre-generated multi-task files (instead of --bases)");
        cmd->add_option("--pr", grid, "Replacing probabilities (default: --intervals equal steps)")->delimiter(',');
        cmd->add_option("--intervals", intervals, "Equal p_r steps over (0, 1]")->check(CLI::PositiveNumber);
        cmd->add_option("--pair-reps", pair_reps, "Generated pairs per (base, p_r)")->check(CLI::PositiveNumber);
        cmd->add_option("--orientation", orientation, "Taillard matrix layout: auto, machine or job");
    }

    std::vector<mtco::MultiTaskInstance> build(std::uint64_t seed) const {
        if (bases.empty() == pairs.empty()) throw UsageError("give exactly one of --bases or --pairs");
        if (!pairs.empty()) {
            std::vector<mtco::MultiTaskInstance> suite;
            for (const auto& p : pairs) {
                auto mt = mtco::load_multitask(p);
                if (!mt.recorded_distance)
                    mt.recorded_distance = mtco::inter_task_distance(mt.problem2, mt.problem1).normalized;
                suite.push_back(std::move(mt));
            }
            return suite;
        }
        std::vector<mtco::Instance> insts;
        for (const auto& b : bases) insts.push_back(mtco::load_taillard(b, parse_orientation(orientation)));
        return mtco::generate_suite(insts, pr_grid(grid, intervals), pair_reps, seed);
    }

    json describe() const {
        return {{"bases", bases}, {"pairs", pairs}, {"p_r", grid}, {"intervals", intervals}, {"pair_reps", pair_reps}};
    }
};

void write_manifest(const fs::path& dir, const std::string& study, std::uint64_t seed, json config,
                    const std::vector<std::string>& outputs) {
    json m;
    m["study"] = study;
    m["version"] = kVersion;
    m["seed"] = seed;
    m["config"] = std::move(config);
    m["outputs"] = outputs;
    auto out = open_out(dir / "manifest.json");
    out << m.dump(2) << '\n';
}

json config_json(const mtco::RunConfig& cfg) {
    json j;
    j["n_trial"] = cfg.n_trial;
    j["rs_size"] = cfg.rs_size;
    j["max_evals"] = cfg.max_evals ? json(*cfg.max_evals) : json("200n(n-1)");
    j["boundary"] = cfg.boundary;
    j["fixed_distance"] = cfg.fixed_distance;
    j["sa_blocks"] = cfg.sa_blocks;
    j["subset_mode"] = cfg.subset_mode == mtco::SubsetMode::RoundRobin ? "round-robin" : "full";
    j["neh_variants"] = cfg.neh_variants == mtco::NehVariantOrders::Priority ? "priority" : "machine-ends";
    return j;
}

struct RunOptions {
    std::optional<std::uint64_t> budget;
    std::size_t n_trial = 20;
    std::size_t rs_size = 12;
    double boundary = 0.5;
    double fixed_distance = 0.7;
    std::size_t sa_blocks = 1;
    bool full_subsets = false;
    bool machine_end_orders = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--budget", budget, "Evaluations per problem (default 200 n (n - 1))");
        cmd->add_option("--n-trial", n_trial, "Initial population size")->check(CLI::Range(4, 1000000));
        cmd->add_option("--rs-size", rs_size, "Reference set size")->check(CLI::Range(2, 1000000));
        cmd->add_option("--boundary", boundary, "Distance above which pairs are transformed")->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--fixed-distance", fixed_distance, "Distance used by mtco-dfixed")->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--sa-blocks", sa_blocks, "Annealing blocks of n (n - 1) moves per improvement")
            ->check(CLI::PositiveNumber);
        cmd->add_flag("--full-subsets", full_subsets, "Combine every reference pair each iteration");
        cmd->add_flag("--machine-end-orders", machine_end_orders, "Seed the NEH variants by first/last machine times");
    }

    mtco::RunConfig config(std::uint64_t seed) const {
        mtco::RunConfig cfg;
        cfg.max_evals = budget;
        cfg.n_trial = n_trial;
        cfg.rs_size = rs_size;
        cfg.boundary = boundary;
        cfg.fixed_distance = fixed_distance;
        cfg.sa_blocks = sa_blocks;
        cfg.rng_seed = seed;
        cfg.subset_mode = full_subsets ? mtco::SubsetMode::Full : mtco::SubsetMode::RoundRobin;
        cfg.neh_variants = machine_end_orders ? mtco::NehVariantOrders::MachineEnds : mtco::NehVariantOrders::Priority;
        return cfg;
    }
};

std::vector<mtco::Variant> parse_variants(const std::vector<std::string>& names) {
    std::vector<mtco::Variant> out;
    for (const auto& n : names) {
        try {
            out.push_back(mtco::variant_from_string(n));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    return out;
}

std::map<std::string, double> load_optima(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw mtco::DataError("cannot open " + p.string());
    std::map<std::string, double> out;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw mtco::DataError("optima: malformed line '" + line + "'");
        try {
            out[line.substr(0, comma)] = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw mtco::DataError("optima: malformed line '" + line + "'");
        }
    }
    return out;
}

void print_summary(const std::vector<mtco::VariantSummary>& summaries) {
    std::cout << std::left << std::setw(12) << "variant" << std::right << std::setw(9) << "BRE" << std::setw(9)
              << "ARE" << std::setw(9) << "WRE" << std::setw(10) << "RPS" << std::setw(10) << "speedup" << '\n';
    std::cout << std::fixed << std::setprecision(2);
    for (const auto& s : summaries) {
        std::cout << std::left << std::setw(12) << mtco::to_string(s.variant) << std::right << std::setw(9)
                  << s.instance.bre << std::setw(9) << s.instance.are << std::setw(9) << s.instance.wre
                  << std::setw(10) << s.rps << std::setw(10);
        if (s.speedup_to_own_final)
            std::cout << *s.speedup_to_own_final;
        else
            std::cout << "-";
        std::cout << '\n';
    }
}

int run_compare(const SuiteOptions& suite_opts, const RunOptions& run_opts, const std::vector<std::string>& variant_names,
                std::size_t reps, std::uint64_t seed, const std::string& optima_file, const fs::path& out_dir,
                const std::string& study) {
    const auto variants = parse_variants(variant_names);
    const auto suite = suite_opts.build(seed);
    std::function<std::optional<double>(std::size_t, int)> optima;
    std::map<std::string, double> known;
    if (!optima_file.empty()) {
        if (suite_opts.bases.empty()) throw UsageError("--optima needs --bases");
        known = load_optima(optima_file);
        const std::size_t per_base = suite.size() / suite_opts.bases.size();
        optima = [&, per_base](std::size_t i, int k) -> std::optional<double> {
            if (k != 1) return std::nullopt;
            const auto key = fs::path(suite_opts.bases[i / per_base]).stem().string();
            auto it = known.find(key);
            return it == known.end() ? std::nullopt : std::optional<double>(it->second);
        };
    }
    const auto result = mtco::study_compare(suite, variants, reps, run_opts.config(seed), optima);
    fs::create_directories(out_dir);
    {
        auto out = open_out(out_dir / "runs.csv");
        mtco::write_runs_csv(out, result.rows);
    }
    {
        auto out = open_out(out_dir / "summary.csv");
        mtco::write_summary_csv(out, result.summaries);
    }
    {
        auto out = open_out(out_dir / "traces.csv");
        mtco::write_traces_csv(out, result);
    }
    {
        auto out = open_out(out_dir / "c_star.csv");
        out << std::setprecision(12) << "instance,problem,c_star\n";
        for (std::size_t i = 0; i < result.c_star.size(); ++i)
            out << i / 2 << ',' << i % 2 + 1 << ',' << result.c_star[i] << '\n';
    }
    json cfg = config_json(run_opts.config(seed));
    cfg["suite"] = suite_opts.describe();
    cfg["variants"] = variant_names;
    cfg["reps"] = reps;
    cfg["optima"] = optima_file;
    write_manifest(out_dir, study, seed, cfg, {"runs.csv", "summary.csv", "traces.csv", "c_star.csv"});
    print_summary(result.summaries);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-task flowshop optimisation toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::uint64_t seed = 1;
    std::string out;
    std::string orientation = "auto";

    // distance
    auto* distance = app.add_subcommand("distance", "Inter-task distance of two instances or a multi-task file");
    std::vector<std::string> distance_inputs;
    bool align = false;
    distance->add_option("inputs", distance_inputs, "Two Taillard files, or one multi-task file")->required()->expected(1, 2);
    distance->add_flag("--align", align, "Match Q's jobs to P's before measuring");
    distance->add_option("--orientation", orientation, "Taillard matrix layout: auto, machine or job");

    // generate
    auto* generate = app.add_subcommand("generate", "Generate a multi-task pair from a base instance");
    std::string base;
    double pr = 0.5;
    generate->add_option("--base", base, "Taillard file for problem 1")->required();
    generate->add_option("--pr", pr, "Replacing probability")->check(CLI::Range(0.0, 1.0));
    generate->add_option("--seed", seed, "Random seed");
    generate->add_option("--out", out, "Output multi-task file")->required();
    generate->add_option("--orientation", orientation, "Taillard matrix layout: auto, machine or job");

    // solve
    auto* solve = app.add_subcommand("solve", "Solve a multi-task pair");
    std::string pair_file;
    std::string variant = "mtco";
    RunOptions solve_opts;
    solve->add_option("pair", pair_file, "Multi-task file")->required();
    solve->add_option("--variant", variant, "mtco, stss, mtco-p, mtco-c, mtco-e, mtco-dfixed, mtco-nopt");
    solve->add_option("--seed", seed, "Random seed");
    solve->add_option("--out", out, "Result file (JSON); printed to stdout when omitted");
    solve_opts.attach(solve);

    // study-srcc
    auto* srcc = app.add_subcommand("study-srcc", "Distance against sampled rank correlation");
    SuiteOptions srcc_suite;
    std::size_t samples = 2000;
    srcc_suite.attach(srcc);
    srcc->add_option("--samples", samples, "Random permutations per pair")->check(CLI::Range(2, 100000000));
    srcc->add_option("--seed", seed, "Random seed");
    srcc->add_option("--out", out, "Output directory")->required();

    // study-transferability
    auto* transfer = app.add_subcommand("study-transferability", "Rank of problem 1's best among random problem 2 solutions");
    SuiteOptions transfer_suite;
    RunOptions transfer_opts;
    std::size_t transfer_samples = 10000;
    transfer_suite.attach(transfer);
    transfer_opts.attach(transfer);
    transfer->add_option("--samples", transfer_samples, "Random target solutions per pair")->check(CLI::PositiveNumber);
    transfer->add_option("--seed", seed, "Random seed");
    transfer->add_option("--out", out, "Output directory")->required();

    // study-compare / study-ablation
    auto* compare = app.add_subcommand("study-compare", "Compare solver variants over a generated suite");
    SuiteOptions compare_suite;
    RunOptions compare_opts;
    std::vector<std::string> compare_variants{"stss", "mtco"};
    std::size_t reps = 5;
    std::string optima_file;
    compare_suite.attach(compare);
    compare_opts.attach(compare);
    compare->add_option("--variant", compare_variants, "Variants to run")->delimiter(',');
    compare->add_option("--reps", reps, "Independent runs per pair and variant")->check(CLI::PositiveNumber);
    compare->add_option("--optima", optima_file, "CSV of instance,c_star used as C* for problem 1");
    compare->add_option("--seed", seed, "Random seed");
    compare->add_option("--out", out, "Output directory")->required();

    auto* ablation = app.add_subcommand("study-ablation", "Single-modality variants against STSS and MTCO");
    SuiteOptions ablation_suite;
    RunOptions ablation_opts;
    std::vector<std::string> ablation_variants{"stss", "mtco", "mtco-p", "mtco-c", "mtco-e"};
    ablation_suite.attach(ablation);
    ablation_opts.attach(ablation);
    ablation->add_option("--variant", ablation_variants, "Variants to run")->delimiter(',');
    ablation->add_option("--reps", reps, "Independent runs per pair and variant")->check(CLI::PositiveNumber);
    ablation->add_option("--seed", seed, "Random seed");
    ablation->add_option("--out", out, "Output directory")->required();

    // report
    auto* report = app.add_subcommand("report", "Summarise a runs.csv produced by a comparison study");
    std::string runs_file;
    report->add_option("runs", runs_file, "runs.csv")->required();
    report->add_option("--out", out, "Summary CSV; printed to stdout when omitted");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (distance->parsed()) {
            const auto o = parse_orientation(orientation);
            mtco::DistanceReport r;
            if (distance_inputs.size() == 1) {
                if (!is_multitask_file(distance_inputs[0])) throw UsageError("a single input must be a multi-task file");
                const auto mt = mtco::load_multitask(distance_inputs[0]);
                r = mtco::inter_task_distance(mt.problem2, mt.problem1, align);
            } else {
                const auto a = mtco::load_taillard(distance_inputs[0], o);
                const auto b = mtco::load_taillard(distance_inputs[1], o);
                r = mtco::inter_task_distance(b, a, align);
            }
            std::cout << std::setprecision(6) << "distance " << r.normalized << "\nt_star " << r.t_star << "\nb_star "
                      << r.b_star << "\nraw " << r.raw << '\n';
            if (r.preprocessing.padded)
                std::cout << "padded_to " << r.preprocessing.common.jobs << 'x' << r.preprocessing.common.machines << '\n';
            return 0;
        }
        if (generate->parsed()) {
            auto mt = mtco::generate_pair(mtco::load_taillard(base, parse_orientation(orientation)), pr, seed);
            mt.recorded_distance = mtco::inter_task_distance(mt.problem2, mt.problem1).normalized;
            if (fs::path(out).has_parent_path()) fs::create_directories(fs::path(out).parent_path());
            mtco::save_multitask(out, mt);
            std::cout << std::setprecision(6) << "distance " << *mt.recorded_distance << '\n';
            return 0;
        }
        if (solve->parsed()) {
            const auto mt = mtco::load_multitask(pair_file);
            mtco::RunConfig cfg = solve_opts.config(seed);
            try {
                cfg.variant = mtco::variant_from_string(variant);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const auto [t1, t2] = mtco::solve_pair(mt.problem1, mt.problem2, cfg);
            json j;
            j["variant"] = std::string(mtco::to_string(cfg.variant));
            j["seed"] = seed;
            j["config"] = config_json(cfg);
            j["pair"] = pair_file;
            if (t1.distance) j["distance"] = t1.distance->normalized;
            if (t1.transform) {
                j["transform_accepted"] = t1.transform->accepted;
                j["distance_after_transform"] = t1.transform->d_after;
            }
            json problems = json::array();
            for (const auto* t : {&t1, &t2}) {
                std::size_t fired = 0;
                for (const auto& e : t->transfers) fired += e.fired ? 1 : 0;
                problems.push_back({{"best", t->best.one_based()},
                                    {"value", t->best_value},
                                    {"evaluations", t->evaluations},
                                    {"transfer_decisions", t->transfers.size()},
                                    {"transfers_fired", fired}});
            }
            j["problems"] = problems;
            const std::string text = j.dump(2) + "\n";
            if (out.empty()) {
                std::cout << text;
            } else {
                auto f = open_out(out);
                f << text;
            }
            return 0;
        }
        if (srcc->parsed()) {
            const auto suite = srcc_suite.build(seed);
            const auto study = mtco::study_distance_srcc(suite, samples, seed);
            fs::create_directories(out);
            auto f = open_out(fs::path(out) / "srcc.csv");
            mtco::write_srcc_csv(f, study);
            json cfg{{"suite", srcc_suite.describe()},
                     {"samples", samples},
                     {"fit", {{"slope", study.fit.slope}, {"intercept", study.fit.intercept}, {"r_squared", study.fit.r_squared}}}};
            write_manifest(out, "srcc", seed, cfg, {"srcc.csv"});
            std::cout << std::setprecision(4) << "pairs " << study.rows.size() << "\nslope " << study.fit.slope
                      << "\nr_squared " << study.fit.r_squared << '\n';
            return 0;
        }
        if (transfer->parsed()) {
            const auto suite = transfer_suite.build(seed);
            const auto rows = mtco::study_transferability(suite, transfer_samples, seed, transfer_opts.config(seed));
            fs::create_directories(out);
            auto f = open_out(fs::path(out) / "transferability.csv");
            mtco::write_transferability_csv(f, rows);
            json cfg = config_json(transfer_opts.config(seed));
            cfg["suite"] = transfer_suite.describe();
            cfg["samples"] = transfer_samples;
            write_manifest(out, "transferability", seed, cfg, {"transferability.csv"});
            std::size_t top10 = 0;
            for (const auto& r : rows) top10 += r.rank <= 10 ? 1 : 0;
            std::cout << "pairs " << rows.size() << "\nrank_le_10 " << top10 << '\n';
            return 0;
        }
        if (compare->parsed())
            return run_compare(compare_suite, compare_opts, compare_variants, reps, seed, optima_file, out, "compare");
        if (ablation->parsed())
            return run_compare(ablation_suite, ablation_opts, ablation_variants, reps, seed, "", out, "ablation");
        if (report->parsed()) {
            std::ifstream in(runs_file);
            if (!in) throw mtco::DataError("cannot open " + runs_file);
            const auto rows = mtco::read_runs_csv(in);
            std::vector<mtco::Variant> variants;
            std::size_t instances = 0;
            for (const auto& r : rows) {
                if (std::find(variants.begin(), variants.end(), r.variant) == variants.end()) variants.push_back(r.variant);
                instances = std::max(instances, r.instance + 1);
            }
            const auto summaries = mtco::summarize(rows, variants, mtco::best_found(rows, instances));
            if (out.empty()) {
                mtco::write_summary_csv(std::cout, summaries);
            } else {
                auto f = open_out(out);
                mtco::write_summary_csv(f, summaries);
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return 1;
    } catch (const mtco::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
