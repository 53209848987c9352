#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "spa/experiments.hpp"

namespace fs = std::filesystem;
using namespace spa;

namespace {

enum Exit { ok = 0, validation_error = 1, budget_exceeded = 2 };

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::size_t threads = 1;
};

SolverConfig resolve_config(const Common& c) {
    SolverConfig config = c.config.empty() ? SolverConfig{} : load_config(c.config);
    if (c.seed) config.ga.seed = *c.seed;
    config.ga.threads = c.threads;
    config.ga.validate();
    return config;
}

PreferencePool resolve_pool(const std::string& dir, std::uint64_t pool_seed) {
    return dir.empty() ? synthetic_pool(pool_seed) : load_pool(dir);
}

/// "start:stop:step" or a single value.
std::vector<double> parse_range(const std::string& text) {
    const auto parts = split_csv([&] {
        std::string s = text;
        for (char& ch : s)
            if (ch == ':') ch = ',';
        return s;
    }());
    if (parts.size() == 1) return {parse_double(parts[0])};
    if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:step, got '" + text + "'");
    return value_range(parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]));
}

void write_output(const fs::path& dir, const std::string& name, const std::string& text) {
    if (dir.empty())
        std::cout << text;
    else
        write_file(dir / name, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-objective student-supervisor allocation"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Draw an instance from a preference pool");
    std::size_t gen_n = 150, gen_m = 30;
    double gen_surplus = 20.0, gen_alpha = 2.0;
    std::string gen_pool, gen_stem = "instance", gen_scheme = "redraw";
    std::uint64_t gen_seed = 1, pool_seed = 1;
    std::string gen_out = ".";
    bool gen_save_pool = false;
    gen->add_option("-n,--students", gen_n, "Number of students");
    gen->add_option("-m,--supervisors", gen_m, "Number of supervisors");
    gen->add_option("--surplus", gen_surplus, "Capacity surplus in percent");
    gen->add_option("--alpha", gen_alpha, "Balance exponent");
    InstanceSpec gen_spec;
    gen->add_option("--c-min", gen_spec.c_min, "Lower quota of every supervisor");
    gen->add_option("--c-max-lo", gen_spec.c_max_lo, "Smallest upper quota");
    gen->add_option("--c-max-hi", gen_spec.c_max_hi, "Largest upper quota");
    gen->add_option("--pool", gen_pool, "Preference pool directory (default: synthetic pool)");
    gen->add_option("--pool-seed", pool_seed, "Seed of the synthetic pool");
    gen->add_flag("--save-pool", gen_save_pool, "Also write the pool into the output directory");
    gen->add_option("--quota-scheme", gen_scheme, "redraw or scaled")->check(CLI::IsMember({"redraw", "scaled"}));
    gen->add_option("--stem", gen_stem, "Instance file stem");
    gen->add_option("--seed", gen_seed, "Master seed");
    gen->add_option("--out-dir", gen_out, "Output directory");

    // solve
    auto* solve = app.add_subcommand("solve", "Run the genetic algorithm on one instance");
    std::string solve_instance;
    Common solve_opts;
    solve->add_option("--instance", solve_instance, "Instance document")->required();
    solve->add_option("--config", solve_opts.config, "Solver configuration document");
    solve->add_option("--seed", solve_opts.seed, "Master seed");
    solve->add_option("--out-dir", solve_opts.out_dir, "Output directory")->required();
    solve->add_option("--threads", solve_opts.threads, "Evaluation threads");

    // grid
    auto* grid = app.add_subcommand("grid", "Grid search over mutation probabilities");
    std::vector<std::string> grid_instances;
    std::string grid_pmt = "0.05:0.5:0.05", grid_psw = "0.1:0.9:0.1";
    std::size_t grid_reps = 1;
    Common grid_opts;
    grid->add_option("--instance", grid_instances, "Instance documents")->required();
    grid->add_option("--config", grid_opts.config, "Solver configuration document");
    grid->add_option("--p-mt", grid_pmt, "Mutation probability range start:stop:step");
    grid->add_option("--p-sw", grid_psw, "Transfer threshold range start:stop:step");
    grid->add_option("--reps", grid_reps, "Seeds per instance");
    grid->add_option("--seed", grid_opts.seed, "Master seed");
    grid->add_option("--out-dir", grid_opts.out_dir, "Output directory");
    grid->add_option("--threads", grid_opts.threads, "Parallel runs");

    // bench
    auto* bench = app.add_subcommand("bench", "Crossover timing and new-gene ratios");
    BenchSpec bench_spec;
    std::string bench_pool;
    std::string bench_out;
    std::size_t size_step = 50, size_max = 500;
    bench->add_option("--size-step", size_step, "Sizes run from step to max in steps of step");
    bench->add_option("--size-max", size_max, "Largest number of students");
    bench->add_option("--trials", bench_spec.trials, "Parent pairs per size");
    bench->add_option("--ratios", bench_spec.ratios, "Student-to-supervisor ratios for the new-gene report");
    bench->add_option("--timing-ratio", bench_spec.timing_ratio, "Student-to-supervisor ratio for timing");
    bench->add_option("--timing-repeats", bench_spec.timing_repeats, "Timed passes per size (fastest kept)");
    bench->add_option("--surplus", bench_spec.surplus_percent, "Capacity surplus in percent");
    bench->add_option("--pool", bench_pool, "Preference pool directory (default: synthetic pool)");
    bench->add_option("--pool-seed", pool_seed, "Seed of the synthetic pool");
    bench->add_option("--seed", bench_spec.seed, "Master seed");
    bench->add_option("--out-dir", bench_out, "Output directory");

    // compare
    auto* compare = app.add_subcommand("compare", "Compare GA runs against the exhaustive oracle");
    std::string compare_instance;
    std::size_t compare_reps = 10;
    double compare_budget = default_enumeration_budget;
    Common compare_opts;
    compare->add_option("--instance", compare_instance, "Instance document")->required();
    compare->add_option("--config", compare_opts.config, "Solver configuration document");
    compare->add_option("--reps", compare_reps, "GA runs (seeds seed .. seed + reps - 1)");
    compare->add_option("--enum-budget", compare_budget, "Largest m^n the oracle may enumerate");
    compare->add_option("--seed", compare_opts.seed, "Master seed");
    compare->add_option("--out-dir", compare_opts.out_dir, "Output directory");
    compare->add_option("--threads", compare_opts.threads, "Evaluation threads");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Exact Pareto frontier by enumeration");
    std::string oracle_instance, oracle_out;
    double oracle_budget = default_enumeration_budget;
    std::optional<std::uint64_t> oracle_seed;
    oracle->add_option("--instance", oracle_instance, "Instance document")->required();
    oracle->add_option("--enum-budget", oracle_budget, "Largest m^n to enumerate");
    oracle->add_option("--out-dir", oracle_out, "Output directory");
    oracle->add_option("--seed", oracle_seed, "Accepted for uniformity; enumeration is deterministic");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : validation_error;
    }

    try {
        if (*gen) {
            const auto pool = resolve_pool(gen_pool, pool_seed);
            InstanceSpec spec = gen_spec;
            spec.students = gen_n;
            spec.supervisors = gen_m;
            spec.surplus_percent = gen_surplus;
            spec.alpha = gen_alpha;
            spec.scheme = gen_scheme == "scaled" ? QuotaScheme::Scaled : QuotaScheme::Redraw;
            const auto generated = generate_instance(spec, pool, gen_seed);
            for (const auto& w : generated.warnings) std::cerr << "warning: " << w << '\n';
            fs::create_directories(gen_out);
            if (gen_save_pool) save_pool(pool, gen_out);
            std::cout << save_instance(generated.instance, gen_out, gen_stem).string() << '\n';
        } else if (*solve) {
            const auto instance = load_instance(solve_instance);
            const auto config = resolve_config(solve_opts);
            const auto out = run_solve(instance, config, solve_opts.out_dir);
            std::cout << "iterations " << out.result.history.size() << (out.result.converged ? " (converged)" : "")
                      << ", frontier " << out.frontier.points.size() << " points, s_metric "
                      << format_double(out.frontier.s_metric) << '\n';
        } else if (*grid) {
            std::vector<ProblemInstance> instances;
            for (const auto& path : grid_instances) instances.push_back(load_instance(path));
            const auto config = resolve_config(grid_opts);
            GridSpec spec{parse_range(grid_pmt), parse_range(grid_psw), grid_reps, grid_opts.threads};
            std::ostringstream text;
            write_grid(text, run_grid(instances, config, spec));
            write_output(grid_opts.out_dir, "grid.csv", text.str());
        } else if (*bench) {
            if (size_step == 0 || size_max < size_step) throw std::invalid_argument("invalid bench sizes");
            bench_spec.sizes.clear();
            for (std::size_t n = size_step; n <= size_max; n += size_step) bench_spec.sizes.push_back(n);
            const auto report = run_bench(bench_spec, resolve_pool(bench_pool, pool_seed));
            std::ostringstream timing, ratios;
            write_timing(timing, report);
            write_ratios(ratios, report);
            write_output(bench_out, "timing.csv", timing.str());
            write_output(bench_out, "ratios.csv", ratios.str());
        } else if (*compare) {
            const auto instance = load_instance(compare_instance);
            const auto config = resolve_config(compare_opts);
            std::cerr << "estimated enumeration size " << enumeration_size(instance) << '\n';
            std::ostringstream text;
            write_compare(text, run_compare(instance, config, compare_reps, compare_budget));
            write_output(compare_opts.out_dir, "compare.csv", text.str());
        } else if (*oracle) {
            const auto instance = load_instance(oracle_instance);
            std::cerr << "estimated enumeration size " << enumeration_size(instance) << '\n';
            const auto frontier = exact_pareto_frontier(instance, oracle_budget);
            std::vector<ObjectivePair> points;
            for (const auto& p : frontier) points.push_back(p.objectives);
            const auto report = make_frontier_report(points, ReferencePoint{}, true, "matchings/exact_");
            std::ostringstream text;
            write_frontier(text, report);
            write_output(oracle_out, "frontier.csv", text.str());
            if (!oracle_out.empty())
                for (std::size_t k = 0; k < frontier.size(); ++k) {
                    std::ostringstream m;
                    write_matching(m, frontier[k].matching, instance);
                    write_file(fs::path(oracle_out) / report.matching_files[k], m.str());
                }
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return budget_exceeded;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return validation_error;
    }
    return ok;
}
