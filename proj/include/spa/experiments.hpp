#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "spa/engine.hpp"
#include "spa/generator.hpp"
#include "spa/io.hpp"
#include "spa/oracle.hpp"

namespace spa {

/// Reads `taxonomy.csv`, `students.csv` and `supervisors.csv` from `dir`.
PreferencePool load_pool(const std::filesystem::path& dir);
void save_pool(const PreferencePool& pool, const std::filesystem::path& dir);

/// Frontier report for a set of frontier points, naming their matching files.
FrontierReport make_frontier_report(const std::vector<ObjectivePair>& points, const ReferencePoint& ref, bool exact,
                                    const std::string& matching_prefix);

// ---- solve ----------------------------------------------------------------

struct SolveOutput {
    EvolutionResult result;
    FrontierReport frontier;
};

/// Runs the GA and, when `out_dir` is nonempty, writes frontier.csv, one matching file
/// per frontier point under matchings/, report.csv and the resolved config.json.
SolveOutput run_solve(const ProblemInstance& instance, const SolverConfig& config,
                      const std::filesystem::path& out_dir = {});

// ---- grid -----------------------------------------------------------------

/// Inclusive arithmetic range; values are start + k * step up to stop (with rounding slack).
std::vector<double> value_range(double start, double stop, double step);

struct GridCell {
    double p_mt = 0.0;
    double p_sw = 0.0;
    double s_metric = 0.0;          ///< mean final-frontier S-metric
    double best_students = 0.0;     ///< mean best student objective
    double best_supervisors = 0.0;  ///< mean best supervisor objective
};

struct GridSpec {
    std::vector<double> p_mt;
    std::vector<double> p_sw;
    std::size_t reps = 1;  ///< run seeds are config.seed, config.seed + 1, ...
    std::size_t threads = 1;
};

/// Every (p_mt, p_sw) combination on every instance and run seed. A run's seed does not
/// depend on the cell, so all cells of one instance share initial populations.
std::vector<GridCell> run_grid(const std::vector<ProblemInstance>& instances, const SolverConfig& config,
                               const GridSpec& spec);
/// Records `p_mt,p_sw,metric,value`.
void write_grid(std::ostream& out, const std::vector<GridCell>& cells);

// ---- bench ----------------------------------------------------------------

enum class CurveClass { Linear, Linearithmic, PowerThreeHalves };
std::string to_string(CurveClass c);

struct CurveFit {
    CurveClass best = CurveClass::Linear;
    double rss_linear = 0.0;
    double rss_linearithmic = 0.0;
    double rss_three_halves = 0.0;
};

/// Least-squares fits of y = a + b f(n) for f in {n, n log n, n^1.5}.
CurveFit fit_growth(const std::vector<double>& n, const std::vector<double>& y);

struct TimingRecord {
    std::string op;
    std::size_t n = 0, m = 0;
    double mean_seconds = 0.0;
};

struct RatioRecord {
    std::size_t n = 0;
    std::size_t ratio = 0;  ///< m = n / ratio
    double mean_ratio = 0.0;
};

struct BenchSpec {
    std::vector<std::size_t> sizes{50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
    std::size_t trials = 1000;
    std::size_t timing_ratio = 10;
    std::size_t timing_repeats = 10;  ///< timing rounds over all sizes; the fastest is kept per size
    std::vector<std::size_t> ratios{8, 10, 12};
    double surplus_percent = 20.0;
    double alpha = 2.0;
    std::uint64_t seed = 1;
};

struct BenchReport {
    std::vector<TimingRecord> timing;
    CurveFit gsp_fit, hk_fit;
    std::vector<RatioRecord> ratios;
};

/// Times both crossovers on `trials` random parent pairs per size and measures the greedy
/// crossover's new-gene ratio for each student/supervisor ratio. Instances use scaled quotas.
BenchReport run_bench(const BenchSpec& spec, const PreferencePool& pool);
/// Records `operator,n,m,mean_time_us,fitted_curve_class`. Times vary between runs.
void write_timing(std::ostream& out, const BenchReport& report);
/// Records `n,m_ratio_class,mean_ratio`. Deterministic for a fixed seed.
void write_ratios(std::ostream& out, const BenchReport& report);

// ---- compare --------------------------------------------------------------

struct CompareRecord {
    std::uint64_t seed = 0;
    double student_optimality = 0.0;     ///< GA best / exact best
    double supervisor_optimality = 0.0;
    double ga_s_metric = 0.0;
    double exact_s_metric = 0.0;
};

struct CompareReport {
    ExactBest best_students;
    ExactBest best_supervisors;
    std::vector<FrontierPoint> exact_frontier;
    std::vector<CompareRecord> runs;

    double mean_student_optimality() const;
    double mean_supervisor_optimality() const;
    double mean_s_metric_gap() const;  ///< mean (GA - exact) / exact
};

/// GA runs with seeds config.seed .. config.seed + reps - 1 against the exhaustive oracle.
CompareReport run_compare(const ProblemInstance& instance, const SolverConfig& config, std::size_t reps,
                          double budget = default_enumeration_budget);
void write_compare(std::ostream& out, const CompareReport& report);

}  // namespace spa
