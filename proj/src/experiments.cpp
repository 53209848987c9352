#include "spa/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <sstream>
#include <thread>

namespace spa {

namespace fs = std::filesystem;

PreferencePool load_pool(const fs::path& dir) {
    PreferencePool pool;
    const fs::path tax = dir / "taxonomy.csv";
    std::istringstream tax_in(read_file(tax));
    pool.tree = std::make_shared<const TopicTree>(read_taxonomy(tax_in, tax.string()));
    auto lists = [&](const char* name) {
        const fs::path p = dir / name;
        std::istringstream in(read_file(p));
        std::vector<RankedPreference> out;
        for (auto& person : read_preferences(in, *pool.tree, p.string())) out.push_back(std::move(person.preferences));
        return out;
    };
    pool.students = lists("students.csv");
    pool.supervisors = lists("supervisors.csv");
    return pool;
}

void save_pool(const PreferencePool& pool, const fs::path& dir) {
    std::ostringstream tax;
    write_taxonomy(tax, *pool.tree);
    write_file(dir / "taxonomy.csv", tax.str());
    auto emit = [&](const std::vector<RankedPreference>& lists, const std::string& prefix, const char* name) {
        std::vector<Participant> people;
        for (std::size_t k = 0; k < lists.size(); ++k) people.push_back({prefix + std::to_string(k + 1), lists[k]});
        std::ostringstream out;
        write_preferences(out, people, *pool.tree);
        write_file(dir / name, out.str());
    };
    emit(pool.students, "s", "students.csv");
    emit(pool.supervisors, "r", "supervisors.csv");
}

namespace {

std::string matching_file_name(const std::string& prefix, std::size_t k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%03zu", k);
    return prefix + buf + ".csv";
}

std::vector<ObjectivePair> objectives_of(const std::vector<Individual>& individuals) {
    std::vector<ObjectivePair> out;
    for (const auto& ind : individuals) out.push_back(ind.objectives);
    return out;
}

}  // namespace

FrontierReport make_frontier_report(const std::vector<ObjectivePair>& points, const ReferencePoint& ref, bool exact,
                                    const std::string& matching_prefix) {
    FrontierReport report;
    report.points = points;
    report.ref = ref;
    report.exact = exact;
    report.s_metric = s_metric(points, ref);
    for (std::size_t k = 0; k < points.size(); ++k)
        report.matching_files.push_back(matching_file_name(matching_prefix, k));
    return report;
}

SolveOutput run_solve(const ProblemInstance& base, const SolverConfig& config, const fs::path& out_dir) {
    const ProblemInstance instance = apply_overrides(base, config);
    SolveOutput out;
    out.result = evolve(instance, config.ga);
    const auto front = out.result.pareto_front();
    out.frontier = make_frontier_report(objectives_of(front), config.ga.ref, false, "matchings/frontier_");
    if (out_dir.empty()) return out;

    std::ostringstream frontier, report, cfg;
    write_frontier(frontier, out.frontier);
    write_file(out_dir / "frontier.csv", frontier.str());
    for (std::size_t k = 0; k < front.size(); ++k) {
        std::ostringstream m;
        write_matching(m, front[k].matching, instance);
        write_file(out_dir / out.frontier.matching_files[k], m.str());
    }
    write_history(report, out.result.history);
    write_file(out_dir / "report.csv", report.str());
    write_config(cfg, config);
    write_file(out_dir / "config.json", cfg.str());
    return out;
}

std::vector<double> value_range(double start, double stop, double step) {
    if (!(step > 0.0) || stop < start) throw std::invalid_argument("empty or invalid range");
    std::vector<double> out;
    for (std::size_t k = 0;; ++k) {
        // Rounded to 12 significant digits so 0.05 * 3 prints as 0.15.
        const double v = std::round((start + static_cast<double>(k) * step) * 1e12) / 1e12;
        if (v > stop + step * 1e-9) break;
        out.push_back(v);
    }
    return out;
}

namespace {

/// Runs jobs 0..count-1 on up to `threads` workers. Each job writes only its own slot.
template <class Job>
void parallel_for(std::size_t count, std::size_t threads, Job job) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t k = 0; k < count; ++k) job(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::thread> workers;
    for (std::size_t t = 0; t < std::min(threads, count); ++t)
        workers.emplace_back([&] {
            for (std::size_t k; (k = next++) < count;) {
                try {
                    job(k);
                } catch (...) {
                    std::lock_guard lock(failure_lock);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<GridCell> run_grid(const std::vector<ProblemInstance>& instances, const SolverConfig& config,
                               const GridSpec& spec) {
    if (spec.p_mt.empty() || spec.p_sw.empty()) throw std::invalid_argument("grid ranges must not be empty");
    if (instances.empty()) throw std::invalid_argument("grid needs at least one instance");
    if (spec.reps < 1) throw std::invalid_argument("grid needs at least one repetition");

    std::vector<ProblemInstance> prepared;
    for (const auto& inst : instances) prepared.push_back(apply_overrides(inst, config));

    const std::size_t runs_per_cell = prepared.size() * spec.reps;
    const std::size_t cells = spec.p_mt.size() * spec.p_sw.size();
    struct RunResult {
        double s = 0.0, fs = 0.0, fr = 0.0;
    };
    std::vector<RunResult> runs(cells * runs_per_cell);

    parallel_for(runs.size(), spec.threads, [&](std::size_t job) {
        const std::size_t cell = job / runs_per_cell;
        const std::size_t inst = (job % runs_per_cell) / spec.reps;
        const std::size_t rep = job % spec.reps;
        GAConfig ga = config.ga;
        ga.mutation = {spec.p_mt[cell / spec.p_sw.size()], spec.p_sw[cell % spec.p_sw.size()]};
        ga.seed = config.ga.seed + rep;
        ga.threads = 1;
        const auto result = evolve(prepared[inst], ga);
        RunResult r;
        r.s = s_metric(objectives_of(result.pareto_front()), ga.ref);
        for (const auto& ind : result.population) {
            r.fs = std::max(r.fs, ind.objectives.students);
            r.fr = std::max(r.fr, ind.objectives.supervisors);
        }
        runs[job] = r;
    });

    std::vector<GridCell> out;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        GridCell c;
        c.p_mt = spec.p_mt[cell / spec.p_sw.size()];
        c.p_sw = spec.p_sw[cell % spec.p_sw.size()];
        for (std::size_t k = 0; k < runs_per_cell; ++k) {
            const auto& r = runs[cell * runs_per_cell + k];
            c.s_metric += r.s;
            c.best_students += r.fs;
            c.best_supervisors += r.fr;
        }
        const double denom = static_cast<double>(runs_per_cell);
        c.s_metric /= denom;
        c.best_students /= denom;
        c.best_supervisors /= denom;
        out.push_back(c);
    }
    return out;
}

void write_grid(std::ostream& out, const std::vector<GridCell>& cells) {
    out << "# p_mt,p_sw,metric,value\n";
    for (const auto& c : cells) {
        const std::string key = format_double(c.p_mt) + "," + format_double(c.p_sw) + ",";
        out << key << "s_metric," << format_double(c.s_metric) << '\n';
        out << key << "best_f_students," << format_double(c.best_students) << '\n';
        out << key << "best_f_supervisors," << format_double(c.best_supervisors) << '\n';
    }
}

std::string to_string(CurveClass c) {
    switch (c) {
    case CurveClass::Linear: return "linear";
    case CurveClass::Linearithmic: return "linearithmic";
    case CurveClass::PowerThreeHalves: return "n^1.5";
    }
    return "linear";
}

namespace {

double fit_rss(const std::vector<double>& x, const std::vector<double>& y) {
    const double k = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = k * sxx - sx * sx;
    const double b = denom != 0.0 ? (k * sxy - sx * sy) / denom : 0.0;
    const double a = (sy - b * sx) / k;
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (a + b * x[i]);
        rss += e * e;
    }
    return rss;
}

}  // namespace

CurveFit fit_growth(const std::vector<double>& n, const std::vector<double>& y) {
    if (n.size() != y.size() || n.size() < 3) throw std::invalid_argument("growth fit needs at least 3 points");
    std::vector<double> lin(n), nlogn, n15;
    for (double v : n) {
        nlogn.push_back(v * std::log(v));
        n15.push_back(v * std::sqrt(v));
    }
    CurveFit fit;
    fit.rss_linear = fit_rss(lin, y);
    fit.rss_linearithmic = fit_rss(nlogn, y);
    fit.rss_three_halves = fit_rss(n15, y);
    fit.best = CurveClass::Linear;
    double best = fit.rss_linear;
    if (fit.rss_linearithmic < best) {
        best = fit.rss_linearithmic;
        fit.best = CurveClass::Linearithmic;
    }
    if (fit.rss_three_halves < best) fit.best = CurveClass::PowerThreeHalves;
    return fit;
}

namespace {

std::vector<std::pair<Matching, Matching>> random_parent_pairs(const ProblemInstance& instance, std::size_t count,
                                                               Rng& rng) {
    std::vector<std::pair<Matching, Matching>> pairs;
    pairs.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        Matching a = random_feasible_matching(instance, rng);
        pairs.emplace_back(std::move(a), random_feasible_matching(instance, rng));
    }
    return pairs;
}

ProblemInstance bench_instance(const BenchSpec& spec, const PreferencePool& pool, std::size_t n, std::size_t ratio,
                               std::uint64_t seed) {
    InstanceSpec is;
    is.students = n;
    is.supervisors = std::max<std::size_t>(1, n / ratio);
    is.surplus_percent = spec.surplus_percent;
    is.scheme = QuotaScheme::Scaled;
    is.alpha = spec.alpha;
    return generate_instance(is, pool, seed).instance;
}

/// CPU time of the calling thread; unlike wall time it excludes preemption and steal.
double thread_cpu_seconds() {
    timespec ts{};
    clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
    return static_cast<double>(ts.tv_sec) + 1e-9 * static_cast<double>(ts.tv_nsec);
}

}  // namespace

BenchReport run_bench(const BenchSpec& spec, const PreferencePool& pool) {
    if (spec.sizes.empty() || spec.trials == 0 || spec.timing_repeats == 0)
        throw std::invalid_argument("bench needs sizes, trials and timing repeats");
    BenchReport report;
    std::vector<double> ns, gsp_t, hk_t;

    struct TimingCase {
        ProblemInstance instance;
        std::vector<std::pair<Matching, Matching>> pairs;
        Rng op_rng;
        double hk = std::numeric_limits<double>::infinity();
        double gsp = std::numeric_limits<double>::infinity();
    };
    std::vector<TimingCase> cases;
    for (std::size_t n : spec.sizes) {
        auto instance = bench_instance(spec, pool, n, spec.timing_ratio, derive_seed(spec.seed, "bench-timing", n));
        Rng rng = make_stream(spec.seed, "bench-timing-pairs", n);
        auto pairs = random_parent_pairs(instance, spec.trials, rng);
        cases.push_back({std::move(instance), std::move(pairs), make_stream(spec.seed, "bench-timing-ops", n)});
    }
    // Each round times every size once and the fastest round is kept per size, so a burst
    // of interference from other load cannot cover all passes of one size.
    std::size_t sink = 0;
    for (std::size_t round = 0; round < spec.timing_repeats; ++round) {
        for (auto& c : cases) {
            auto time_op = [&](auto&& op) {
                const double start = thread_cpu_seconds();
                for (const auto& [a, b] : c.pairs) sink += op(a, b).supervisor_of(0);
                return (thread_cpu_seconds() - start) / static_cast<double>(c.pairs.size());
            };
            c.hk = std::min(c.hk, time_op([&](const Matching& a, const Matching& b) {
                return hopcroft_karp_crossover(a, b, spec.alpha, c.instance, c.op_rng);
            }));
            c.gsp = std::min(c.gsp, time_op([&](const Matching& a, const Matching& b) {
                return gsp_crossover(a, b, spec.alpha, c.instance, c.op_rng);
            }));
        }
    }
    if (sink == static_cast<std::size_t>(-1)) std::puts("");
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const std::size_t n = spec.sizes[k], m = cases[k].instance.num_supervisors();
        report.timing.push_back({"hopcroft-karp", n, m, cases[k].hk});
        report.timing.push_back({"gsp", n, m, cases[k].gsp});
        ns.push_back(static_cast<double>(n));
        hk_t.push_back(cases[k].hk);
        gsp_t.push_back(cases[k].gsp);
    }
    if (ns.size() >= 3) {
        report.hk_fit = fit_growth(ns, hk_t);
        report.gsp_fit = fit_growth(ns, gsp_t);
    }

    for (std::size_t ratio : spec.ratios) {
        for (std::size_t n : spec.sizes) {
            const std::uint64_t key = n * 1000 + ratio;
            const auto instance = bench_instance(spec, pool, n, ratio, derive_seed(spec.seed, "bench-ratio", key));
            Rng rng = make_stream(spec.seed, "bench-ratio-pairs", key);
            const auto pairs = random_parent_pairs(instance, spec.trials, rng);
            double total = 0.0;
            for (const auto& [a, b] : pairs) total += new_gene_ratio(gsp_crossover(a, b, spec.alpha, instance, rng), a, b);
            report.ratios.push_back({n, ratio, total / static_cast<double>(pairs.size())});
        }
    }
    return report;
}

void write_timing(std::ostream& out, const BenchReport& report) {
    out << "# operator,n,m,mean_time_us,fitted_curve_class\n";
    for (const auto& t : report.timing) {
        const auto& fit = t.op == "gsp" ? report.gsp_fit : report.hk_fit;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f", t.mean_seconds * 1e6);
        out << t.op << ',' << t.n << ',' << t.m << ',' << buf << ',' << to_string(fit.best) << '\n';
    }
}

void write_ratios(std::ostream& out, const BenchReport& report) {
    out << "# n,m_ratio_class,mean_ratio\n";
    for (const auto& r : report.ratios)
        out << r.n << ",1/" << r.ratio << ',' << format_double(r.mean_ratio) << '\n';
}

double CompareReport::mean_student_optimality() const {
    double s = 0.0;
    for (const auto& r : runs) s += r.student_optimality;
    return runs.empty() ? 0.0 : s / static_cast<double>(runs.size());
}

double CompareReport::mean_supervisor_optimality() const {
    double s = 0.0;
    for (const auto& r : runs) s += r.supervisor_optimality;
    return runs.empty() ? 0.0 : s / static_cast<double>(runs.size());
}

double CompareReport::mean_s_metric_gap() const {
    double s = 0.0;
    for (const auto& r : runs) s += (r.ga_s_metric - r.exact_s_metric) / r.exact_s_metric;
    return runs.empty() ? 0.0 : s / static_cast<double>(runs.size());
}

CompareReport run_compare(const ProblemInstance& base, const SolverConfig& config, std::size_t reps, double budget) {
    if (reps < 1) throw std::invalid_argument("compare needs at least one run");
    const ProblemInstance instance = apply_overrides(base, config);
    CompareReport report;
    report.best_students = exact_best(instance, ObjectiveSelector::Students, budget);
    report.best_supervisors = exact_best(instance, ObjectiveSelector::Supervisors, budget);
    report.exact_frontier = exact_pareto_frontier(instance, budget);
    std::vector<ObjectivePair> exact_points;
    for (const auto& p : report.exact_frontier) exact_points.push_back(p.objectives);
    const double exact_s = s_metric(exact_points, config.ga.ref);

    for (std::size_t r = 0; r < reps; ++r) {
        GAConfig ga = config.ga;
        ga.seed = config.ga.seed + r;
        const auto result = evolve(instance, ga);
        CompareRecord rec;
        rec.seed = ga.seed;
        double fs = 0.0, fr = 0.0;
        for (const auto& ind : result.population) {
            fs = std::max(fs, ind.objectives.students);
            fr = std::max(fr, ind.objectives.supervisors);
        }
        rec.student_optimality = fs / report.best_students.value;
        rec.supervisor_optimality = fr / report.best_supervisors.value;
        rec.ga_s_metric = s_metric(objectives_of(result.pareto_front()), ga.ref);
        rec.exact_s_metric = exact_s;
        report.runs.push_back(rec);
    }
    return report;
}

void write_compare(std::ostream& out, const CompareReport& report) {
    out << "# exact_best_students," << format_double(report.best_students.value) << '\n';
    out << "# exact_best_supervisors," << format_double(report.best_supervisors.value) << '\n';
    out << "# seed,student_optimality,supervisor_optimality,ga_s_metric,exact_s_metric\n";
    for (const auto& r : report.runs)
        out << r.seed << ',' << format_double(r.student_optimality) << ',' << format_double(r.supervisor_optimality)
            << ',' << format_double(r.ga_s_metric) << ',' << format_double(r.exact_s_metric) << '\n';
    out << "# mean," << format_double(report.mean_student_optimality()) << ','
        << format_double(report.mean_supervisor_optimality()) << ',' << format_double(report.mean_s_metric_gap())
        << '\n';
}

}  // namespace spa
