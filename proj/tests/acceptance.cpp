// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <vector>

#include "spa/experiments.hpp"

using namespace spa;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failures;
    std::printf("%s  %2d %-28s %s (%.1fs)\n", out.pass ? "PASS" : "FAIL", id, name.c_str(), out.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

const PreferencePool& pool() {
    static const PreferencePool p = synthetic_pool(2024);
    return p;
}

ProblemInstance make_instance(std::size_t n, std::size_t m, std::uint64_t seed, std::size_t lo = 4,
                              std::size_t hi = 10, double surplus = 20.0) {
    InstanceSpec spec;
    spec.students = n;
    spec.supervisors = m;
    spec.c_max_lo = lo;
    spec.c_max_hi = hi;
    spec.surplus_percent = surplus;
    return generate_instance(spec, pool(), seed).instance;
}

std::size_t worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

void parallel_jobs(std::size_t count, const std::function<void(std::size_t)>& job) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < std::min(count, worker_count()); ++w)
        workers.emplace_back([&] {
            for (std::size_t k; (k = next++) < count;) job(k);
        });
    for (auto& t : workers) t.join();
}

// Trace violations found in any GA run of this binary.
std::mutex trace_mutex;
std::size_t traces_checked = 0, trace_violations = 0;

void check_history(const std::vector<IterationRecord>& h) {
    std::size_t bad = 0;
    for (std::size_t t = 1; t < h.size(); ++t)
        bad += h[t].s_metric > h[t - 1].s_metric || h[t].best_students < h[t - 1].best_students ||
               h[t].best_supervisors < h[t - 1].best_supervisors;
    std::lock_guard lock(trace_mutex);
    ++traces_checked;
    trace_violations += bad;
}

EvolutionResult traced_evolve(const ProblemInstance& inst, const GAConfig& config) {
    auto result = evolve(inst, config);
    check_history(result.history);
    return result;
}

std::vector<ObjectivePair> objectives_of(const std::vector<Individual>& front) {
    std::vector<ObjectivePair> out;
    for (const auto& ind : front) out.push_back(ind.objectives);
    return out;
}

// ---- 1 --------------------------------------------------------------------

Outcome feasibility_closure() {
    std::size_t applications = 0, violations = 0;
    Rng rng(101);
    for (std::size_t n : {10, 50, 150}) {
        for (std::uint64_t s = 0; s < 4; ++s) {
            const auto inst = make_instance(n, n / 5, 1000 + n + s);
            std::vector<Matching> pool_m;
            for (int k = 0; k < 8; ++k) pool_m.push_back(random_feasible_matching(inst, rng));
            for (int round = 0; round < 300; ++round) {
                const MutationParams params{0.01 + 0.5 * uniform01(rng), uniform01(rng)};
                auto& a = pool_m[uniform_index(rng, pool_m.size())];
                const auto& b = pool_m[uniform_index(rng, pool_m.size())];
                const Matching outs[] = {mutate(a, params, inst, rng), hopcroft_karp_crossover(a, b, 2.0, inst, rng),
                                         gsp_crossover(a, b, 2.0, inst, rng)};
                for (const auto& c : outs) {
                    ++applications;
                    violations += !is_feasible(c, inst);
                }
                a = outs[uniform_index(rng, 3)];  // later parents descend from earlier outputs
            }
        }
    }
    return {violations == 0 && applications >= 10000,
            std::to_string(applications) + " applications, " + std::to_string(violations) + " infeasible"};
}

// ---- 2 and 3 --------------------------------------------------------------

Outcome structure_preservation() {
    std::size_t trials = 0, mismatches = 0;
    Rng rng(202);
    for (std::uint64_t s = 0; trials < 10000; ++s) {
        const std::size_t n = 10 + 20 * (s % 8);
        const auto inst = make_instance(n, n / 5, 2000 + s);
        for (int k = 0; k < 100; ++k) {
            const auto p1 = random_feasible_matching(inst, rng), p2 = random_feasible_matching(inst, rng);
            for (int op = 0; op < 2; ++op) {
                Rng peek = rng;  // inheritance is the first draw of either crossover
                const auto expected = inherit_structure(p1, p2, 2.0, inst, peek);
                const auto child = op == 0 ? hopcroft_karp_crossover(p1, p2, 2.0, inst, rng)
                                           : gsp_crossover(p1, p2, 2.0, inst, rng);
                ++trials;
                mismatches += structure_of(child) != expected;
            }
        }
    }
    return {mismatches == 0, std::to_string(trials) + " trials, " + std::to_string(mismatches) + " mismatches"};
}

Outcome hk_containment() {
    std::size_t trials = 0, new_genes = 0;
    Rng rng(303);
    for (std::uint64_t s = 0; trials < 10000; ++s) {
        const std::size_t n = 10 + 20 * (s % 8);
        const auto inst = make_instance(n, n / 5, 3000 + s);
        for (int k = 0; k < 100; ++k, ++trials) {
            const auto p1 = random_feasible_matching(inst, rng), p2 = random_feasible_matching(inst, rng);
            const auto child = hopcroft_karp_crossover(p1, p2, 2.0, inst, rng);
            for (StudentIndex i = 0; i < n; ++i)
                new_genes += child.supervisor_of(i) != p1.supervisor_of(i) &&
                             child.supervisor_of(i) != p2.supervisor_of(i);
        }
    }
    return {new_genes == 0, std::to_string(trials) + " trials, " + std::to_string(new_genes) + " new genes"};
}

// ---- 4 and 5 --------------------------------------------------------------

const BenchReport& bench() {
    static const BenchReport r = [] {
        BenchSpec spec;  // sizes 50..500, 1000 pairs, ratios 8, 10, 12
        return run_bench(spec, pool());
    }();
    return r;
}

Outcome gsp_ratio() {
    const auto& r = bench();
    std::map<std::size_t, std::pair<double, int>> by_size;
    double total = 0.0;
    for (const auto& rec : r.ratios) {
        total += rec.mean_ratio;
        by_size[rec.n].first += rec.mean_ratio;
        ++by_size[rec.n].second;
    }
    const double mean = total / static_cast<double>(r.ratios.size());
    auto size_mean = [&](std::size_t n) { return by_size.at(n).first / by_size.at(n).second; };
    const double small = (size_mean(50) + size_mean(100)) / 2, large = (size_mean(450) + size_mean(500)) / 2;
    std::ostringstream per;
    for (const auto& [n, acc] : by_size) per << (n == 50 ? "" : " ") << n << ":" << fmt("%.4f", acc.first / acc.second);
    const bool in_band = mean >= 0.05 && mean <= 0.15;
    return {in_band && large < small, fmt("mean %.4f in [0.05,0.15]: ", mean) + (in_band ? "yes" : "no") +
                                          fmt("; n<=100 avg %.4f, n>=450 avg %.4f", small, large) + "; by n " +
                                          per.str()};
}

Outcome operator_scaling() {
    const auto& r = bench();
    double gsp500 = 0, hk500 = 0;
    std::string gsp_series;
    for (const auto& t : r.timing) {
        if (t.n == 500) (t.op == "gsp" ? gsp500 : hk500) = t.mean_seconds;
        if (t.op == "gsp") gsp_series += fmt(" %.1f", t.mean_seconds * 1e6);
    }
    const bool gsp_linear = r.gsp_fit.rss_linear <= r.gsp_fit.rss_linearithmic;
    const bool hk_ok = std::min(r.hk_fit.rss_linear, r.hk_fit.rss_linearithmic) <= r.hk_fit.rss_three_halves;
    return {gsp_linear && hk_ok && gsp500 < hk500,
            "gsp fit " + to_string(r.gsp_fit.best) + ", hk fit " + to_string(r.hk_fit.best) +
                fmt(", n=500 gsp %.1fus hk %.1fus", gsp500 * 1e6, hk500 * 1e6) + "; gsp us by n" + gsp_series};
}

// ---- 6 --------------------------------------------------------------------

Outcome sorting_oracle() {
    Rng rng(606);
    std::size_t mismatches = 0, individuals = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t size = 1 + uniform_index(rng, 200);
        const bool coarse = trial % 2 == 0;  // coarse grids produce ties and duplicates
        std::vector<Individual> pop;
        for (std::size_t k = 0; k < size; ++k) {
            ObjectivePair p = coarse ? ObjectivePair{uniform_index(rng, 10) / 10.0, uniform_index(rng, 10) / 10.0}
                                     : ObjectivePair{uniform01(rng), uniform01(rng)};
            pop.push_back({Matching(), p, 0, 0.0});
        }
        nondominated_sort(pop);
        // Rank = length of the longest dominance chain ending at the individual.
        std::vector<std::size_t> order(size);
        for (std::size_t k = 0; k < size; ++k) order[k] = k;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const auto &x = pop[a].objectives, &y = pop[b].objectives;
            return x.students + x.supervisors > y.students + y.supervisors;
        });
        std::vector<std::size_t> rank(size, 0);
        for (std::size_t a = 0; a < size; ++a)
            for (std::size_t b = 0; b < a; ++b)
                if (dominates(pop[order[b]].objectives, pop[order[a]].objectives))
                    rank[order[a]] = std::max(rank[order[a]], rank[order[b]] + 1);
        for (std::size_t k = 0; k < size; ++k) mismatches += pop[k].rank != rank[k];
        individuals += size;
    }
    return {mismatches == 0,
            "1000 populations, " + std::to_string(individuals) + " individuals, " + std::to_string(mismatches) +
                " rank mismatches"};
}

// ---- 7 --------------------------------------------------------------------

Outcome s_metric_checks() {
    const double one = s_metric(std::vector<ObjectivePair>{{0.5, 0.5}}, {});
    const double two = s_metric(std::vector<ObjectivePair>{{0.2, 0.6}, {0.5, 0.3}}, {});
    const bool exact = std::abs(one - 0.75) <= 1e-12 && std::abs(two - 0.79) <= 1e-12;
    Rng rng(707);
    std::size_t violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<ObjectivePair> pts(1 + uniform_index(rng, 10));
        for (auto& p : pts) p = {0.95 * uniform01(rng), 0.95 * uniform01(rng)};
        const double before = s_metric(pts, {});
        if (trial % 2 == 0) {
            auto& p = pts[uniform_index(rng, pts.size())];
            p.students += (0.99 - p.students) * uniform01(rng);
            p.supervisors += (0.99 - p.supervisors) * uniform01(rng);
        } else {
            pts.push_back({0.99 * uniform01(rng), 0.99 * uniform01(rng)});
        }
        violations += s_metric(pts, {}) > before + 1e-15;
    }
    return {exact && violations == 0,
            fmt("S = %.15f and %.15f", one, two) + ", 1000 perturbations, " + std::to_string(violations) +
                " increases"};
}

// ---- 8 --------------------------------------------------------------------

Outcome small_optimality() {
    struct Exact {
        ProblemInstance inst;
        double best_students, best_supervisors, s;
    };
    std::vector<Exact> exact;
    for (std::uint64_t s = 0; s < 10; ++s) {
        auto inst = make_instance(6, 3, 8000 + s, 2, 3, 0.0);
        const auto front = exact_pareto_frontier(inst);
        std::vector<ObjectivePair> pts;
        for (const auto& p : front) pts.push_back(p.objectives);
        const double bs = exact_best(inst, ObjectiveSelector::Students).value;
        const double bv = exact_best(inst, ObjectiveSelector::Supervisors).value;
        exact.push_back({std::move(inst), bs, bv, s_metric(pts, {})});
    }
    std::vector<double> opt_s(100), opt_v(100), gap(100);
    parallel_jobs(100, [&](std::size_t k) {
        const auto& e = exact[k / 10];
        GAConfig config;
        config.pop_max = 32;
        config.patience = 20;
        config.seed = 1 + k % 10;
        const auto front = objectives_of(traced_evolve(e.inst, config).pareto_front());
        double bs = 0, bv = 0;
        for (const auto& p : front) {
            bs = std::max(bs, p.students);
            bv = std::max(bv, p.supervisors);
        }
        opt_s[k] = bs / e.best_students;
        opt_v[k] = bv / e.best_supervisors;
        gap[k] = std::abs(s_metric(front, {}) - e.s) / e.s;
    });
    auto mean = [](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); };
    const double ms = mean(opt_s), mv = mean(opt_v), mg = mean(gap);
    const double worst = *std::max_element(gap.begin(), gap.end());
    return {ms >= 0.95 && mv >= 0.95 && mg <= 0.05,
            fmt("optimality students %.4f supervisors %.4f; S gap mean %.4f max %.4f", ms, mv, mg, worst)};
}

// ---- 9 --------------------------------------------------------------------

Outcome convergence_traces() {
    const auto inst = make_instance(150, 30, 9000);
    for (auto kind : {CrossoverKind::Gsp, CrossoverKind::HopcroftKarp, CrossoverKind::None, CrossoverKind::Uniform})
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
            GAConfig config;
            config.crossover = kind;
            config.seed = seed;
            config.threads = worker_count();
            traced_evolve(inst, config);
        }
    std::lock_guard lock(trace_mutex);
    return {trace_violations == 0,
            std::to_string(traces_checked) + " runs, " + std::to_string(trace_violations) + " violating steps"};
}

// ---- 10 -------------------------------------------------------------------

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SPA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string timing_structure(const fs::path& file) {
    std::istringstream in(read_file(file));
    std::string line, out;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string op, n, m;
        std::getline(fields, op, ',');
        std::getline(fields, n, ',');
        std::getline(fields, m, ',');
        out += op + "," + n + "," + m + "\n";
    }
    return out;
}

Outcome determinism() {
    const auto dir = fs::temp_directory_path() / "spa_acceptance_determinism";
    fs::remove_all(dir);
    const std::string d = dir.string();
    if (run_cli("generate -n 80 -m 16 --seed 5 --out-dir " + d + "/inst") != 0) return {false, "generate failed"};
    write_file(dir / "config.json", R"({"pop_max": 32, "it_max": 60})");
    const std::string inst = d + "/inst/instance.json", cfg = d + "/config.json";
    std::vector<std::string> differing;
    std::size_t compared = 0;
    for (const char* run : {"r1", "r2"}) {
        const std::string out = d + "/" + run;
        if (run_cli("solve --instance " + inst + " --config " + cfg + " --seed 9 --threads 1 --out-dir " + out + "/solve") ||
            run_cli("grid --instance " + inst + " --config " + cfg +
                    " --p-mt 0.05:0.15:0.05 --p-sw 0.2:0.8:0.3 --reps 2 --seed 9 --threads 1 --out-dir " + out +
                    "/grid") ||
            run_cli("bench --size-max 200 --trials 100 --seed 9 --out-dir " + out + "/bench"))
            return {false, std::string("cli run failed in ") + run};
    }
    for (const auto& entry : fs::recursive_directory_iterator(dir / "r1")) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), dir / "r1");
        const auto other = dir / "r2" / rel;
        ++compared;
        const bool same = rel.filename() == "timing.csv"
                              ? timing_structure(entry.path()) == timing_structure(other)
                              : fs::exists(other) && read_file(entry.path()) == read_file(other);
        if (!same) differing.push_back(rel.string());
    }
    std::string detail = std::to_string(compared) + " files compared";
    for (const auto& f : differing) detail += ", differs: " + f;
    return {differing.empty() && compared >= 6, detail + " (timing.csv: operator,n,m columns)"};
}

// ---- 11 -------------------------------------------------------------------

Outcome mutation_grid_direction() {
    struct Job {
        std::size_t instance;
        int cell;
        std::uint64_t seed;
    };
    std::vector<ProblemInstance> instances;
    for (std::uint64_t s = 0; s < 5; ++s) instances.push_back(make_instance(150, 30, 11000 + s));
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < 5; ++i)
        for (int cell = 0; cell < 2; ++cell)
            for (std::uint64_t seed = 1; seed <= 5; ++seed) jobs.push_back({i, cell, seed});
    std::vector<double> s(jobs.size());
    parallel_jobs(jobs.size(), [&](std::size_t k) {
        GAConfig config;
        config.crossover = CrossoverKind::None;
        config.it_max = config.patience = 250;
        config.mutation = jobs[k].cell == 0 ? MutationParams{0.05, 0.2} : MutationParams{0.5, 0.9};
        config.seed = jobs[k].seed;
        s[k] = s_metric(objectives_of(evolve(instances[jobs[k].instance], config).pareto_front()), {});
    });
    double mean[5][2] = {};
    for (std::size_t k = 0; k < jobs.size(); ++k) mean[jobs[k].instance][jobs[k].cell] += s[k] / 5.0;
    int wins = 0;
    std::string detail;
    for (int i = 0; i < 5; ++i) {
        wins += mean[i][0] <= mean[i][1];
        detail += fmt(" %.4f/%.4f", mean[i][0], mean[i][1]);
    }
    return {wins >= 4, std::to_string(wins) + "/5 instances no worse; S low/high mutation:" + detail};
}

}  // namespace

int main() {
    report(1, "feasibility closure", feasibility_closure);
    report(2, "structure preservation", structure_preservation);
    report(3, "hk gene containment", hk_containment);
    report(4, "gsp new-gene ratio", gsp_ratio);
    report(5, "operator scaling", operator_scaling);
    report(6, "sorting oracle equivalence", sorting_oracle);
    report(7, "s-metric correctness", s_metric_checks);
    report(8, "small-instance optimality", small_optimality);
    report(9, "convergence monotonicity", convergence_traces);
    report(10, "determinism", determinism);
    report(11, "mutation grid direction", mutation_grid_direction);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
