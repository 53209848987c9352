#include "spa/engine.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

namespace spa {

void GAConfig::validate() const {
    if (pop_max < 2 || pop_max % 2 != 0) throw std::invalid_argument("pop_max must be even and at least 2");
    if (it_max < 1) throw std::invalid_argument("it_max must be at least 1");
    if (patience < 1) throw std::invalid_argument("patience must be at least 1");
    if (crossover == CrossoverKind::KPoint && k_points < 1) throw std::invalid_argument("k_points must be positive");
    if (alpha && !(*alpha >= 0.0)) throw std::invalid_argument("alpha must be nonnegative");
    mutation.validate();
}

std::vector<std::vector<std::size_t>> nondominated_sort(std::vector<Individual>& population) {
    const std::size_t p = population.size();
    std::vector<std::vector<std::size_t>> dominated(p);
    std::vector<std::size_t> dominators(p, 0);
    std::vector<std::vector<std::size_t>> fronts(1);
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = a + 1; b < p; ++b) {
            if (dominates(population[a].objectives, population[b].objectives)) {
                dominated[a].push_back(b);
                ++dominators[b];
            } else if (dominates(population[b].objectives, population[a].objectives)) {
                dominated[b].push_back(a);
                ++dominators[a];
            }
        }
    }
    for (std::size_t a = 0; a < p; ++a)
        if (dominators[a] == 0) fronts[0].push_back(a);
    for (std::size_t k = 0; !fronts[k].empty(); ++k) {
        std::vector<std::size_t> next;
        for (std::size_t a : fronts[k]) {
            population[a].rank = k;
            for (std::size_t b : dominated[a])
                if (--dominators[b] == 0) next.push_back(b);
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(next));
    }
    fronts.pop_back();
    return fronts;
}

void crowding_distance(std::vector<Individual>& population, const std::vector<std::size_t>& front) {
    for (std::size_t i : front) population[i].crowding = 0.0;
    if (front.size() <= 2) {
        for (std::size_t i : front) population[i].crowding = infinite_crowding;
        return;
    }
    std::vector<std::size_t> order(front);
    auto accumulate = [&](auto value) {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return value(population[a]) < value(population[b]); });
        population[order.front()].crowding = infinite_crowding;
        population[order.back()].crowding = infinite_crowding;
        const double range = value(population[order.back()]) - value(population[order.front()]);
        if (range <= 0.0) return;
        for (std::size_t k = 1; k + 1 < order.size(); ++k)
            population[order[k]].crowding +=
                (value(population[order[k + 1]]) - value(population[order[k - 1]])) / range;
    };
    accumulate([](const Individual& ind) { return ind.objectives.students; });
    accumulate([](const Individual& ind) { return ind.objectives.supervisors; });
}

std::size_t tournament_winner(const std::vector<Individual>& population, std::size_t a, std::size_t b, Rng& rng) {
    const auto& x = population[a];
    const auto& y = population[b];
    if (x.rank != y.rank) return x.rank < y.rank ? a : b;
    if (x.crowding != y.crowding) return x.crowding > y.crowding ? a : b;
    return uniform01(rng) < 0.5 ? a : b;
}

std::vector<std::pair<std::size_t, std::size_t>> tournament_select(const std::vector<Individual>& population,
                                                                    Rng& rng) {
    const std::size_t p = population.size();
    if (p < 2) throw std::invalid_argument("tournament selection needs at least two individuals");
    auto pick = [&] {
        const std::size_t a = uniform_index(rng, p);
        const std::size_t b = uniform_index(rng, p);
        return tournament_winner(population, a, b, rng);
    };
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(p / 2);
    for (std::size_t k = 0; k < p / 2; ++k) {
        const std::size_t first = pick();
        pairs.emplace_back(first, pick());
    }
    return pairs;
}

std::vector<Individual> EvolutionResult::pareto_front() const {
    std::vector<Individual> out;
    if (frontiers.empty()) return out;
    std::set<std::pair<double, double>> seen;
    for (std::size_t i : frontiers.front()) {
        const auto& o = population[i].objectives;
        if (seen.emplace(o.students, o.supervisors).second) out.push_back(population[i]);
    }
    std::sort(out.begin(), out.end(), [](const Individual& a, const Individual& b) {
        return a.objectives.students < b.objectives.students;
    });
    return out;
}

namespace {

void evaluate_all(std::vector<Individual>& individuals, std::size_t begin, const ProblemInstance& instance,
                  std::size_t threads) {
    const std::size_t count = individuals.size() - begin;
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            individuals[i].objectives = evaluate_pair(individuals[i].matching, instance);
    };
    if (threads <= 1 || count < 2 * threads) {
        work(begin, individuals.size());
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (std::size_t lo = begin; lo < individuals.size(); lo += chunk)
        pool.emplace_back(work, lo, std::min(lo + chunk, individuals.size()));
    for (auto& t : pool) t.join();
}

/// Picks `count` members of the front: first distinct objective pairs by descending
/// crowding, then repeated pairs, so the front's shape survives before its copies do.
std::vector<std::size_t> truncate_front(const std::vector<Individual>& pool, std::vector<std::size_t> front,
                                        std::size_t count) {
    std::stable_sort(front.begin(), front.end(),
                     [&](std::size_t a, std::size_t b) { return pool[a].crowding > pool[b].crowding; });
    std::vector<std::size_t> distinct, repeated;
    std::set<std::pair<double, double>> seen;
    for (std::size_t i : front) {
        const auto& o = pool[i].objectives;
        (seen.emplace(o.students, o.supervisors).second ? distinct : repeated).push_back(i);
    }
    distinct.insert(distinct.end(), repeated.begin(), repeated.end());
    distinct.resize(count);
    return distinct;
}

std::vector<std::vector<std::size_t>> rank_pool(std::vector<Individual>& pool) {
    auto fronts = nondominated_sort(pool);
    for (const auto& f : fronts) crowding_distance(pool, f);
    return fronts;
}

}  // namespace

EvolutionResult evolve(const ProblemInstance& base_instance, const GAConfig& config) {
    config.validate();
    const ProblemInstance instance =
        config.alpha && *config.alpha != base_instance.alpha() ? base_instance.with_alpha(*config.alpha)
                                                               : base_instance;
    const double alpha = instance.alpha();

    Rng init_rng = make_stream(config.seed, "init");
    Rng mutation_rng = make_stream(config.seed, "mutation");
    Rng selection_rng = make_stream(config.seed, "selection");
    Rng crossover_rng = make_stream(config.seed, "crossover");

    std::vector<Individual> survivors;
    survivors.reserve(config.pop_max);
    for (std::size_t k = 0; k < config.pop_max; ++k)
        survivors.push_back({random_feasible_matching(instance, init_rng), {}, 0, 0.0});
    evaluate_all(survivors, 0, instance, config.threads);
    std::vector<Individual> offspring;

    EvolutionResult result;
    double best_s = std::numeric_limits<double>::infinity();
    std::size_t stale = 0;
    std::vector<ObjectivePair> front_points;

    for (std::size_t it = 0; it < config.it_max; ++it) {
        std::vector<Individual> pool = std::move(survivors);
        pool.insert(pool.end(), std::make_move_iterator(offspring.begin()), std::make_move_iterator(offspring.end()));
        offspring.clear();
        const auto fronts = rank_pool(pool);

        survivors.clear();
        for (const auto& f : fronts) {
            const std::size_t room = config.pop_max - survivors.size();
            if (f.size() <= room) {
                for (std::size_t i : f) survivors.push_back(std::move(pool[i]));
            } else {
                for (std::size_t i : truncate_front(pool, f, room)) survivors.push_back(std::move(pool[i]));
            }
            if (survivors.size() == config.pop_max) break;
        }

        IterationRecord rec;
        rec.iteration = it;
        front_points.clear();
        for (const auto& ind : survivors) {
            rec.best_students = std::max(rec.best_students, ind.objectives.students);
            rec.best_supervisors = std::max(rec.best_supervisors, ind.objectives.supervisors);
            if (ind.rank == 0) front_points.push_back(ind.objectives);
        }
        rec.frontier_size = nondominated_points(front_points).size();
        rec.s_metric = s_metric(front_points, config.ref);
        result.history.push_back(rec);
        if (rec.s_metric < best_s - 1e-12) {
            best_s = rec.s_metric;
            stale = 0;
        } else {
            ++stale;
        }

        offspring.reserve(config.pop_max + config.pop_max / 2);
        for (const auto& ind : survivors)
            offspring.push_back({mutate(ind.matching, config.mutation, instance, mutation_rng), {}, 0, 0.0});
        if (config.crossover != CrossoverKind::None) {
            for (const auto& [a, b] : tournament_select(survivors, selection_rng))
                offspring.push_back({crossover(config.crossover, survivors[a].matching, survivors[b].matching, alpha,
                                               config.k_points, instance, crossover_rng),
                                     {}, 0, 0.0});
        }
        evaluate_all(offspring, 0, instance, config.threads);

        if (stale >= config.patience) {
            result.converged = true;
            break;
        }
    }

    result.population = std::move(survivors);
    result.population.insert(result.population.end(), std::make_move_iterator(offspring.begin()),
                             std::make_move_iterator(offspring.end()));
    result.frontiers = rank_pool(result.population);
    return result;
}

}  // namespace spa
