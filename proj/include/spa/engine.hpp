#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "spa/objectives.hpp"
#include "spa/operators.hpp"

namespace spa {

struct Individual {
    Matching matching;
    ObjectivePair objectives;
    std::size_t rank = 0;  ///< frontier index, 0 = nondominated
    double crowding = 0.0;
};

inline constexpr double infinite_crowding = std::numeric_limits<double>::infinity();

struct GAConfig {
    std::size_t pop_max = 128;
    std::size_t it_max = 250;
    std::size_t patience = 20;  ///< iterations without S-metric improvement before stopping
    MutationParams mutation{};
    CrossoverKind crossover = CrossoverKind::Gsp;
    std::size_t k_points = 8;
    /// Overrides the instance's balance exponent when set.
    std::optional<double> alpha;
    ReferencePoint ref{};
    std::uint64_t seed = 1;
    std::size_t threads = 1;  ///< workers for offspring evaluation; results do not depend on it

    /// Throws std::invalid_argument unless pop_max is even and >= 2, it_max >= 1 and patience >= 1.
    void validate() const;
};

/// Fronts as index lists into `population`, best first. Sets each individual's rank.
std::vector<std::vector<std::size_t>> nondominated_sort(std::vector<Individual>& population);

/// NSGA-II crowding distance within one front; boundary members get +infinity and an
/// objective with zero range contributes nothing.
void crowding_distance(std::vector<Individual>& population, const std::vector<std::size_t>& front);

/// Binary tournament: lower rank wins, then higher crowding, then a fair coin.
std::size_t tournament_winner(const std::vector<Individual>& population, std::size_t a, std::size_t b, Rng& rng);

/// pop.size() / 2 parent pairs, each parent the winner of a tournament between two
/// individuals drawn uniformly with replacement. Throws on populations smaller than 2.
std::vector<std::pair<std::size_t, std::size_t>> tournament_select(const std::vector<Individual>& population,
                                                                    Rng& rng);

struct IterationRecord {
    std::size_t iteration = 0;
    double s_metric = 0.0;
    double best_students = 0.0;
    double best_supervisors = 0.0;
    std::size_t frontier_size = 0;

    friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct EvolutionResult {
    std::vector<Individual> population;               ///< final pool, ranks and crowding set
    std::vector<std::vector<std::size_t>> frontiers;  ///< indices into population
    std::vector<IterationRecord> history;
    bool converged = false;  ///< stopped by patience rather than it_max

    /// Rank-0 individuals with one representative per distinct objective pair, by ascending student objective.
    std::vector<Individual> pareto_front() const;
};

/// Elitist generational loop: survivors are refilled front by front up to pop_max,
/// every survivor yields one mutant, and tournament pairs yield one crossover child each.
/// Stops after it_max iterations or when the rank-0 S-metric has not improved for
/// `patience` consecutive iterations.
EvolutionResult evolve(const ProblemInstance& instance, const GAConfig& config);

}  // namespace spa
