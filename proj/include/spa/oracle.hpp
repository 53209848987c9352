#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "spa/objectives.hpp"

namespace spa {

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double default_enumeration_budget = 1e7;

/// m^n, the number of raw assignment vectors (as a double to avoid overflow).
double enumeration_size(const ProblemInstance& instance);

/// Calls `visit` once for every feasible matching, pruning on quotas while generating.
/// Throws BudgetExceeded when m^n exceeds `budget`.
void enumerate_feasible(const ProblemInstance& instance, const std::function<void(const Matching&)>& visit,
                        double budget = default_enumeration_budget);

std::size_t count_feasible(const ProblemInstance& instance, double budget = default_enumeration_budget);

struct FrontierPoint {
    ObjectivePair objectives;
    Matching matching;
};

/// Exact Pareto frontier over all feasible matchings; one matching per distinct objective
/// pair (the first enumerated), ordered by ascending student objective.
std::vector<FrontierPoint> exact_pareto_frontier(const ProblemInstance& instance,
                                                 double budget = default_enumeration_budget);

enum class ObjectiveSelector { Students, Supervisors };

struct ExactBest {
    double value = 0.0;
    Matching matching;
};

ExactBest exact_best(const ProblemInstance& instance, ObjectiveSelector which,
                     double budget = default_enumeration_budget);

}  // namespace spa
