#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "spa/matching.hpp"

namespace spa {

/// Both objectives are maximized.
struct ObjectivePair {
    double students = 0.0;
    double supervisors = 0.0;

    friend bool operator==(const ObjectivePair&, const ObjectivePair&) = default;
};

struct ReferencePoint {
    double x = 1.0;
    double y = 1.0;

    friend bool operator==(const ReferencePoint&, const ReferencePoint&) = default;
};

class ObjectiveError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Mean over students of V(i, supervisor_of(i)).
double student_objective(const Matching& matching, const EvaluationMatrices& values);

/// 1 / (1 + sigma)^alpha, the workload balance penalty.
double balance_penalty(double sigma, double alpha);

/// balance_penalty(sigma) * mean over supervisors of the mean V'(j, i) of their students.
/// A supervisor without students contributes 0 to the outer mean.
double supervisor_objective(const Matching& matching, const EvaluationMatrices& values, double alpha,
                            const ProblemInstance& instance);

ObjectivePair evaluate_pair(const Matching& matching, const ProblemInstance& instance);

/// a is at least as good as b in both objectives and differs from b.
constexpr bool dominates(const ObjectivePair& a, const ObjectivePair& b) noexcept {
    return a.students >= b.students && a.supervisors >= b.supervisors && a != b;
}

/// Mutually nondominated subset, deduplicated, sorted by ascending student objective.
std::vector<ObjectivePair> nondominated_points(std::span<const ObjectivePair> points);

/// Area of the reference box minus the area dominated by the frontier (anchored at the origin).
/// Lower is better; 0 would mean the frontier reaches the reference point.
/// Throws ObjectiveError on an empty frontier or a point outside [0, ref).
double s_metric(std::span<const ObjectivePair> frontier, const ReferencePoint& ref);

}  // namespace spa
