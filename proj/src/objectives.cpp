#include "spa/objectives.hpp"

#include <algorithm>
#include <cmath>

namespace spa {

double student_objective(const Matching& matching, const EvaluationMatrices& values) {
    double sum = 0.0;
    for (std::size_t i = 0; i < matching.num_students(); ++i)
        sum += values.student_values(i, matching.supervisor_of(i));
    return sum / static_cast<double>(matching.num_students());
}

double balance_penalty(double sigma, double alpha) {
    return 1.0 / std::pow(1.0 + sigma, alpha);
}

double supervisor_objective(const Matching& matching, const EvaluationMatrices& values, double alpha,
                            const ProblemInstance& instance) {
    const std::size_t m = matching.num_supervisors();
    std::vector<double> sums(m, 0.0);
    for (std::size_t i = 0; i < matching.num_students(); ++i) {
        const SupervisorIndex j = matching.supervisor_of(i);
        sums[j] += values.supervisor_values(j, i);
    }
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        if (matching.count(j) > 0) total += sums[j] / static_cast<double>(matching.count(j));
    const double sigma = workload_sigma(matching.counts(), instance);
    return balance_penalty(sigma, alpha) * total / static_cast<double>(m);
}

ObjectivePair evaluate_pair(const Matching& matching, const ProblemInstance& instance) {
    return {student_objective(matching, instance.matrices()),
            supervisor_objective(matching, instance.matrices(), instance.alpha(), instance)};
}

std::vector<ObjectivePair> nondominated_points(std::span<const ObjectivePair> points) {
    std::vector<ObjectivePair> sorted(points.begin(), points.end());
    // Descending x, then descending y: a point survives iff its y beats every y seen so far.
    std::sort(sorted.begin(), sorted.end(), [](const ObjectivePair& a, const ObjectivePair& b) {
        return a.students != b.students ? a.students > b.students : a.supervisors > b.supervisors;
    });
    std::vector<ObjectivePair> front;
    for (const auto& p : sorted)
        if (front.empty() || p.supervisors > front.back().supervisors) front.push_back(p);
    std::reverse(front.begin(), front.end());
    return front;
}

double s_metric(std::span<const ObjectivePair> frontier, const ReferencePoint& ref) {
    if (frontier.empty()) throw ObjectiveError("s_metric of an empty frontier");
    for (const auto& p : frontier)
        if (!(p.students >= 0.0 && p.supervisors >= 0.0 && p.students < ref.x && p.supervisors < ref.y))
            throw ObjectiveError("frontier point (" + std::to_string(p.students) + ", " +
                                 std::to_string(p.supervisors) + ") lies outside [0, ref) box");
    const auto front = nondominated_points(frontier);
    // Staircase union of [0, x] x [0, y]: ascending x has descending y.
    double dominated = 0.0;
    double prev_x = 0.0;
    for (const auto& p : front) {
        dominated += (p.students - prev_x) * p.supervisors;
        prev_x = p.students;
    }
    return ref.x * ref.y - dominated;
}

}  // namespace spa
