#include "spa/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spa {

Matching::Matching(std::vector<SupervisorIndex> assignment, std::size_t num_supervisors)
    : assignment_(std::move(assignment)), counts_(num_supervisors, 0) {
    for (SupervisorIndex j : assignment_) {
        if (j >= num_supervisors) throw MatchingError("assignment references supervisor out of range");
        ++counts_[j];
    }
}

void Matching::assign(StudentIndex i, SupervisorIndex j) {
    if (i >= assignment_.size() || j >= counts_.size()) throw MatchingError("assignment index out of range");
    --counts_[assignment_[i]];
    assignment_[i] = j;
    ++counts_[j];
}

namespace {

void check_dimensions(const Matching& matching, const ProblemInstance& instance) {
    if (matching.num_students() != instance.num_students() ||
        matching.num_supervisors() != instance.num_supervisors())
        throw MatchingError("matching dimensions do not match the instance");
}

}  // namespace

bool is_feasible(const Matching& matching, const ProblemInstance& instance) {
    check_dimensions(matching, instance);
    for (std::size_t j = 0; j < matching.num_supervisors(); ++j) {
        const auto& q = instance.quota(j);
        if (matching.count(j) < q.min || matching.count(j) > q.max) return false;
    }
    return true;
}

std::vector<SupervisorIndex> under_subscribed(const Matching& matching, const ProblemInstance& instance) {
    check_dimensions(matching, instance);
    std::vector<SupervisorIndex> out;
    for (std::size_t j = 0; j < matching.num_supervisors(); ++j)
        if (matching.count(j) < instance.quota(j).max) out.push_back(j);
    return out;
}

double workload_sigma(const std::vector<std::size_t>& counts, const ProblemInstance& instance) {
    const std::size_t m = counts.size();
    double mean = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        mean += static_cast<double>(counts[j]) / static_cast<double>(instance.quota(j).max);
    mean /= static_cast<double>(m);
    double var = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double d = static_cast<double>(counts[j]) / static_cast<double>(instance.quota(j).max) - mean;
        var += d * d;
    }
    return std::sqrt(var / static_cast<double>(m));
}

WorkloadStats workload_stats(const Matching& matching, const ProblemInstance& instance) {
    check_dimensions(matching, instance);
    WorkloadStats stats;
    stats.levels.reserve(matching.num_supervisors());
    for (std::size_t j = 0; j < matching.num_supervisors(); ++j)
        stats.levels.push_back(static_cast<double>(matching.count(j)) /
                               static_cast<double>(instance.quota(j).max));
    stats.sigma = workload_sigma(matching.counts(), instance);
    return stats;
}

Matching random_feasible_matching(const ProblemInstance& instance, Rng& rng) {
    const std::size_t n = instance.num_students();
    const std::size_t m = instance.num_supervisors();
    std::vector<StudentIndex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<SupervisorIndex> assignment(n);
    std::vector<std::size_t> counts(m, 0);
    std::size_t next = 0;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t c = 0; c < instance.quota(j).min; ++c) {
            assignment[order[next++]] = j;
            ++counts[j];
        }

    std::vector<SupervisorIndex> open;
    for (std::size_t j = 0; j < m; ++j)
        if (counts[j] < instance.quota(j).max) open.push_back(j);
    for (; next < n; ++next) {
        const std::size_t slot = uniform_index(rng, open.size());
        const SupervisorIndex j = open[slot];
        assignment[order[next]] = j;
        if (++counts[j] == instance.quota(j).max) open.erase(open.begin() + static_cast<std::ptrdiff_t>(slot));
    }
    return Matching(std::move(assignment), m);
}

}  // namespace spa
