#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "spa/instance.hpp"
#include "spa/rng.hpp"

namespace spa {

using StudentIndex = std::size_t;
using SupervisorIndex = std::size_t;

/// Per-supervisor student counts of a matching.
using AllocationStructure = std::vector<std::size_t>;

class MatchingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Total assignment of students to supervisors. Gene i is the edge (i, supervisor_of(i));
/// the per-supervisor counts are kept in sync with every edit.
class Matching {
public:
    Matching() = default;
    /// Throws MatchingError if an entry is >= num_supervisors.
    Matching(std::vector<SupervisorIndex> assignment, std::size_t num_supervisors);

    std::size_t num_students() const noexcept { return assignment_.size(); }
    std::size_t num_supervisors() const noexcept { return counts_.size(); }

    SupervisorIndex supervisor_of(StudentIndex i) const { return assignment_[i]; }
    const std::vector<SupervisorIndex>& assignment() const noexcept { return assignment_; }
    const std::vector<std::size_t>& counts() const noexcept { return counts_; }
    std::size_t count(SupervisorIndex j) const { return counts_[j]; }

    void assign(StudentIndex i, SupervisorIndex j);

    friend bool operator==(const Matching& a, const Matching& b) { return a.assignment_ == b.assignment_; }

private:
    std::vector<SupervisorIndex> assignment_;
    std::vector<std::size_t> counts_;
};

struct WorkloadStats {
    std::vector<double> levels;  ///< counts[j] / c_max[j]
    double sigma = 0.0;          ///< population standard deviation of the levels
};

/// Every supervisor within [c_min, c_max]. Throws MatchingError on dimension mismatch.
bool is_feasible(const Matching& matching, const ProblemInstance& instance);

/// Supervisors with spare capacity (count < c_max), ascending.
std::vector<SupervisorIndex> under_subscribed(const Matching& matching, const ProblemInstance& instance);

WorkloadStats workload_stats(const Matching& matching, const ProblemInstance& instance);
double workload_sigma(const std::vector<std::size_t>& counts, const ProblemInstance& instance);

inline AllocationStructure structure_of(const Matching& matching) { return matching.counts(); }

/// Shuffles students, fills every supervisor up to c_min, then spreads the rest
/// uniformly over supervisors that still have room.
Matching random_feasible_matching(const ProblemInstance& instance, Rng& rng);

}  // namespace spa
