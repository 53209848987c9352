#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "spa/instance.hpp"
#include "spa/rng.hpp"

namespace spa {

/// Taxonomy plus ranked lists that instances draw their participants from.
struct PreferencePool {
    std::shared_ptr<const TopicTree> tree;
    std::vector<RankedPreference> students;
    std::vector<RankedPreference> supervisors;
};

/// Hierarchical synthetic taxonomy (five levels below the root, uneven fan-out) and
/// k-topic lists: students lean to specific deep topics, supervisors to broader ones,
/// and each person concentrates on one popularity-skewed area.
PreferencePool synthetic_pool(std::uint64_t seed, std::size_t students = 400, std::size_t supervisors = 80,
                              std::size_t k = 5);

enum class QuotaScheme {
    /// c_max i.i.d. uniform on [c_max_lo, c_max_hi], redrawn as a whole vector until the
    /// capacity target is met.
    Redraw,
    /// One i.i.d. draw, then scaled up proportionally to reach the target. For student to
    /// supervisor ratios the uniform range cannot cover.
    Scaled,
};

struct InstanceSpec {
    std::size_t students = 150;
    std::size_t supervisors = 30;
    double surplus_percent = 20.0;  ///< sum c_max >= n * (1 + surplus / 100)
    std::size_t c_min = 1;
    std::size_t c_max_lo = 4;
    std::size_t c_max_hi = 10;
    QuotaScheme scheme = QuotaScheme::Redraw;
    double alpha = 2.0;
    std::vector<double> weights{0.561, 0.258, 0.129, 0.064, 0.032};
};

struct GeneratedInstance {
    ProblemInstance instance;
    std::vector<std::string> warnings;
};

/// Smallest capacity meeting the surplus target.
std::size_t required_capacity(std::size_t students, double surplus_percent);

/// Samples participants from the pool (with replacement and a warning when the pool is
/// too small) and draws quotas per `spec`. Throws InstanceError when the capacity target
/// is unreachable under the quota range.
GeneratedInstance generate_instance(const InstanceSpec& spec, const PreferencePool& pool, std::uint64_t seed);

}  // namespace spa
