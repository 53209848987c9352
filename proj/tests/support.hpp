#pragma once

#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "spa/experiments.hpp"

namespace spa::test {

inline std::shared_ptr<const TopicTree> make_tree(const std::vector<TopicRecord>& records) {
    return std::make_shared<const TopicTree>(TopicTree::from_records(records));
}

/// root -> A -> B -> C
inline std::shared_ptr<const TopicTree> chain_tree() {
    return make_tree({{"root", ""}, {"A", "root"}, {"B", "A"}, {"C", "B"}});
}

/// Instance where everyone lists the root only (k = 1, weight 1): every value is 1.
inline ProblemInstance flat_instance(std::size_t n, const std::vector<Quota>& quotas, double alpha = 2.0) {
    auto tree = make_tree({{"root", ""}});
    const RankedPreference list({tree->root()});
    std::vector<Participant> students, supervisors;
    for (std::size_t i = 0; i < n; ++i) students.push_back({"s" + std::to_string(i), list});
    for (std::size_t j = 0; j < quotas.size(); ++j) supervisors.push_back({"r" + std::to_string(j), list});
    return ProblemInstance(tree, students, supervisors, quotas, RankWeights({1.0}), alpha);
}

inline const PreferencePool& shared_pool() {
    static const PreferencePool pool = synthetic_pool(11);
    return pool;
}

/// Generated instance with c_max ~ U(lo, hi) and the given surplus.
inline ProblemInstance random_instance(std::size_t n, std::size_t m, std::uint64_t seed, std::size_t c_min = 1,
                                       std::size_t lo = 4, std::size_t hi = 10, double surplus = 20.0) {
    InstanceSpec spec;
    spec.students = n;
    spec.supervisors = m;
    spec.c_min = c_min;
    spec.c_max_lo = lo;
    spec.c_max_hi = hi;
    spec.surplus_percent = surplus;
    return generate_instance(spec, shared_pool(), seed).instance;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("spa_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace spa::test
