#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "spa/preferences.hpp"
#include "spa/taxonomy.hpp"

namespace spa {

class InstanceError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Quota {
    std::size_t min = 0;
    std::size_t max = 1;

    friend bool operator==(const Quota&, const Quota&) = default;
};

struct Participant {
    std::string id;
    RankedPreference preferences;

    friend bool operator==(const Participant&, const Participant&) = default;
};

/// Immutable problem statement: who is matched, under which quotas, valued how.
class ProblemInstance {
public:
    /// Validates quotas (0 <= min <= max, max >= 1), capacity (sum min <= n <= sum max),
    /// list lengths against the weight vector, alpha >= 0 and unique participant ids.
    ProblemInstance(std::shared_ptr<const TopicTree> tree, std::vector<Participant> students,
                    std::vector<Participant> supervisors, std::vector<Quota> quotas, RankWeights weights,
                    double alpha);

    std::size_t num_students() const noexcept { return students_.size(); }
    std::size_t num_supervisors() const noexcept { return supervisors_.size(); }

    const TopicTree& tree() const noexcept { return *tree_; }
    const std::shared_ptr<const TopicTree>& tree_ptr() const noexcept { return tree_; }
    const std::vector<Participant>& students() const noexcept { return students_; }
    const std::vector<Participant>& supervisors() const noexcept { return supervisors_; }
    const std::vector<Quota>& quotas() const noexcept { return quotas_; }
    const Quota& quota(std::size_t j) const { return quotas_[j]; }
    const RankWeights& weights() const noexcept { return weights_; }
    double alpha() const noexcept { return alpha_; }

    /// Copy with a different balance exponent.
    ProblemInstance with_alpha(double alpha) const;

    /// Evaluation matrices for all student/supervisor pairs, precomputed at construction.
    const EvaluationMatrices& matrices() const noexcept { return *matrices_; }

private:
    std::shared_ptr<const TopicTree> tree_;
    std::vector<Participant> students_;
    std::vector<Participant> supervisors_;
    std::vector<Quota> quotas_;
    RankWeights weights_;
    double alpha_;
    std::shared_ptr<const EvaluationMatrices> matrices_;
};

/// V(i, j) = evaluate(student i, supervisor j) and V'(j, i) = evaluate(supervisor j, student i).
/// The two directions are computed independently and are not transposes of each other.
EvaluationMatrices build_evaluation_matrices(const ProblemInstance& instance);

}  // namespace spa
