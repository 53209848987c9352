#include "spa/instance.hpp"

#include <unordered_set>

namespace spa {

namespace {

void check_unique_ids(const std::vector<Participant>& people, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& p : people)
        if (!seen.insert(p.id).second)
            throw InstanceError(std::string("duplicate ") + what + " id '" + p.id + "'");
}

}  // namespace

ProblemInstance::ProblemInstance(std::shared_ptr<const TopicTree> tree, std::vector<Participant> students,
                                 std::vector<Participant> supervisors, std::vector<Quota> quotas,
                                 RankWeights weights, double alpha)
    : tree_(std::move(tree)),
      students_(std::move(students)),
      supervisors_(std::move(supervisors)),
      quotas_(std::move(quotas)),
      weights_(std::move(weights)),
      alpha_(alpha) {
    if (!tree_) throw InstanceError("instance requires a taxonomy");
    if (students_.empty()) throw InstanceError("instance requires at least one student");
    if (supervisors_.empty()) throw InstanceError("instance requires at least one supervisor");
    if (quotas_.size() != supervisors_.size())
        throw InstanceError("quota table size does not match supervisor count");
    if (!(alpha_ >= 0.0)) throw InstanceError("alpha must be nonnegative");
    check_unique_ids(students_, "student");
    check_unique_ids(supervisors_, "supervisor");

    const std::size_t k = weights_.size();
    for (const auto* group : {&students_, &supervisors_})
        for (const auto& p : *group) {
            if (p.preferences.size() != k)
                throw InstanceError("participant '" + p.id + "' lists " + std::to_string(p.preferences.size()) +
                                    " topics, expected " + std::to_string(k));
            for (TopicIndex t : p.preferences.topics())
                if (t >= tree_->size()) throw InstanceError("participant '" + p.id + "' lists unknown topic");
        }

    std::size_t total_min = 0, total_max = 0;
    for (std::size_t j = 0; j < quotas_.size(); ++j) {
        const auto& q = quotas_[j];
        if (q.max < 1 || q.min > q.max)
            throw InstanceError("invalid quota for supervisor '" + supervisors_[j].id +
                                "': need 0 <= c_min <= c_max and c_max >= 1");
        total_min += q.min;
        total_max += q.max;
    }
    const std::size_t n = students_.size();
    if (total_min > n || n > total_max)
        throw InstanceError("no feasible matching: sum c_min = " + std::to_string(total_min) +
                            ", n = " + std::to_string(n) + ", sum c_max = " + std::to_string(total_max));
    matrices_ = std::make_shared<const EvaluationMatrices>(build_evaluation_matrices(*this));
}

ProblemInstance ProblemInstance::with_alpha(double alpha) const {
    if (!(alpha >= 0.0)) throw InstanceError("alpha must be nonnegative");
    ProblemInstance copy = *this;
    copy.alpha_ = alpha;
    return copy;
}

EvaluationMatrices build_evaluation_matrices(const ProblemInstance& instance) {
    const std::size_t n = instance.num_students();
    const std::size_t m = instance.num_supervisors();
    EvaluationMatrices out{ValueMatrix(n, m), ValueMatrix(m, n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const auto& s = instance.students()[i].preferences;
            const auto& r = instance.supervisors()[j].preferences;
            out.student_values(i, j) = evaluate(s, r, instance.weights(), instance.tree());
            out.supervisor_values(j, i) = evaluate(r, s, instance.weights(), instance.tree());
        }
    return out;
}

}  // namespace spa
