#include "spa/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace spa {

double enumeration_size(const ProblemInstance& instance) {
    return std::pow(static_cast<double>(instance.num_supervisors()), static_cast<double>(instance.num_students()));
}

namespace {

class Enumerator {
public:
    Enumerator(const ProblemInstance& instance, const std::function<void(const Matching&)>& visit)
        : instance_(instance), visit_(visit), assignment_(instance.num_students()),
          counts_(instance.num_supervisors(), 0) {
        for (const auto& q : instance.quotas()) deficit_ += q.min;
    }

    void run() { descend(0); }

private:
    void descend(std::size_t i) {
        const std::size_t n = assignment_.size();
        if (i == n) {
            visit_(Matching(assignment_, counts_.size()));
            return;
        }
        // Students left (including i) must cover every unmet minimum.
        if (n - i < deficit_) return;
        for (std::size_t j = 0; j < counts_.size(); ++j) {
            const auto& q = instance_.quota(j);
            if (counts_[j] == q.max) continue;
            const bool fills_minimum = counts_[j] < q.min;
            if (!fills_minimum && n - i - 1 < deficit_) continue;
            assignment_[i] = j;
            ++counts_[j];
            if (fills_minimum) --deficit_;
            descend(i + 1);
            if (fills_minimum) ++deficit_;
            --counts_[j];
        }
    }

    const ProblemInstance& instance_;
    const std::function<void(const Matching&)>& visit_;
    std::vector<SupervisorIndex> assignment_;
    std::vector<std::size_t> counts_;
    std::size_t deficit_ = 0;
};

void check_budget(const ProblemInstance& instance, double budget) {
    const double size = enumeration_size(instance);
    if (size > budget) {
        std::ostringstream msg;
        msg << "enumeration of " << instance.num_supervisors() << '^' << instance.num_students() << " = " << size
            << " assignments exceeds budget " << budget;
        throw BudgetExceeded(msg.str());
    }
}

}  // namespace

void enumerate_feasible(const ProblemInstance& instance, const std::function<void(const Matching&)>& visit,
                        double budget) {
    check_budget(instance, budget);
    Enumerator(instance, visit).run();
}

std::size_t count_feasible(const ProblemInstance& instance, double budget) {
    std::size_t count = 0;
    enumerate_feasible(instance, [&](const Matching&) { ++count; }, budget);
    return count;
}

std::vector<FrontierPoint> exact_pareto_frontier(const ProblemInstance& instance, double budget) {
    std::vector<FrontierPoint> archive;
    enumerate_feasible(
        instance,
        [&](const Matching& m) {
            const ObjectivePair o = evaluate_pair(m, instance);
            for (const auto& p : archive)
                if (p.objectives == o || dominates(p.objectives, o)) return;
            std::erase_if(archive, [&](const FrontierPoint& p) { return dominates(o, p.objectives); });
            archive.push_back({o, m});
        },
        budget);
    std::sort(archive.begin(), archive.end(), [](const FrontierPoint& a, const FrontierPoint& b) {
        return a.objectives.students < b.objectives.students;
    });
    return archive;
}

ExactBest exact_best(const ProblemInstance& instance, ObjectiveSelector which, double budget) {
    ExactBest best{-1.0, {}};
    const auto& values = instance.matrices();
    enumerate_feasible(
        instance,
        [&](const Matching& m) {
            const double v = which == ObjectiveSelector::Students
                                 ? student_objective(m, values)
                                 : supervisor_objective(m, values, instance.alpha(), instance);
            if (v > best.value) best = {v, m};
        },
        budget);
    return best;
}

}  // namespace spa
