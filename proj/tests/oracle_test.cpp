#include <doctest.h>

#include <algorithm>
#include <set>

#include "support.hpp"

using namespace spa;
using spa::test::flat_instance;

namespace {

/// Every assignment vector in m^n, feasible or not.
template <class Visit>
void for_each_assignment(std::size_t n, std::size_t m, Visit visit) {
    std::vector<SupervisorIndex> a(n, 0);
    while (true) {
        visit(Matching(a, m));
        std::size_t k = 0;
        while (k < n && ++a[k] == m) a[k++] = 0;
        if (k == n) return;
    }
}

std::vector<ObjectivePair> brute_frontier(const ProblemInstance& inst) {
    std::vector<ObjectivePair> all;
    for_each_assignment(inst.num_students(), inst.num_supervisors(), [&](const Matching& m) {
        if (is_feasible(m, inst)) all.push_back(evaluate_pair(m, inst));
    });
    std::vector<ObjectivePair> front;
    for (const auto& p : all)
        if (std::none_of(all.begin(), all.end(), [&](const ObjectivePair& q) { return dominates(q, p); }))
            front.push_back(p);
    std::sort(front.begin(), front.end(), [](auto& a, auto& b) { return a.students < b.students; });
    front.erase(std::unique(front.begin(), front.end()), front.end());
    return front;
}

double factorial(std::size_t k) { return k <= 1 ? 1.0 : double(k) * factorial(k - 1); }

}  // namespace

TEST_CASE("feasible matching counts") {
    CHECK(count_feasible(flat_instance(2, {{1, 1}, {1, 1}})) == 2);
    CHECK(count_feasible(flat_instance(3, {{1, 3}})) == 1);
    // Minimum quotas summing to n: multinomial n! / prod c_min!
    CHECK(count_feasible(flat_instance(6, {{1, 3}, {2, 3}, {3, 4}})) == std::size_t(factorial(6) / (1 * 2 * 6)));
    CHECK(count_feasible(flat_instance(7, {{2, 2}, {2, 5}, {3, 3}})) ==
          std::size_t(factorial(7) / (factorial(2) * factorial(2) * factorial(3))));
}

TEST_CASE("enumeration agrees with filtering every assignment") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = spa::test::random_instance(5 + seed % 3, 3, seed, seed % 2, 2, 4, 0.0);
        std::size_t expected = 0;
        for_each_assignment(inst.num_students(), inst.num_supervisors(),
                            [&](const Matching& m) { expected += is_feasible(m, inst); });
        std::set<std::vector<SupervisorIndex>> seen;
        enumerate_feasible(inst, [&](const Matching& m) {
            REQUIRE(is_feasible(m, inst));
            REQUIRE(seen.insert(m.assignment()).second);
        });
        CHECK(seen.size() == expected);
    }
}

TEST_CASE("exact frontier agrees with brute force") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto inst = spa::test::random_instance(6, 3, seed, 1, 2, 3, 0.0);
        const auto frontier = exact_pareto_frontier(inst);
        const auto expected = brute_frontier(inst);
        REQUIRE(frontier.size() == expected.size());
        for (std::size_t k = 0; k < frontier.size(); ++k) {
            CHECK(frontier[k].objectives == expected[k]);
            CHECK(evaluate_pair(frontier[k].matching, inst) == frontier[k].objectives);
        }
    }
}

TEST_CASE("single feasible matching") {
    const auto inst = flat_instance(3, {{3, 3}});
    CHECK(exact_pareto_frontier(inst).size() == 1);
}

TEST_CASE("exact best") {
    SUBCASE("identical lists attain the weight total") {
        const auto tree = spa::test::make_tree(
            {{"root", ""}, {"a", "root"}, {"b", "root"}, {"c", "root"}, {"d", "root"}, {"e", "root"}});
        const auto list = RankedPreference::from_ids({"a", "b", "c", "d", "e"}, *tree);
        std::vector<Participant> s, r;
        for (int i = 0; i < 4; ++i) s.push_back({"s" + std::to_string(i), list});
        for (int j = 0; j < 2; ++j) r.push_back({"r" + std::to_string(j), list});
        const ProblemInstance inst(tree, s, r, {{1, 3}, {1, 3}}, RankWeights::exponential_default(), 2.0);
        CHECK(exact_best(inst, ObjectiveSelector::Students).value == doctest::Approx(1.044));
    }
    SUBCASE("dominates every GA value") {
        const auto inst = spa::test::random_instance(6, 3, 1, 1, 2, 3, 0.0);
        const auto bs = exact_best(inst, ObjectiveSelector::Students);
        const auto br = exact_best(inst, ObjectiveSelector::Supervisors);
        CHECK(is_feasible(bs.matching, inst));
        CHECK(is_feasible(br.matching, inst));
        GAConfig config;
        config.pop_max = 16;
        config.it_max = 30;
        for (const auto& ind : evolve(inst, config).population) {
            CHECK(ind.objectives.students <= bs.value);
            CHECK(ind.objectives.supervisors <= br.value);
        }
    }
}

TEST_CASE("enumeration budget") {
    const auto inst = spa::test::random_instance(30, 6, 1);
    CHECK(enumeration_size(inst) == doctest::Approx(std::pow(6.0, 30.0)));
    CHECK_THROWS_AS(count_feasible(inst), BudgetExceeded);
    CHECK_THROWS_AS(exact_pareto_frontier(flat_instance(4, {{1, 3}, {1, 3}}), 10.0), BudgetExceeded);
}
