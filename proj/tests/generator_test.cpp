#include <doctest.h>

#include <numeric>

#include "support.hpp"

using namespace spa;

namespace {

std::size_t capacity(const ProblemInstance& inst) {
    std::size_t total = 0;
    for (const auto& q : inst.quotas()) total += q.max;
    return total;
}

}  // namespace

TEST_CASE("synthetic pool shape") {
    const auto& pool = spa::test::shared_pool();
    CHECK(pool.students.size() == 400);
    CHECK(pool.supervisors.size() == 80);
    std::size_t max_depth = 0;
    for (TopicIndex t = 0; t < pool.tree->size(); ++t) max_depth = std::max(max_depth, pool.tree->depth(t));
    CHECK(max_depth <= 6);
    for (const auto& list : pool.students) CHECK(list.size() == 5);
}

TEST_CASE("capacity surplus of the default setup") {
    InstanceSpec spec;  // 150 students, 30 supervisors, 20% surplus
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = generate_instance(spec, spa::test::shared_pool(), seed);
        CHECK(capacity(g.instance) >= 180);
        for (const auto& q : g.instance.quotas()) {
            CHECK(q.min == 1);
            CHECK(q.max >= 4);
            CHECK(q.max <= 10);
        }
        CHECK(g.warnings.empty());
    }
    CHECK(required_capacity(150, 20) == 180);
    CHECK(required_capacity(50, 10) == 55);
}

TEST_CASE("unreachable surplus is rejected") {
    InstanceSpec spec;
    spec.students = 50;
    spec.supervisors = 5;
    spec.surplus_percent = 10;
    CHECK_THROWS_AS(generate_instance(spec, spa::test::shared_pool(), 1), InstanceError);
    spec.supervisors = 6;
    CHECK(capacity(generate_instance(spec, spa::test::shared_pool(), 1).instance) >= 55);
}

TEST_CASE("scaled quotas cover dense ratios") {
    InstanceSpec spec;
    spec.students = 500;
    spec.supervisors = 50;
    spec.scheme = QuotaScheme::Scaled;
    const auto g = generate_instance(spec, spa::test::shared_pool(), 3);
    CHECK(capacity(g.instance) >= 600);
    CHECK(g.warnings.size() == 1);  // 500 students from a pool of 400
}

TEST_CASE("generation is deterministic") {
    const auto a = spa::test::scratch_dir("gen_a"), b = spa::test::scratch_dir("gen_b");
    InstanceSpec spec;
    save_instance(generate_instance(spec, spa::test::shared_pool(), 9).instance, a);
    save_instance(generate_instance(spec, spa::test::shared_pool(), 9).instance, b);
    for (const char* f : {"instance.json", "instance_taxonomy.csv", "instance_students.csv", "instance_supervisors.csv",
                          "instance_quotas.csv"})
        CHECK(read_file(a / f) == read_file(b / f));
}

TEST_CASE("pool files round-trip") {
    const auto dir = spa::test::scratch_dir("pool");
    const auto pool = synthetic_pool(2, 30, 10);
    save_pool(pool, dir);
    const auto back = load_pool(dir);
    CHECK(back.students == pool.students);
    CHECK(back.supervisors == pool.supervisors);
    CHECK(back.tree->size() == pool.tree->size());
}
