#include <doctest.h>

#include "support.hpp"

using namespace spa;
using Kind = TaxonomyError::Kind;

namespace {

Kind error_kind(const std::vector<TopicRecord>& records) {
    try {
        TopicTree::from_records(records);
    } catch (const TaxonomyError& e) {
        return e.kind();
    }
    FAIL("expected a TaxonomyError");
    return Kind::Malformed;
}

}  // namespace

TEST_CASE("single root node") {
    const auto tree = TopicTree::from_records({{"root", ""}});
    CHECK(tree.size() == 1);
    CHECK(tree.depth(tree.root()) == 1);
    CHECK(tree.path_to("root") == std::vector<std::string>{"root"});
}

TEST_CASE("chain depth") {
    const auto tree = TopicTree::from_records({{"root", ""}, {"AI", "root"}, {"ML", "AI"}});
    CHECK(tree.depth(tree.index_of("ML")) == 3);
}

TEST_CASE("records may appear in any order") {
    const auto tree = TopicTree::from_records({{"C", "B"}, {"B", "A"}, {"A", "root"}, {"root", ""}});
    CHECK(tree.path_to("C") == std::vector<std::string>{"root", "A", "B", "C"});
}

TEST_CASE("malformed taxonomies") {
    CHECK(error_kind({{"root", ""}, {"A", "A"}}) == Kind::Cycle);
    CHECK(error_kind({{"root", ""}, {"A", "B"}, {"B", "A"}}) == Kind::Cycle);
    CHECK(error_kind({{"root", ""}, {"A", "root"}, {"A", "root"}}) == Kind::DuplicateId);
    CHECK(error_kind({{"r1", ""}, {"r2", ""}}) == Kind::MultipleRoots);
    CHECK(error_kind({{"root", ""}, {"A", "missing"}}) == Kind::DanglingParent);
    CHECK(error_kind({}) == Kind::NoRoot);
}

TEST_CASE("unknown topics") {
    const auto tree = spa::test::chain_tree();
    CHECK_FALSE(tree->contains("Z"));
    CHECK_FALSE(tree->contains("a"));  // case-sensitive
    CHECK_THROWS_AS(tree->index_of("Z"), TaxonomyError);
    CHECK_THROWS_AS(tree->similarity("A", "Z"), TaxonomyError);
}

TEST_CASE("paths") {
    const auto tree = spa::test::chain_tree();
    CHECK(tree->path_to("root") == std::vector<std::string>{"root"});
    CHECK(tree->path_to("C") == std::vector<std::string>{"root", "A", "B", "C"});
    CHECK(tree->path_to("A") == std::vector<std::string>{"root", "A"});
}

TEST_CASE("similarity is asymmetric") {
    const auto tree = spa::test::chain_tree();
    for (const char* x : {"root", "A", "B", "C"}) CHECK(tree->similarity(x, x) == 1.0);
    CHECK(tree->similarity("C", "A") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(tree->similarity("A", "C") == 1.0);
}

TEST_CASE("similarity agrees with explicit path intersection") {
    const auto pool = spa::synthetic_pool(3, 1, 1);
    const auto& tree = *pool.tree;
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, tree.size() - 1);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto a = pick(rng), b = pick(rng);
        const auto pa = tree.path_to(a), pb = tree.path_to(b);
        std::size_t common = 0;
        for (auto t : pa)
            if (std::find(pb.begin(), pb.end(), t) != pb.end()) ++common;
        REQUIRE(tree.similarity(a, b) == doctest::Approx(double(common) / double(pa.size())).epsilon(1e-12));
    }
}
