#include "spa/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace spa {

namespace {

std::shared_ptr<const TopicTree> synthetic_taxonomy(Rng& rng) {
    std::vector<TopicRecord> records{{"root", ""}};
    // Fan-out range per level below the root.
    const std::vector<std::pair<int, int>> fanout{{13, 13}, {3, 7}, {2, 6}, {0, 4}, {0, 3}};
    std::vector<std::string> frontier{"root"};
    for (std::size_t level = 0; level < fanout.size(); ++level) {
        std::vector<std::string> next;
        for (const auto& parent : frontier) {
            const int kids = std::uniform_int_distribution<int>{fanout[level].first, fanout[level].second}(rng);
            for (int c = 1; c <= kids; ++c) {
                std::string id = level == 0 ? "T" + std::to_string(c) : parent + "." + std::to_string(c);
                records.push_back({id, parent});
                next.push_back(std::move(id));
            }
        }
        frontier = std::move(next);
    }
    return std::make_shared<const TopicTree>(TopicTree::from_records(records));
}

/// Top-level ancestor (area) of every topic; the root maps to itself.
std::vector<TopicIndex> areas_of(const TopicTree& tree) {
    std::vector<TopicIndex> area(tree.size());
    for (TopicIndex t = 0; t < tree.size(); ++t) {
        TopicIndex a = t;
        while (tree.depth(a) > 2) a = tree.parent(a);
        area[t] = a;
    }
    return area;
}

class ListSampler {
public:
    ListSampler(const TopicTree& tree, std::vector<double> depth_weight, std::vector<TopicIndex> area_order, Rng& rng)
        : tree_(tree), area_(areas_of(tree)), area_order_(std::move(area_order)), rng_(rng) {
        std::vector<double> all_w(tree.size(), 0.0);
        for (TopicIndex t = 0; t < tree.size(); ++t) {
            const std::size_t d = tree.depth(t);
            if (d >= 2 && d - 2 < depth_weight.size()) all_w[t] = depth_weight[d - 2];
        }
        anywhere_ = std::discrete_distribution<std::size_t>(all_w.begin(), all_w.end());
        for (TopicIndex a : area_order_) {
            std::vector<double> w(tree.size(), 0.0);
            for (TopicIndex t = 0; t < tree.size(); ++t)
                if (area_[t] == a) w[t] = all_w[t];
            within_.emplace_back(w.begin(), w.end());
        }
        // Zipf-like popularity over areas.
        std::vector<double> pop(area_order_.size());
        for (std::size_t r = 0; r < pop.size(); ++r) pop[r] = 1.0 / static_cast<double>(r + 1);
        area_pick_ = std::discrete_distribution<std::size_t>(pop.begin(), pop.end());
    }

    RankedPreference draw(std::size_t k) {
        const std::size_t area = area_pick_(rng_);
        const std::size_t focused = (k + 1) / 2 + (k > 2 ? 1 : 0);
        std::vector<TopicIndex> topics;
        std::set<TopicIndex> used;
        for (std::size_t guard = 0; topics.size() < k && guard < 1000; ++guard) {
            const TopicIndex t = topics.size() < focused ? within_[area](rng_) : anywhere_(rng_);
            if (used.insert(t).second) topics.push_back(t);
        }
        for (std::size_t guard = 0; topics.size() < k; ++guard) {
            const TopicIndex t = guard < 10000 ? anywhere_(rng_) : guard % tree_.size();
            if (used.insert(t).second) topics.push_back(t);
        }
        std::shuffle(topics.begin(), topics.end(), rng_);
        return RankedPreference(std::move(topics));
    }

private:
    const TopicTree& tree_;
    std::vector<TopicIndex> area_;
    std::vector<TopicIndex> area_order_;
    Rng& rng_;
    std::discrete_distribution<std::size_t> anywhere_;
    std::vector<std::discrete_distribution<std::size_t>> within_;
    std::discrete_distribution<std::size_t> area_pick_;
};

}  // namespace

PreferencePool synthetic_pool(std::uint64_t seed, std::size_t students, std::size_t supervisors, std::size_t k) {
    Rng rng = make_stream(seed, "pool");
    PreferencePool pool;
    pool.tree = synthetic_taxonomy(rng);
    const TopicTree& tree = *pool.tree;

    std::vector<TopicIndex> areas;
    for (TopicIndex t = 0; t < tree.size(); ++t)
        if (tree.depth(t) == 2) areas.push_back(t);
    // Students and supervisors rank the popularity of areas differently.
    auto student_areas = areas, supervisor_areas = areas;
    std::shuffle(student_areas.begin(), student_areas.end(), rng);
    std::shuffle(supervisor_areas.begin(), supervisor_areas.end(), rng);

    ListSampler student_sampler(tree, {1.0, 3.0, 4.0, 3.0, 2.0}, student_areas, rng);
    ListSampler supervisor_sampler(tree, {3.0, 4.0, 2.0, 1.0, 0.5}, supervisor_areas, rng);
    for (std::size_t i = 0; i < students; ++i) pool.students.push_back(student_sampler.draw(k));
    for (std::size_t j = 0; j < supervisors; ++j) pool.supervisors.push_back(supervisor_sampler.draw(k));
    return pool;
}

namespace {

std::string percent_text(double value) {
    std::ostringstream ss;
    ss << value;
    return ss.str();
}

}  // namespace

std::size_t required_capacity(std::size_t students, double surplus_percent) {
    return static_cast<std::size_t>(std::ceil(static_cast<double>(students) * (1.0 + surplus_percent / 100.0) - 1e-9));
}

namespace {

std::vector<Participant> sample_people(const std::vector<RankedPreference>& lists, std::size_t count,
                                       const std::string& prefix, const char* what, Rng& rng,
                                       std::vector<std::string>& warnings) {
    if (lists.empty()) throw InstanceError(std::string("preference pool has no ") + what + " lists");
    std::vector<std::size_t> picks;
    if (lists.size() >= count) {
        std::vector<std::size_t> all(lists.size());
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        picks.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count));
    } else {
        warnings.push_back(std::string("preference pool holds ") + std::to_string(lists.size()) + " " + what +
                           " lists for " + std::to_string(count) + " participants; sampling with replacement");
        for (std::size_t c = 0; c < count; ++c) picks.push_back(uniform_index(rng, lists.size()));
    }
    const std::size_t width = std::to_string(count).size();
    std::vector<Participant> people;
    for (std::size_t c = 0; c < count; ++c) {
        std::string num = std::to_string(c + 1);
        num.insert(0, width - num.size(), '0');
        people.push_back({prefix + num, lists[picks[c]]});
    }
    return people;
}

}  // namespace

GeneratedInstance generate_instance(const InstanceSpec& spec, const PreferencePool& pool, std::uint64_t seed) {
    const std::size_t n = spec.students, m = spec.supervisors;
    if (n == 0 || m == 0) throw InstanceError("instance needs at least one student and one supervisor");
    if (spec.c_max_lo < 1 || spec.c_max_lo > spec.c_max_hi || spec.c_min > spec.c_max_lo)
        throw InstanceError("invalid quota range");
    if (spec.c_min * m > n) throw InstanceError("minimum quotas exceed the number of students");
    const std::size_t required = std::max(required_capacity(n, spec.surplus_percent), n);
    if (spec.scheme == QuotaScheme::Redraw && spec.c_max_hi * m < required)
        throw InstanceError("surplus of " + percent_text(spec.surplus_percent) + "% needs capacity " +
                            std::to_string(required) + " but " + std::to_string(m) + " supervisors offer at most " +
                            std::to_string(spec.c_max_hi * m));

    Rng rng = make_stream(seed, "instance");
    std::vector<std::string> warnings;
    auto students = sample_people(pool.students, n, "s", "student", rng, warnings);
    auto supervisors = sample_people(pool.supervisors, m, "r", "supervisor", rng, warnings);

    std::uniform_int_distribution<std::size_t> draw(spec.c_max_lo, spec.c_max_hi);
    std::vector<std::size_t> caps(m);
    auto redraw = [&] {
        std::size_t total = 0;
        for (auto& c : caps) total += (c = draw(rng));
        return total;
    };
    if (spec.scheme == QuotaScheme::Redraw) {
        std::size_t attempts = 0;
        while (redraw() < required)
            if (++attempts == 1000000)
                throw InstanceError("capacity target " + std::to_string(required) +
                                    " not reached after 10^6 quota draws; lower the surplus");
    } else {
        const std::size_t total = redraw();
        if (total < required) {
            const double scale = static_cast<double>(required) / static_cast<double>(total);
            for (auto& c : caps) c = static_cast<std::size_t>(std::ceil(static_cast<double>(c) * scale));
        }
    }
    std::vector<Quota> quotas;
    for (std::size_t c : caps) quotas.push_back({spec.c_min, std::max(c, spec.c_min)});

    return {ProblemInstance(pool.tree, std::move(students), std::move(supervisors), std::move(quotas),
                            RankWeights(spec.weights), spec.alpha),
            std::move(warnings)};
}

}  // namespace spa
