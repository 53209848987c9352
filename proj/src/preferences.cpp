#include "spa/preferences.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace spa {

RankedPreference::RankedPreference(std::vector<TopicIndex> topics) : topics_(std::move(topics)) {
    if (topics_.empty())
        throw PreferenceError("preference list must contain at least one topic");
    auto sorted = topics_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw PreferenceError("preference list repeats a topic");
}

RankedPreference RankedPreference::from_ids(const std::vector<std::string>& ids, const TopicTree& tree) {
    std::vector<TopicIndex> topics;
    topics.reserve(ids.size());
    for (const auto& id : ids)
        topics.push_back(tree.index_of(id));
    return RankedPreference(std::move(topics));
}

std::size_t RankedPreference::position(TopicIndex topic) const {
    auto it = std::find(topics_.begin(), topics_.end(), topic);
    if (it == topics_.end())
        throw PreferenceError("topic not present in preference list");
    return static_cast<std::size_t>(it - topics_.begin()) + 1;
}

RankWeights::RankWeights(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty())
        throw PreferenceError("weight vector must not be empty");
    for (std::size_t r = 0; r < weights_.size(); ++r) {
        if (!(weights_[r] >= 0.0))
            throw PreferenceError("weights must be nonnegative");
        if (r > 0 && weights_[r] > weights_[r - 1])
            throw PreferenceError("weights must be nonincreasing");
    }
    total_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

RankWeights RankWeights::exponential_default() {
    return RankWeights({0.561, 0.258, 0.129, 0.064, 0.032});
}

double rank_similarity(TopicIndex a, TopicIndex b, const RankedPreference& list_a, const RankedPreference& list_b) {
    const auto pa = static_cast<long>(list_a.position(a));
    const auto pb = static_cast<long>(list_b.position(b));
    return 1.0 / (1.0 + static_cast<double>(std::labs(pa - pb)));
}

std::size_t best_matching_position(TopicIndex topic, const RankedPreference& other, const TopicTree& tree) {
    std::size_t best = 0;
    std::size_t best_shared = 0;
    // The denominator of the similarity is fixed by `topic`, so comparing shared path lengths suffices.
    for (std::size_t r = 0; r < other.size(); ++r) {
        const std::size_t shared = tree.shared_path_length(topic, other[r]);
        if (shared > best_shared) {
            best_shared = shared;
            best = r;
        }
    }
    return best;
}

TopicIndex best_matching_topic(TopicIndex topic, const RankedPreference& other, const TopicTree& tree) {
    return other[best_matching_position(topic, other, tree)];
}

double evaluate(const RankedPreference& own, const RankedPreference& other, const RankWeights& weights,
                const TopicTree& tree) {
    if (own.size() != other.size() || own.size() != weights.size())
        throw PreferenceError("preference lists and weight vector differ in length");
    double value = 0.0;
    for (std::size_t r = 0; r < own.size(); ++r) {
        const std::size_t best = best_matching_position(own[r], other, tree);
        const double rank_sim = 1.0 / (1.0 + std::abs(static_cast<double>(r) - static_cast<double>(best)));
        value += weights[r] * rank_sim * tree.similarity(own[r], other[best]);
    }
    return value;
}

}  // namespace spa
