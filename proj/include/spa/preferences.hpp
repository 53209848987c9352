#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spa/taxonomy.hpp"

namespace spa {

class PreferenceError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Ordered list of k distinct topics, most preferred first.
class RankedPreference {
public:
    RankedPreference() = default;
    /// Throws PreferenceError on an empty list or repeated topics.
    explicit RankedPreference(std::vector<TopicIndex> topics);
    /// Resolves identifiers against `tree`; unknown ids raise TaxonomyError.
    static RankedPreference from_ids(const std::vector<std::string>& ids, const TopicTree& tree);

    std::size_t size() const noexcept { return topics_.size(); }
    const std::vector<TopicIndex>& topics() const noexcept { return topics_; }
    TopicIndex operator[](std::size_t r) const { return topics_[r]; }

    /// 1-based rank of `topic`. Throws PreferenceError when the topic is not listed.
    std::size_t position(TopicIndex topic) const;

    friend bool operator==(const RankedPreference&, const RankedPreference&) = default;

private:
    std::vector<TopicIndex> topics_;
};

/// Importance of matching the r-th preference; nonincreasing and nonnegative.
class RankWeights {
public:
    RankWeights() = default;
    explicit RankWeights(std::vector<double> weights);

    /// (0.561, 0.258, 0.129, 0.064, 0.032): exponentially decreasing weights for k = 5.
    static RankWeights exponential_default();

    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](std::size_t r) const { return weights_[r]; }
    const std::vector<double>& values() const noexcept { return weights_; }
    /// Upper bound of any evaluation value.
    double total() const noexcept { return total_; }

    friend bool operator==(const RankWeights& a, const RankWeights& b) { return a.weights_ == b.weights_; }

private:
    std::vector<double> weights_;
    double total_ = 0.0;
};

/// 1 / (1 + |pos_a - pos_b|) with positions taken 1-based from each list.
double rank_similarity(TopicIndex a, TopicIndex b, const RankedPreference& list_a, const RankedPreference& list_b);

/// Topic of `other` most similar to `topic`; ties go to the earliest position in `other`.
/// Returns the 0-based position in `other`.
std::size_t best_matching_position(TopicIndex topic, const RankedPreference& other, const TopicTree& tree);
TopicIndex best_matching_topic(TopicIndex topic, const RankedPreference& other, const TopicTree& tree);

/// Value `own` assigns to a counterpart with preferences `other`:
/// sum over r of w_r * S_rnk(kw_r, kw*_r) * S_tree(kw_r, kw*_r), kw*_r the best match of kw_r in `other`.
double evaluate(const RankedPreference& own, const RankedPreference& other, const RankWeights& weights,
                const TopicTree& tree);

/// Dense row-major matrix of evaluation values.
class ValueMatrix {
public:
    ValueMatrix() = default;
    ValueMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

/// student_values(i, j): value student i gives supervisor j (n x m).
/// supervisor_values(j, i): value supervisor j gives student i (m x n).
struct EvaluationMatrices {
    ValueMatrix student_values;
    ValueMatrix supervisor_values;
};

}  // namespace spa
