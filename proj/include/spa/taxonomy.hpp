#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace spa {

using TopicIndex = std::size_t;

class TaxonomyError : public std::runtime_error {
public:
    enum class Kind { DuplicateId, NoRoot, MultipleRoots, Cycle, DanglingParent, UnknownTopic, Malformed };

    TaxonomyError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

const char* to_string(TaxonomyError::Kind kind) noexcept;

/// One `node, parent` record of a taxonomy document. An empty parent marks the root.
struct TopicRecord {
    std::string id;
    std::string parent;
};

/// Rooted topic hierarchy. Immutable once built; node identifiers are
/// case-sensitive exact strings.
class TopicTree {
public:
    static constexpr TopicIndex npos = static_cast<TopicIndex>(-1);

    /// Validates and builds the tree. Throws TaxonomyError on duplicate ids,
    /// zero or several roots, dangling parents, or cycles.
    static TopicTree from_records(const std::vector<TopicRecord>& records);

    std::size_t size() const noexcept { return ids_.size(); }
    TopicIndex root() const noexcept { return root_; }

    const std::string& id(TopicIndex t) const { return ids_.at(t); }
    TopicIndex parent(TopicIndex t) const { return parent_.at(t); }
    /// Number of nodes on the root-to-t path, root included (root has depth 1).
    std::size_t depth(TopicIndex t) const { return depth_.at(t); }

    bool contains(std::string_view id) const;
    /// Throws TaxonomyError(UnknownTopic) if absent.
    TopicIndex index_of(std::string_view id) const;

    /// Root-to-topic path, both endpoints included.
    std::vector<TopicIndex> path_to(TopicIndex t) const;
    std::vector<std::string> path_to(std::string_view id) const;

    /// Similarity of `other` to `topic`: |path(topic) ∩ path(other)| / |path(topic)|.
    /// Asymmetric; a topic is fully matched only by itself or its descendants.
    double similarity(TopicIndex topic, TopicIndex other) const;
    double similarity(std::string_view topic, std::string_view other) const;

    /// Size of the shared part of the two root paths (depth of the lowest common ancestor).
    std::size_t shared_path_length(TopicIndex a, TopicIndex b) const;

    std::vector<TopicRecord> records() const;

private:
    std::vector<std::string> ids_;
    std::vector<TopicIndex> parent_;
    std::vector<std::size_t> depth_;
    std::unordered_map<std::string, TopicIndex> index_;
    TopicIndex root_ = npos;
};

}  // namespace spa
