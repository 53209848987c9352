#include "spa/taxonomy.hpp"

#include <algorithm>

namespace spa {

const char* to_string(TaxonomyError::Kind kind) noexcept {
    switch (kind) {
    case TaxonomyError::Kind::DuplicateId: return "duplicate-id";
    case TaxonomyError::Kind::NoRoot: return "no-root";
    case TaxonomyError::Kind::MultipleRoots: return "multiple-roots";
    case TaxonomyError::Kind::Cycle: return "cycle";
    case TaxonomyError::Kind::DanglingParent: return "dangling-parent";
    case TaxonomyError::Kind::UnknownTopic: return "unknown-topic";
    case TaxonomyError::Kind::Malformed: return "malformed";
    }
    return "unknown";
}

TopicTree TopicTree::from_records(const std::vector<TopicRecord>& records) {
    using Kind = TaxonomyError::Kind;
    TopicTree tree;
    tree.ids_.reserve(records.size());
    for (const auto& rec : records) {
        if (rec.id.empty())
            throw TaxonomyError(Kind::Malformed, "taxonomy record with empty node id");
        if (!tree.index_.emplace(rec.id, tree.ids_.size()).second)
            throw TaxonomyError(Kind::DuplicateId, "duplicate topic id '" + rec.id + "'");
        tree.ids_.push_back(rec.id);
    }

    const std::size_t n = records.size();
    tree.parent_.assign(n, npos);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& rec = records[i];
        if (rec.parent.empty()) {
            if (tree.root_ != npos)
                throw TaxonomyError(Kind::MultipleRoots, "multiple roots: '" + tree.ids_[tree.root_] +
                                                             "' and '" + rec.id + "'");
            tree.root_ = i;
            continue;
        }
        auto it = tree.index_.find(rec.parent);
        if (it == tree.index_.end())
            throw TaxonomyError(Kind::DanglingParent,
                                "topic '" + rec.id + "' references unknown parent '" + rec.parent + "'");
        tree.parent_[i] = it->second;
    }
    if (tree.root_ == npos) {
        // A self-parent or parent loop leaves the document without a root; report the loop.
        for (std::size_t i = 0; i < n; ++i)
            if (tree.parent_[i] == i)
                throw TaxonomyError(Kind::Cycle, "topic '" + tree.ids_[i] + "' is its own parent");
        throw TaxonomyError(Kind::NoRoot, "taxonomy has no root (record with empty parent)");
    }

    // Depths by walking parent chains; state 1 = on the current chain, 2 = resolved.
    tree.depth_.assign(n, 0);
    std::vector<char> state(n, 0);
    state[tree.root_] = 2;
    tree.depth_[tree.root_] = 1;
    std::vector<TopicIndex> chain;
    for (std::size_t start = 0; start < n; ++start) {
        chain.clear();
        TopicIndex t = start;
        while (state[t] == 0) {
            state[t] = 1;
            chain.push_back(t);
            t = tree.parent_[t];
        }
        if (state[t] == 1)
            throw TaxonomyError(Kind::Cycle, "cycle through topic '" + tree.ids_[t] + "'");
        for (auto c = chain.rbegin(); c != chain.rend(); ++c) {
            tree.depth_[*c] = tree.depth_[tree.parent_[*c]] + 1;
            state[*c] = 2;
        }
    }
    return tree;
}

bool TopicTree::contains(std::string_view id) const {
    return index_.find(std::string(id)) != index_.end();
}

TopicIndex TopicTree::index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end())
        throw TaxonomyError(TaxonomyError::Kind::UnknownTopic, "unknown topic '" + std::string(id) + "'");
    return it->second;
}

std::vector<TopicIndex> TopicTree::path_to(TopicIndex t) const {
    if (t >= size())
        throw TaxonomyError(TaxonomyError::Kind::UnknownTopic, "topic index out of range");
    std::vector<TopicIndex> path;
    path.reserve(depth_[t]);
    for (TopicIndex cur = t; cur != npos; cur = parent_[cur])
        path.push_back(cur);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<std::string> TopicTree::path_to(std::string_view id) const {
    std::vector<std::string> out;
    for (TopicIndex t : path_to(index_of(id)))
        out.push_back(ids_[t]);
    return out;
}

std::size_t TopicTree::shared_path_length(TopicIndex a, TopicIndex b) const {
    // Both paths start at the root, so the intersection is the path to the lowest common ancestor.
    while (depth_.at(a) > depth_.at(b)) a = parent_[a];
    while (depth_[b] > depth_[a]) b = parent_[b];
    while (a != b) {
        a = parent_[a];
        b = parent_[b];
    }
    return depth_[a];
}

double TopicTree::similarity(TopicIndex topic, TopicIndex other) const {
    return static_cast<double>(shared_path_length(topic, other)) / static_cast<double>(depth_.at(topic));
}

double TopicTree::similarity(std::string_view topic, std::string_view other) const {
    return similarity(index_of(topic), index_of(other));
}

std::vector<TopicRecord> TopicTree::records() const {
    std::vector<TopicRecord> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i)
        out.push_back({ids_[i], parent_[i] == npos ? std::string{} : ids_[parent_[i]]});
    return out;
}

}  // namespace spa
