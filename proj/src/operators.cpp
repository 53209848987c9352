#include "spa/operators.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "spa/objectives.hpp"

namespace spa {

void MutationParams::validate() const {
    if (!(p_mt >= 0.0 && p_mt <= 1.0) || !(p_sw >= 0.0 && p_sw <= 1.0))
        throw std::invalid_argument("mutation probabilities must lie in [0, 1]");
}

namespace {

void require_feasible(const Matching& m, const ProblemInstance& instance, const char* what) {
    if (!is_feasible(m, instance)) throw MatchingError(std::string(what) + " is not a feasible matching");
}

/// Students of each supervisor plus each student's slot in that list.
struct Membership {
    std::vector<std::vector<StudentIndex>> members;
    std::vector<std::size_t> slot;

    Membership(const std::vector<SupervisorIndex>& assignment, std::size_t m) : members(m), slot(assignment.size()) {
        for (StudentIndex i = 0; i < assignment.size(); ++i) {
            slot[i] = members[assignment[i]].size();
            members[assignment[i]].push_back(i);
        }
    }

    void move(StudentIndex i, SupervisorIndex from, SupervisorIndex to) {
        auto& src = members[from];
        const StudentIndex last = src.back();
        src[slot[i]] = last;
        slot[last] = slot[i];
        src.pop_back();
        slot[i] = members[to].size();
        members[to].push_back(i);
    }
};

}  // namespace

Matching mutate(const Matching& parent, const MutationParams& params, const ProblemInstance& instance, Rng& rng,
                MutationStats* stats) {
    params.validate();
    require_feasible(parent, instance, "mutation parent");
    const std::size_t n = parent.num_students();
    const std::size_t m = parent.num_supervisors();

    std::vector<SupervisorIndex> assignment = parent.assignment();
    std::vector<std::size_t> counts = parent.counts();
    Membership groups(assignment, m);

    std::vector<SupervisorIndex> open;
    auto refresh_open = [&] {
        open.clear();
        for (std::size_t j = 0; j < m; ++j)
            if (counts[j] < instance.quota(j).max) open.push_back(j);
    };
    refresh_open();

    MutationStats local;
    for (StudentIndex i = 0; i < n; ++i) {
        if (!(uniform01(rng) < params.p_mt)) continue;
        ++local.mutated;
        const SupervisorIndex j = assignment[i];
        const bool prefer_transfer = uniform01(rng) > params.p_sw;
        const bool j_open = std::binary_search(open.begin(), open.end(), j);
        const std::size_t targets = open.size() - (j_open ? 1 : 0);

        if (prefer_transfer && counts[j] > instance.quota(j).min && targets > 0) {
            std::size_t pick = uniform_index(rng, targets);
            // Skip the source supervisor: a transfer always moves between distinct supervisors.
            if (j_open && open[pick] >= j) ++pick;
            const SupervisorIndex q = open[pick];
            groups.move(i, j, q);
            assignment[i] = q;
            --counts[j];
            ++counts[q];
            refresh_open();
            ++local.transfers;
        } else {
            const SupervisorIndex q = uniform_index(rng, m);
            ++local.swaps;
            if (groups.members[q].empty()) continue;
            const StudentIndex p = groups.members[q][uniform_index(rng, groups.members[q].size())];
            groups.members[j][groups.slot[i]] = p;
            groups.members[q][groups.slot[p]] = i;
            std::swap(groups.slot[i], groups.slot[p]);
            assignment[p] = j;
            assignment[i] = q;
        }
    }
    if (stats) *stats = local;
    return Matching(std::move(assignment), m);
}

AllocationStructure inherit_structure(const Matching& p1, const Matching& p2, double alpha,
                                      const ProblemInstance& instance, Rng& rng) {
    const double q1 = balance_penalty(workload_sigma(p1.counts(), instance), alpha);
    const double q2 = balance_penalty(workload_sigma(p2.counts(), instance), alpha);
    return uniform01(rng) < q1 / (q1 + q2) ? structure_of(p1) : structure_of(p2);
}

TransformedGraph::TransformedGraph(const AllocationStructure& structure, std::size_t num_students)
    : first_copy_(structure.size()), copies_(structure), adjacency_(num_students) {
    std::size_t next = 0;
    for (std::size_t j = 0; j < structure.size(); ++j) {
        first_copy_[j] = next;
        next += structure[j];
        owner_.insert(owner_.end(), structure[j], j);
    }
    if (next != num_students) throw MatchingError("structure does not sum to the number of students");
}

void TransformedGraph::add_edge(StudentIndex i, SupervisorIndex j) {
    auto& adj = adjacency_.at(i);
    for (std::size_t l = 0; l < copies_.at(j); ++l)
        adj.push_back(first_copy_[j] + l);
}

std::size_t TransformedGraph::num_edges() const noexcept {
    std::size_t e = 0;
    for (const auto& adj : adjacency_) e += adj.size();
    return e;
}

namespace {

class HopcroftKarp {
public:
    explicit HopcroftKarp(const TransformedGraph& g)
        : g_(g), match_student_(g.num_students(), unmatched), match_copy_(g.num_copies(), unmatched),
          dist_(g.num_students()), next_edge_(g.num_students()) {}

    std::vector<std::size_t> run() {
        while (layer()) {
            std::fill(next_edge_.begin(), next_edge_.end(), 0);
            for (StudentIndex s = 0; s < g_.num_students(); ++s)
                if (match_student_[s] == unmatched) augment(s);
        }
        return std::move(match_student_);
    }

private:
    static constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();

    // BFS from free students over alternating paths; true if a free copy is reachable.
    bool layer() {
        std::queue<StudentIndex> q;
        for (StudentIndex s = 0; s < g_.num_students(); ++s) {
            if (match_student_[s] == unmatched) {
                dist_[s] = 0;
                q.push(s);
            } else {
                dist_[s] = inf;
            }
        }
        bool found = false;
        while (!q.empty()) {
            const StudentIndex s = q.front();
            q.pop();
            for (std::size_t c : g_.neighbors(s)) {
                const StudentIndex t = match_copy_[c];
                if (t == unmatched) {
                    found = true;
                } else if (dist_[t] == inf) {
                    dist_[t] = dist_[s] + 1;
                    q.push(t);
                }
            }
        }
        return found;
    }

    bool augment(StudentIndex s) {
        const auto& adj = g_.neighbors(s);
        for (std::size_t& e = next_edge_[s]; e < adj.size(); ++e) {
            const std::size_t c = adj[e];
            const StudentIndex t = match_copy_[c];
            if (t == unmatched || (dist_[t] == dist_[s] + 1 && augment(t))) {
                match_student_[s] = c;
                match_copy_[c] = s;
                ++e;
                return true;
            }
        }
        dist_[s] = inf;
        return false;
    }

    const TransformedGraph& g_;
    std::vector<std::size_t> match_student_;
    std::vector<StudentIndex> match_copy_;
    std::vector<std::size_t> dist_;
    std::vector<std::size_t> next_edge_;
};

}  // namespace

std::vector<std::size_t> max_cardinality_matching(const TransformedGraph& graph) {
    return HopcroftKarp(graph).run();
}

Matching hopcroft_karp_crossover(const Matching& p1, const Matching& p2, double alpha,
                                 const ProblemInstance& instance, Rng& rng) {
    require_feasible(p1, instance, "crossover parent 1");
    require_feasible(p2, instance, "crossover parent 2");
    const auto structure = inherit_structure(p1, p2, alpha, instance, rng);
    const std::size_t n = p1.num_students();

    TransformedGraph graph(structure, n);
    // Edge order decides which perfect matching is found; a coin per student keeps the
    // child from collapsing onto the inherited parent.
    for (StudentIndex i = 0; i < n; ++i) {
        SupervisorIndex a = p1.supervisor_of(i), b = p2.supervisor_of(i);
        if (a == b) {
            graph.add_edge(i, a);
            continue;
        }
        if (uniform01(rng) < 0.5) std::swap(a, b);
        graph.add_edge(i, a);
        graph.add_edge(i, b);
    }
    const auto matched = max_cardinality_matching(graph);

    std::vector<SupervisorIndex> assignment(n);
    for (StudentIndex i = 0; i < n; ++i) {
        // The inherited parent's own edges form a perfect matching, so this cannot fail.
        if (matched[i] == unmatched) throw std::logic_error("transformed graph has no perfect matching");
        assignment[i] = graph.owner(matched[i]);
    }
    return Matching(std::move(assignment), p1.num_supervisors());
}

namespace {

/// Merged parent graph for the greedy crossover. Each student has at most two candidate
/// supervisors; edge id 2*i + s names candidate s of student i.
class GreedyMerge {
public:
    GreedyMerge(const Matching& p1, const Matching& p2, AllocationStructure target, std::vector<GspEvent>* trace)
        : trace_(trace), n_(p1.num_students()), target_(std::move(target)), candidate_(2 * n_), alive_(2 * n_, 0),
          degree_(n_, 0), locked_(n_, none), lock_count_(target_.size(), 0), incident_(target_.size()),
          pool_pos_(2 * n_, none) {
        for (StudentIndex i = 0; i < n_; ++i) {
            add(i, 0, p1.supervisor_of(i));
            if (p2.supervisor_of(i) != p1.supervisor_of(i)) add(i, 1, p2.supervisor_of(i));
        }
        for (SupervisorIndex j = 0; j < target_.size(); ++j)
            if (target_[j] == 0) saturate(j);
    }

    /// Locks every forced edge until no unlocked student has exactly one edge left.
    void simplify() {
        for (StudentIndex i = 0; i < n_; ++i)
            if (degree_[i] == 1) forced_.push_back(i);
        simplifying_ = true;
        while (!forced_.empty()) {
            const StudentIndex i = forced_.front();
            forced_.pop_front();
            if (locked_[i] != none || degree_[i] != 1) continue;
            lock(alive_[2 * i] ? 2 * i : 2 * i + 1, GspEvent::Kind::ForcedLock);
        }
        simplifying_ = false;
    }

    /// Repeatedly locks a uniformly chosen unlocked edge.
    void lock_random(Rng& rng) {
        while (!pool_.empty()) {
            const std::size_t e = pool_[uniform_index(rng, pool_.size())];
            const std::size_t other = e ^ 1;
            lock(e, GspEvent::Kind::RandomLock);
            if (alive_[other]) kill(other);
        }
    }

    /// Places students without edges on supervisors with open slots, uniformly at random.
    std::vector<SupervisorIndex> complete(Rng& rng) {
        std::vector<StudentIndex> pending;
        for (StudentIndex i = 0; i < n_; ++i)
            if (locked_[i] == none) pending.push_back(i);
        std::vector<SupervisorIndex> open;
        for (SupervisorIndex j = 0; j < target_.size(); ++j)
            if (lock_count_[j] < target_[j]) open.push_back(j);

        while (!pending.empty()) {
            const std::size_t si = uniform_index(rng, pending.size());
            const StudentIndex i = pending[si];
            pending[si] = pending.back();
            pending.pop_back();
            const std::size_t ri = uniform_index(rng, open.size());
            const SupervisorIndex j = open[ri];
            locked_[i] = j;
            record(GspEvent::Kind::Added, i, j);
            if (++lock_count_[j] == target_[j]) {
                open[ri] = open.back();
                open.pop_back();
            }
        }
        return std::move(locked_);
    }

private:
    static constexpr std::size_t none = static_cast<std::size_t>(-1);

    void add(StudentIndex i, std::size_t s, SupervisorIndex j) {
        const std::size_t e = 2 * i + s;
        candidate_[e] = j;
        alive_[e] = 1;
        ++degree_[i];
        incident_[j].push_back(e);
        pool_pos_[e] = pool_.size();
        pool_.push_back(e);
    }

    void drop_from_pool(std::size_t e) {
        const std::size_t pos = pool_pos_[e];
        const std::size_t last = pool_.back();
        pool_[pos] = last;
        pool_pos_[last] = pos;
        pool_.pop_back();
        pool_pos_[e] = none;
    }

    void record(GspEvent::Kind kind, StudentIndex i, SupervisorIndex j) {
        if (trace_) trace_->push_back({kind, i, j});
    }

    void kill(std::size_t e) {
        alive_[e] = 0;
        record(GspEvent::Kind::Removed, e / 2, candidate_[e]);
        drop_from_pool(e);
        const StudentIndex i = e / 2;
        if (--degree_[i] == 1 && simplifying_) forced_.push_back(i);
    }

    void lock(std::size_t e, GspEvent::Kind kind) {
        const StudentIndex i = e / 2;
        const SupervisorIndex j = candidate_[e];
        locked_[i] = j;
        record(kind, i, j);
        drop_from_pool(e);
        if (++lock_count_[j] == target_[j]) saturate(j);
    }

    /// Removes every unlocked edge incident to j.
    void saturate(SupervisorIndex j) {
        for (std::size_t e : incident_[j])
            if (alive_[e] && pool_pos_[e] != none) kill(e);
    }

    std::vector<GspEvent>* trace_;
    std::size_t n_;
    AllocationStructure target_;
    std::vector<SupervisorIndex> candidate_;
    std::vector<char> alive_;
    std::vector<std::size_t> degree_;
    std::vector<SupervisorIndex> locked_;
    std::vector<std::size_t> lock_count_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<std::size_t> pool_;
    std::vector<std::size_t> pool_pos_;
    std::deque<StudentIndex> forced_;
    bool simplifying_ = false;
};

}  // namespace

Matching gsp_crossover(const Matching& p1, const Matching& p2, double alpha, const ProblemInstance& instance,
                       Rng& rng, std::vector<GspEvent>* trace) {
    require_feasible(p1, instance, "crossover parent 1");
    require_feasible(p2, instance, "crossover parent 2");
    GreedyMerge merged(p1, p2, inherit_structure(p1, p2, alpha, instance, rng), trace);
    merged.simplify();
    merged.lock_random(rng);
    return Matching(merged.complete(rng), p1.num_supervisors());
}

void repair_quotas(Matching& matching, const ProblemInstance& instance, Rng& rng) {
    const std::size_t m = matching.num_supervisors();
    Membership groups(matching.assignment(), m);
    auto move = [&](StudentIndex i, SupervisorIndex to) {
        groups.move(i, matching.supervisor_of(i), to);
        matching.assign(i, to);
    };

    std::vector<SupervisorIndex> candidates;
    for (SupervisorIndex j = 0; j < m; ++j) {
        while (matching.count(j) > instance.quota(j).max) {
            // Supervisors short of their minimum are served first.
            candidates.clear();
            for (SupervisorIndex q = 0; q < m; ++q)
                if (matching.count(q) < instance.quota(q).min) candidates.push_back(q);
            if (candidates.empty())
                for (SupervisorIndex q = 0; q < m; ++q)
                    if (matching.count(q) < instance.quota(q).max) candidates.push_back(q);
            const auto& from = groups.members[j];
            move(from[uniform_index(rng, from.size())], candidates[uniform_index(rng, candidates.size())]);
        }
    }
    for (SupervisorIndex j = 0; j < m; ++j) {
        while (matching.count(j) < instance.quota(j).min) {
            candidates.clear();
            for (SupervisorIndex q = 0; q < m; ++q)
                if (matching.count(q) > instance.quota(q).min) candidates.push_back(q);
            const auto& from = groups.members[candidates[uniform_index(rng, candidates.size())]];
            move(from[uniform_index(rng, from.size())], j);
        }
    }
}

Matching uniform_crossover(const Matching& p1, const Matching& p2, const ProblemInstance& instance, Rng& rng) {
    std::vector<SupervisorIndex> genes(p1.num_students());
    for (StudentIndex i = 0; i < genes.size(); ++i)
        genes[i] = uniform01(rng) < 0.5 ? p1.supervisor_of(i) : p2.supervisor_of(i);
    Matching child(std::move(genes), p1.num_supervisors());
    repair_quotas(child, instance, rng);
    return child;
}

Matching k_point_crossover(const Matching& p1, const Matching& p2, std::size_t k, const ProblemInstance& instance,
                           Rng& rng) {
    const std::size_t n = p1.num_students();
    std::vector<std::size_t> cuts;
    if (n > 1) {
        std::vector<std::size_t> positions(n - 1);
        std::iota(positions.begin(), positions.end(), 1);
        k = std::min(k, positions.size());
        std::sample(positions.begin(), positions.end(), std::back_inserter(cuts), static_cast<std::ptrdiff_t>(k),
                    rng);
    }
    std::vector<SupervisorIndex> genes(n);
    bool from_first = true;
    std::size_t next_cut = 0;
    for (StudentIndex i = 0; i < n; ++i) {
        if (next_cut < cuts.size() && cuts[next_cut] == i) {
            from_first = !from_first;
            ++next_cut;
        }
        genes[i] = from_first ? p1.supervisor_of(i) : p2.supervisor_of(i);
    }
    Matching child(std::move(genes), p1.num_supervisors());
    repair_quotas(child, instance, rng);
    return child;
}

double new_gene_ratio(const Matching& child, const Matching& p1, const Matching& p2) {
    std::size_t fresh = 0;
    for (StudentIndex i = 0; i < child.num_students(); ++i)
        if (child.supervisor_of(i) != p1.supervisor_of(i) && child.supervisor_of(i) != p2.supervisor_of(i)) ++fresh;
    return static_cast<double>(fresh) / static_cast<double>(child.num_students());
}

std::string to_string(CrossoverKind kind) {
    switch (kind) {
    case CrossoverKind::HopcroftKarp: return "hopcroft-karp";
    case CrossoverKind::Gsp: return "gsp";
    case CrossoverKind::Uniform: return "uniform";
    case CrossoverKind::KPoint: return "k-point";
    case CrossoverKind::None: return "none";
    }
    return "none";
}

CrossoverKind parse_crossover_kind(const std::string& text) {
    for (auto kind : {CrossoverKind::HopcroftKarp, CrossoverKind::Gsp, CrossoverKind::Uniform, CrossoverKind::KPoint,
                      CrossoverKind::None})
        if (to_string(kind) == text) return kind;
    throw std::invalid_argument("unknown crossover kind '" + text + "'");
}

Matching crossover(CrossoverKind kind, const Matching& p1, const Matching& p2, double alpha, std::size_t k_points,
                   const ProblemInstance& instance, Rng& rng) {
    switch (kind) {
    case CrossoverKind::HopcroftKarp: return hopcroft_karp_crossover(p1, p2, alpha, instance, rng);
    case CrossoverKind::Gsp: return gsp_crossover(p1, p2, alpha, instance, rng);
    case CrossoverKind::Uniform: return uniform_crossover(p1, p2, instance, rng);
    case CrossoverKind::KPoint: return k_point_crossover(p1, p2, k_points, instance, rng);
    case CrossoverKind::None: break;
    }
    throw std::invalid_argument("crossover disabled");
}

}  // namespace spa
