#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spa/matching.hpp"
#include "spa/rng.hpp"

namespace spa {

struct MutationParams {
    double p_mt = 0.05;  ///< per-gene mutation probability
    double p_sw = 0.2;   ///< probability of preferring a swap over a transfer

    void validate() const;
};

struct MutationStats {
    std::size_t mutated = 0;  ///< genes selected for mutation
    std::size_t transfers = 0;
    std::size_t swaps = 0;
};

/// Swap/transfer mutation. Visits every gene (i, j); with probability p_mt it either
/// transfers student i to a random under-subscribed supervisor (when a draw exceeds p_sw,
/// j is above c_min and another supervisor has room) or swaps supervisors with a random
/// student of a random supervisor. Throws MatchingError on an infeasible parent.
Matching mutate(const Matching& parent, const MutationParams& params, const ProblemInstance& instance, Rng& rng,
                MutationStats* stats = nullptr);

/// Structure of p1 with probability q1 / (q1 + q2), else of p2, where q = 1 / (1 + sigma)^alpha.
AllocationStructure inherit_structure(const Matching& p1, const Matching& p2, double alpha,
                                      const ProblemInstance& instance, Rng& rng);

/// Bipartite graph between students and per-slot supervisor copies: supervisor j is split
/// into structure[j] copies, and a student adjacent to j is adjacent to every copy.
class TransformedGraph {
public:
    TransformedGraph(const AllocationStructure& structure, std::size_t num_students);

    /// Connects student i to every copy of supervisor j.
    void add_edge(StudentIndex i, SupervisorIndex j);

    std::size_t num_students() const noexcept { return adjacency_.size(); }
    std::size_t num_copies() const noexcept { return owner_.size(); }
    SupervisorIndex owner(std::size_t copy) const { return owner_[copy]; }
    const std::vector<std::size_t>& neighbors(StudentIndex i) const { return adjacency_[i]; }
    std::size_t num_edges() const noexcept;

private:
    std::vector<std::size_t> first_copy_;
    std::vector<std::size_t> copies_;
    std::vector<SupervisorIndex> owner_;
    std::vector<std::vector<std::size_t>> adjacency_;
};

inline constexpr std::size_t unmatched = static_cast<std::size_t>(-1);

/// Maximum-cardinality matching by Hopcroft-Karp. Entry i is the copy matched to
/// student i, or `unmatched`.
std::vector<std::size_t> max_cardinality_matching(const TransformedGraph& graph);

/// Child built only from parental genes with an inherited parental structure:
/// merge both edge sets, split supervisors into slot copies, take a perfect matching.
/// Throws MatchingError on an infeasible parent.
Matching hopcroft_karp_crossover(const Matching& p1, const Matching& p2, double alpha,
                                 const ProblemInstance& instance, Rng& rng);

/// Greedy structural preservation crossover. Locks forced edges of the merged graph,
/// then random edges, pruning saturated supervisors; students left without edges are
/// placed on random supervisors that still have open slots in the inherited structure.
struct GspEvent {
    enum class Kind { ForcedLock, RandomLock, Removed, Added };
    Kind kind;
    StudentIndex student;
    SupervisorIndex supervisor;

    friend bool operator==(const GspEvent&, const GspEvent&) = default;
};

/// When `trace` is given, every lock, edge removal and added edge is appended in order.
Matching gsp_crossover(const Matching& p1, const Matching& p2, double alpha, const ProblemInstance& instance,
                       Rng& rng, std::vector<GspEvent>* trace = nullptr);

/// Per-gene exchange followed by quota repair. Comparator only; not structure preserving.
Matching uniform_crossover(const Matching& p1, const Matching& p2, const ProblemInstance& instance, Rng& rng);

/// Segment exchange at k random cut points followed by quota repair. Comparator only.
Matching k_point_crossover(const Matching& p1, const Matching& p2, std::size_t k, const ProblemInstance& instance,
                           Rng& rng);

/// Moves random students off supervisors above c_max onto supervisors with room, then
/// fills supervisors below c_min from supervisors above their minimum.
void repair_quotas(Matching& matching, const ProblemInstance& instance, Rng& rng);

/// Fraction of child genes present in neither parent.
double new_gene_ratio(const Matching& child, const Matching& p1, const Matching& p2);

enum class CrossoverKind { HopcroftKarp, Gsp, Uniform, KPoint, None };

std::string to_string(CrossoverKind kind);
/// Accepts "hopcroft-karp", "gsp", "uniform", "k-point", "none".
CrossoverKind parse_crossover_kind(const std::string& text);

Matching crossover(CrossoverKind kind, const Matching& p1, const Matching& p2, double alpha, std::size_t k_points,
                   const ProblemInstance& instance, Rng& rng);

}  // namespace spa
