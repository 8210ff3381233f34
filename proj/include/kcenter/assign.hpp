#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kcenter/dataset.hpp"

namespace kcenter {

class WorkerPool;

/// Exclusion masks are 64-bit, which caps the supported cluster count.
inline constexpr std::size_t kMaxClusters = 64;

/// Representatives kept per cluster for sample-based distance scans: the
/// first assigned sample plus up to nine more.
inline constexpr std::size_t kRepCap = 10;

/// Tri-state cluster membership knowledge per sample. Exclusions only grow
/// within a node's lifetime and are inherited by child nodes; a sample with
/// K-1 exclusions is assigned to the remaining cluster, and an assigned
/// sample's own cluster never appears in its mask.
struct AssignmentState {
    std::uint32_t k = 0;
    std::vector<std::int32_t> assigned;            // per sample; -1 = unknown
    std::vector<std::uint64_t> excluded;           // per sample cluster bitmask
    std::vector<std::vector<std::uint32_t>> reps;  // per cluster, capped at kRepCap
    std::vector<std::uint32_t> cluster_count;      // assigned samples per cluster

    static AssignmentState make(std::size_t n_samples, std::size_t k);

    bool all_clusters_touched() const;
    bool is_assigned(std::size_t s) const { return assigned[s] >= 0; }
    std::size_t n_assigned() const;

    /// Marks s as a member of `cluster` and records it as a rep if there is room.
    void assign_sample(std::size_t s, std::size_t cluster);

    /// Adds exclusion bits for an unassigned sample; assigns when exactly one
    /// cluster remains. Returns true when every cluster got excluded, which
    /// proves the node infeasible for solutions within the incumbent bound.
    bool exclude(std::size_t s, std::uint64_t cluster_bits);
};

/// K samples whose pairwise squared distances all exceed 4*alpha, found by a
/// farthest first traversal from sample 0; such samples provably sit in K
/// distinct clusters. Absence is a normal outcome.
std::optional<std::vector<std::size_t>> find_initial_seeds(const Dataset& d, std::size_t k,
                                                           double alpha,
                                                           WorkerPool* pool = nullptr);

struct CenterAssignResult {
    bool prune = false;              // some sample excluded every cluster
    std::size_t newly_assigned = 0;
};

/// Center-based rule: a cluster whose box lies farther than alpha (squared)
/// from a sample cannot contain it. betas is the S x K matrix from
/// sample_cluster_betas for the node's current region. Also flags the node
/// prunable when an already-assigned sample contradicts its own cluster.
CenterAssignResult center_based_assign(AssignmentState& st, const std::vector<double>& betas,
                                       double alpha, WorkerPool* pool = nullptr);

/// Sample-based rule: an unassigned sample farther than 4*alpha (squared)
/// from a rep of cluster k cannot share that cluster. Runs only when every
/// cluster has at least one assigned sample; otherwise a no-op. When far_out
/// is given, bit k of far_out[s] is set whenever some rep of cluster k lies
/// farther than alpha (squared) from s — the upper-bound redundancy signal,
/// computed in the same scan.
std::size_t sample_based_assign(AssignmentState& st, const Dataset& d, double alpha,
                                std::vector<std::uint64_t>* far_out = nullptr,
                                WorkerPool* pool = nullptr);

}  // namespace kcenter
