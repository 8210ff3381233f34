#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "kcenter/assign.hpp"
#include "kcenter/dataset.hpp"
#include "kcenter/reduce.hpp"

namespace kcenter {

struct SolverConfig {
    double epsilon_rel = 0.001;  // stop when (UB - LB) <= epsilon_rel * UB
    double time_limit_s = std::numeric_limits<double>::infinity();
    std::size_t i_sr = 10;            // sample reduction every i_sr iterations
    std::size_t ball_threshold = 50;  // ball-based BT cap
    std::size_t fft_trials = 1;       // multistart trials for the root upper bound
    bool enable_bt = true;            // assigned-sample bounds tightening
    bool enable_assign = true;        // seeds + center/sample-based assignment
    bool enable_reduce = true;        // redundancy flags + sample reduction
    bool enable_symmetry = true;      // symmetry chain when no seeds were found
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    std::size_t max_open_nodes = 4'000'000;  // hard error beyond this
};

enum class Termination { gap, queue_empty, time_limit };

std::string to_string(Termination t);

struct TraceRow {
    std::size_t iter = 0;
    double beta = 0.0;   // best global lower bound
    double alpha = 0.0;  // incumbent upper bound
    std::size_t open_nodes = 0;
    std::size_t samples_active = 0;
};

using TraceSink = std::function<void(const TraceRow&)>;

struct SolveReport {
    double ub = std::numeric_limits<double>::infinity();
    double lb = 0.0;
    double gap_pct = 100.0;
    std::vector<std::size_t> incumbent;  // original sample indices, one per cluster
    std::size_t nodes = 0;               // processed iterations
    double wall_time_s = 0.0;
    Termination termination = Termination::queue_empty;
    std::size_t n_samples = 0;
    std::size_t n_attrs = 0;
    std::size_t k = 0;
    std::size_t samples_remaining = 0;  // working set size after reduction
    bool seeds_found = false;
};

/// (UB - LB) / UB * 100, clamped to [0, 100]; zero when UB is zero or LB has
/// caught up.
double gap_pct(double ub, double lb);

struct Node {
    CenterRegion region;
    double lb = 0.0;
    std::uint64_t id = 0;
    std::uint32_t depth = 0;
    std::shared_ptr<AssignmentState> state;
    std::shared_ptr<RedundancyFlags> flags;
};

/// Min-heap on (lb, id); iterable so reduction and eager pruning can touch
/// every open node.
class NodeQueue {
public:
    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    void push(Node n);
    Node pop_min();
    const Node& peek_min() const;
    double min_lb() const { return peek_min().lb; }
    std::vector<Node>& raw() { return heap_; }

    /// Removes every node with lb >= alpha, restoring the heap.
    void prune_dominated(double alpha);

private:
    std::vector<Node> heap_;
};

class WorkerPool;

struct BoundOutcome {
    std::vector<Node> survivors;          // lb filled; ids still unset
    bool incumbent_updated = false;
    std::vector<std::size_t> incumbent;   // working-set indices when updated
};

/// Bounds freshly branched children: drops those whose region lost every
/// candidate sample, computes their lower bounds (over the active samples),
/// folds each child's midpoint-candidate evaluation into the incumbent, and
/// finally discards children with lb >= alpha.
BoundOutcome node_bound_and_prune(const Dataset& d, std::vector<Node> children, double& alpha,
                                  const std::uint8_t* active = nullptr,
                                  WorkerPool* pool = nullptr);

/// Selects the branching coordinate: the (cluster, attribute) pair with the
/// largest range, ties to the lowest pair. Requires a positive range.
std::pair<std::size_t, std::size_t> branching_coordinate(const CenterRegion& m);

/// Splits the max-range coordinate at its midpoint; the children cover the
/// parent and overlap only on the split hyperplane. Throws on a terminal
/// (zero-range) region.
std::pair<CenterRegion, CenterRegion> branch(const CenterRegion& m);

SolveReport solve(const Dataset& d, std::size_t k, const SolverConfig& cfg,
                  const TraceSink& trace = nullptr);

}  // namespace kcenter
