#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "kcenter/assign.hpp"
#include "kcenter/dataset.hpp"

namespace kcenter {

class WorkerPool;

struct TightenConfig {
    std::size_t ball_threshold = 50;  // ball-based BT up to this many assigned samples
    bool ball_box = true;             // assigned-sample tightening (ball or box form)
    bool symmetry = false;            // first-attribute ordering chain
};

struct TightenOutcome {
    CenterRegion region;
    std::vector<std::size_t> counts;  // |X ∩ M^k| per cluster
    bool infeasible = false;          // some cluster has no candidate sample
};

/// Smallest box containing the samples of X ∩ box compatible with every ball
/// B_alpha(x_j) of the first min(|assigned|, max_balls) assigned samples.
/// Empty marker when no sample qualifies.
Box ball_bt(const Dataset& d, const Box& box, std::span<const std::uint32_t> assigned,
            double alpha, std::size_t max_balls, WorkerPool* pool = nullptr);

/// box ∩ ⋂_j [x_j - sqrt(alpha), x_j + sqrt(alpha)]; empty marker when some
/// interval inverts.
Box box_bt(const Box& box, std::span<const double* const> assigned_points, double alpha);

/// Smallest box containing X ∩ box plus the candidate count; count 0 yields
/// the empty marker.
std::pair<Box, std::size_t> centers_on_samples_bt(const Dataset& d, const Box& box,
                                                  WorkerPool* pool = nullptr);

/// Tightens the first-attribute interval chain lo^1 <= lo^2 <= ... forward and
/// hi^K >= hi^{K-1} >= ... backward; boxes become empty markers on inversion.
/// Only sound when cluster labels are otherwise interchangeable.
CenterRegion symmetry_break(const CenterRegion& m);

/// Per cluster: ball_bt when the cluster's assigned count is within
/// cfg.ball_threshold, box_bt over all assigned points otherwise, then the
/// centers-on-samples shrink; finally the symmetry chain when enabled.
TightenOutcome tighten_node(const Dataset& d, const CenterRegion& m, const AssignmentState& st,
                            double alpha, const TightenConfig& cfg, WorkerPool* pool = nullptr);

}  // namespace kcenter
