#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kcenter/dataset.hpp"

namespace kcenter {

class WorkerPool;

/// Squared distance from x to the nearest point of b; zero iff x is inside.
/// The minimizer clamps each coordinate to [lo_a, hi_a].
double min_sqdist_to_box(std::span<const double> x, const Box& b);

/// Squared distance from x to the farthest corner of b (per attribute, the
/// farther of lo_a and hi_a).
double max_sqdist_to_box(std::span<const double> x, const Box& b);

/// min over clusters of min_sqdist_to_box.
double sample_lower_bound(std::span<const double> x, const CenterRegion& m);

/// max over active samples of sample_lower_bound. `active` is an optional
/// per-sample mask (nonzero = participates); null means all samples. Throws
/// if no sample is active.
double node_lower_bound(const Dataset& d, const CenterRegion& m,
                        const std::uint8_t* active = nullptr, WorkerPool* pool = nullptr);

/// Fills out[s*K + k] with the per-sample per-cluster minimum squared
/// distances; the raw material for node bounds and center-based assignment.
void sample_cluster_betas(const Dataset& d, const CenterRegion& m, std::vector<double>& out,
                          WorkerPool* pool = nullptr);

/// max over samples of min over centers of the squared distance; a valid
/// upper bound whenever the centers are sample points.
double evaluate_assignment(const Dataset& d, std::span<const double* const> centers,
                           WorkerPool* pool = nullptr);
double evaluate_assignment(const Dataset& d, const std::vector<std::vector<double>>& centers,
                           WorkerPool* pool = nullptr);
double evaluate_assignment_indices(const Dataset& d, std::span<const std::size_t> center_indices,
                                   WorkerPool* pool = nullptr);

/// For each cluster, the sample in X ∩ M^k nearest to the box midpoint (ties
/// to the lowest index). nullopt when some cluster's box contains no sample,
/// which marks the node infeasible.
std::optional<std::vector<std::size_t>> candidate_centers(const Dataset& d, const CenterRegion& m,
                                                          WorkerPool* pool = nullptr);

}  // namespace kcenter
