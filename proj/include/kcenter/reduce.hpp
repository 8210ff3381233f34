#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kcenter/assign.hpp"
#include "kcenter/dataset.hpp"

namespace kcenter {

/// Per-node redundancy knowledge; once set, a flag stays set in every
/// descendant node.
struct RedundancyFlags {
    std::vector<std::uint8_t> lb;  // never the bound-defining sample again
    std::vector<std::uint8_t> ub;  // never a candidate center again

    static RedundancyFlags make(std::size_t n_samples);
};

/// min over clusters of max_sqdist_to_box: the best worst-case distance a
/// sample can achieve against the region.
double best_max_sqdist(std::span<const double> x, const CenterRegion& m);

/// A sample whose best worst-case distance stays below the current global
/// lower bound can never define a node's lower bound again.
bool lb_redundant(std::span<const double> x, const CenterRegion& m, double beta_best);

/// A sample that is outside every cluster box, or farther than alpha
/// (squared) from an assigned sample of every cluster containing it, cannot
/// be a center anywhere in the region.
bool ub_redundant(std::size_t j, const Dataset& d, const CenterRegion& m,
                  const AssignmentState& st, double alpha);

/// Intersection semantics of the reduction step: sample s is removable only
/// when flagged both lb- and ub-redundant in every node.
std::vector<std::uint8_t> removal_mask(std::span<const RedundancyFlags* const> node_flags,
                                       std::size_t n_samples);

}  // namespace kcenter
