#pragma once

#include <cstdint>
#include <vector>

#include "kcenter/dataset.hpp"

namespace kcenter {

class WorkerPool;

/// K distinct sample indices, in the order the traversal picked them.
struct CenterSet {
    std::vector<std::size_t> indices;
};

/// Farthest first traversal: start with `start`, then repeatedly add the
/// sample maximizing the distance to the chosen set (argmax ties to the
/// lowest index). Guarantees a 2-approximation in metric distance.
CenterSet fft(const Dataset& d, std::size_t k, std::size_t start, WorkerPool* pool = nullptr);

struct FftResult {
    CenterSet centers;
    double objective = 0.0;  // evaluate_assignment of the best trial
};

/// Runs fft from `trials` seeded-random starts and keeps the set with the
/// smallest objective; earlier trials win ties. Start draws are sequential,
/// so a longer run extends a shorter one with the same seed.
FftResult fft_multistart(const Dataset& d, std::size_t k, std::size_t trials, std::uint64_t seed,
                         WorkerPool* pool = nullptr);

}  // namespace kcenter
