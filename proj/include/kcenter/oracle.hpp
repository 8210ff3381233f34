#pragma once

#include <cstdint>
#include <vector>

#include "kcenter/dataset.hpp"

namespace kcenter {

struct OracleResult {
    double opt_value = 0.0;
    std::vector<std::size_t> opt_centers;  // lexicographically smallest optimum
};

/// Exhaustive enumeration of every k-subset of sample indices. Ground truth
/// for small instances; never used by the solver itself. Throws when C(S, k)
/// exceeds `limit`.
OracleResult brute_force(const Dataset& d, std::size_t k, std::uint64_t limit = 5'000'000);

/// C(n, k) saturated at 2^64-1; the budget check for brute_force.
std::uint64_t subset_count(std::size_t n, std::size_t k);

}  // namespace kcenter
