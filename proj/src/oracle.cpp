#include "kcenter/oracle.hpp"

#include <limits>
#include <stdexcept>

namespace kcenter {

std::uint64_t subset_count(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t c = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        const std::uint64_t num = n - k + i;
        if (c > std::numeric_limits<std::uint64_t>::max() / num) {
            return std::numeric_limits<std::uint64_t>::max();  // saturate
        }
        c = c * num / i;  // exact: c * num is divisible by i at this point
    }
    return c;
}

OracleResult brute_force(const Dataset& d, std::size_t k, std::uint64_t limit) {
    const std::size_t S = d.n_samples();
    const std::size_t A = d.n_attrs();
    if (k < 1 || k > S) throw std::invalid_argument("brute_force: need 1 <= k <= n_samples");
    if (subset_count(S, k) > limit) {
        throw std::runtime_error("brute_force: combinatorial budget exceeded");
    }

    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;

    OracleResult best;
    best.opt_value = std::numeric_limits<double>::infinity();

    while (true) {
        // objective of the current subset; bail out once it cannot strictly
        // beat the best (first optimum wins, so enumeration order is the tie
        // rule and it is lexicographic)
        double worst = 0.0;
        for (std::size_t s = 0; s < S && worst < best.opt_value; ++s) {
            const double* x = d.row_ptr(s);
            double nearest = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                const double* y = d.row_ptr(pick[c]);
                double sq = 0.0;
                for (std::size_t a = 0; a < A; ++a) {
                    const double diff = x[a] - y[a];
                    sq += diff * diff;
                }
                nearest = std::min(nearest, sq);
            }
            worst = std::max(worst, nearest);
        }
        if (worst < best.opt_value) {
            best.opt_value = worst;
            best.opt_centers = pick;
        }

        // next lexicographic k-combination
        std::size_t i = k - 1;
        while (pick[i] == S - k + i) {
            if (i == 0) return best;
            --i;
        }
        ++pick[i];
        for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

}  // namespace kcenter
