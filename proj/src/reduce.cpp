#include "kcenter/reduce.hpp"

#include <cmath>
#include <limits>

namespace kcenter {

RedundancyFlags RedundancyFlags::make(std::size_t n_samples) {
    RedundancyFlags f;
    f.lb.assign(n_samples, 0);
    f.ub.assign(n_samples, 0);
    return f;
}

double best_max_sqdist(std::span<const double> x, const CenterRegion& m) {
    double best = std::numeric_limits<double>::infinity();
    for (const Box& b : m.boxes) {
        double sq = 0.0;
        for (std::size_t a = 0; a < x.size(); ++a) {
            const double dlo = x[a] - b.lo[a];
            const double dhi = b.hi[a] - x[a];
            const double diff = std::abs(dlo) > std::abs(dhi) ? dlo : dhi;
            sq += diff * diff;
        }
        best = std::min(best, sq);
    }
    return best;
}

bool lb_redundant(std::span<const double> x, const CenterRegion& m, double beta_best) {
    return best_max_sqdist(x, m) < beta_best;
}

bool ub_redundant(std::size_t j, const Dataset& d, const CenterRegion& m,
                  const AssignmentState& st, double alpha) {
    const double* x = d.row_ptr(j);
    for (std::size_t k = 0; k < m.k(); ++k) {
        if (!m.boxes[k].contains(x)) continue;
        bool excluded_by_member = false;
        for (std::uint32_t r : st.reps[k]) {
            if (r == j) continue;
            double sq = 0.0;
            const double* y = d.row_ptr(r);
            for (std::size_t a = 0; a < d.n_attrs(); ++a) {
                const double diff = x[a] - y[a];
                sq += diff * diff;
            }
            if (sq > alpha) {
                excluded_by_member = true;
                break;
            }
        }
        if (!excluded_by_member) return false;  // still a viable center for cluster k
    }
    return true;
}

std::vector<std::uint8_t> removal_mask(std::span<const RedundancyFlags* const> node_flags,
                                       std::size_t n_samples) {
    std::vector<std::uint8_t> removable(n_samples, node_flags.empty() ? 0 : 1);
    for (const RedundancyFlags* f : node_flags) {
        for (std::size_t s = 0; s < n_samples; ++s) {
            removable[s] &= f->lb[s] && f->ub[s];
        }
    }
    return removable;
}

}  // namespace kcenter
