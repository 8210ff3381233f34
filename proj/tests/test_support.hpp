#pragma once

#include <initializer_list>
#include <vector>

#include "kcenter/dataset.hpp"
#include "kcenter/rng.hpp"

namespace kcenter::test {

inline Dataset make_dataset(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<double> values;
    std::size_t attrs = 0;
    for (const auto& r : rows) {
        attrs = r.size();
        values.insert(values.end(), r.begin(), r.end());
    }
    return Dataset(rows.size(), attrs, std::move(values));
}

inline Dataset random_dataset(Rng& rng, std::size_t n, std::size_t attrs, double lo = -10.0,
                              double hi = 10.0) {
    std::vector<double> values(n * attrs);
    for (double& v : values) v = rng.uniform(lo, hi);
    return Dataset(n, attrs, std::move(values));
}

inline Box random_box(Rng& rng, std::size_t attrs, double lo = -10.0, double hi = 10.0) {
    Box b;
    b.lo.resize(attrs);
    b.hi.resize(attrs);
    for (std::size_t a = 0; a < attrs; ++a) {
        const double u = rng.uniform(lo, hi);
        const double v = rng.uniform(lo, hi);
        b.lo[a] = std::min(u, v);
        b.hi[a] = std::max(u, v);
    }
    return b;
}

inline std::vector<double> random_point(Rng& rng, std::size_t attrs, double lo = -10.0,
                                        double hi = 10.0) {
    std::vector<double> x(attrs);
    for (double& v : x) v = rng.uniform(lo, hi);
    return x;
}

/// The four unit-square corners, a fixture several specs reuse.
inline Dataset unit_square_corners() {
    return make_dataset({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
}

/// Iteratively refined per-attribute grid search for the squared distance to
/// the nearest point of a box. Independent of the closed-form kernel; the
/// squared distance is separable, so each attribute refines on its own.
inline double refined_grid_min_sqdist(std::span<const double> x, const Box& b,
                                      std::size_t steps = 17, std::size_t rounds = 20) {
    double total = 0.0;
    for (std::size_t a = 0; a < b.dim(); ++a) {
        double lo = b.lo[a];
        double hi = b.hi[a];
        double best_p = lo;
        for (std::size_t r = 0; r < rounds; ++r) {
            const double step = (hi - lo) / static_cast<double>(steps - 1);
            double best_v = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < steps; ++i) {
                const double p = lo + static_cast<double>(i) * step;
                const double v = (x[a] - p) * (x[a] - p);
                if (v < best_v) {
                    best_v = v;
                    best_p = p;
                }
            }
            if (step == 0.0) break;
            lo = std::max(b.lo[a], best_p - step);
            hi = std::min(b.hi[a], best_p + step);
        }
        const double diff = x[a] - best_p;
        total += diff * diff;
    }
    return total;
}

/// Exhaustive corner enumeration for the farthest point of a box.
inline double corner_enum_max_sqdist(std::span<const double> x, const Box& b) {
    const std::size_t A = b.dim();
    double best = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << A); ++mask) {
        double sq = 0.0;
        for (std::size_t a = 0; a < A; ++a) {
            const double p = (mask >> a) & 1 ? b.hi[a] : b.lo[a];
            const double diff = x[a] - p;
            sq += diff * diff;
        }
        best = std::max(best, sq);
    }
    return best;
}

}  // namespace kcenter::test
