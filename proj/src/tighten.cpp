#include "kcenter/tighten.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kcenter/parallel.hpp"

namespace kcenter {

namespace {

double pair_sqdist(const Dataset& d, std::size_t i, std::size_t j) {
    double sq = 0.0;
    const double* a = d.row_ptr(i);
    const double* b = d.row_ptr(j);
    for (std::size_t t = 0; t < d.n_attrs(); ++t) {
        const double diff = a[t] - b[t];
        sq += diff * diff;
    }
    return sq;
}

struct Extent {
    std::vector<double> lo, hi;
    std::size_t count = 0;
};

// Bounding box of the samples inside `box` that pass `keep`; chunk partials
// merge with min/max so the result is worker-count independent.
template <typename Keep>
Extent bounding_extent(const Dataset& d, const Box& box, WorkerPool* pool, Keep keep) {
    const std::size_t S = d.n_samples();
    const std::size_t A = d.n_attrs();
    const std::size_t W = pool ? pool->worker_count() : 1;

    std::vector<double> lo(W * A, std::numeric_limits<double>::infinity());
    std::vector<double> hi(W * A, -std::numeric_limits<double>::infinity());
    std::vector<std::size_t> cnt(W, 0);

    auto work = [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        double* clo = lo.data() + chunk * A;
        double* chi = hi.data() + chunk * A;
        for (std::size_t s = begin; s < end; ++s) {
            const double* x = d.row_ptr(s);
            if (!box.contains(x)) continue;
            if (!keep(s)) continue;
            ++cnt[chunk];
            for (std::size_t a = 0; a < A; ++a) {
                clo[a] = std::min(clo[a], x[a]);
                chi[a] = std::max(chi[a], x[a]);
            }
        }
    };
    if (pool) {
        pool->run_chunks(S, work);
    } else {
        work(0, 0, S);
    }

    Extent e;
    e.lo.assign(A, std::numeric_limits<double>::infinity());
    e.hi.assign(A, -std::numeric_limits<double>::infinity());
    for (std::size_t w = 0; w < W; ++w) {
        e.count += cnt[w];
        for (std::size_t a = 0; a < A; ++a) {
            e.lo[a] = std::min(e.lo[a], lo[w * A + a]);
            e.hi[a] = std::max(e.hi[a], hi[w * A + a]);
        }
    }
    return e;
}

Box extent_to_box(const Extent& e, std::size_t dims) {
    if (e.count == 0) return Box::empty_marker(dims);
    Box b;
    b.lo = e.lo;
    b.hi = e.hi;
    return b;
}

}  // namespace

Box ball_bt(const Dataset& d, const Box& box, std::span<const std::uint32_t> assigned,
            double alpha, std::size_t max_balls, WorkerPool* pool) {
    if (box.is_empty_marker()) return Box::empty_marker(box.dim());
    const std::size_t n_balls = std::min(assigned.size(), max_balls);
    auto keep = [&](std::size_t s) {
        for (std::size_t j = 0; j < n_balls; ++j) {
            if (pair_sqdist(d, s, assigned[j]) > alpha) return false;
        }
        return true;
    };
    return extent_to_box(bounding_extent(d, box, pool, keep), box.dim());
}

Box box_bt(const Box& box, std::span<const double* const> assigned_points, double alpha) {
    if (box.is_empty_marker()) return Box::empty_marker(box.dim());
    const double r = std::sqrt(alpha);
    Box out = box;
    for (const double* p : assigned_points) {
        for (std::size_t a = 0; a < out.dim(); ++a) {
            out.lo[a] = std::max(out.lo[a], p[a] - r);
            out.hi[a] = std::min(out.hi[a], p[a] + r);
            if (out.lo[a] > out.hi[a]) return Box::empty_marker(box.dim());
        }
    }
    return out;
}

std::pair<Box, std::size_t> centers_on_samples_bt(const Dataset& d, const Box& box,
                                                  WorkerPool* pool) {
    if (box.is_empty_marker()) return {Box::empty_marker(box.dim()), 0};
    const Extent e = bounding_extent(d, box, pool, [](std::size_t) { return true; });
    return {extent_to_box(e, box.dim()), e.count};
}

CenterRegion symmetry_break(const CenterRegion& m) {
    CenterRegion out = m;
    const std::size_t K = out.k();
    if (K < 2 || out.dim() == 0) return out;
    for (std::size_t k = 1; k < K; ++k) {
        out.boxes[k].lo[0] = std::max(out.boxes[k].lo[0], out.boxes[k - 1].lo[0]);
    }
    for (std::size_t k = K - 1; k-- > 0;) {
        out.boxes[k].hi[0] = std::min(out.boxes[k].hi[0], out.boxes[k + 1].hi[0]);
    }
    for (std::size_t k = 0; k < K; ++k) {
        if (out.boxes[k].lo[0] > out.boxes[k].hi[0]) {
            out.boxes[k] = Box::empty_marker(out.boxes[k].dim());
        }
    }
    return out;
}

TightenOutcome tighten_node(const Dataset& d, const CenterRegion& m, const AssignmentState& st,
                            double alpha, const TightenConfig& cfg, WorkerPool* pool) {
    const std::size_t K = m.k();
    TightenOutcome out;
    out.region.boxes.resize(K);
    out.counts.assign(K, 0);

    // Assigned indices per cluster in ascending sample order.
    std::vector<std::vector<std::uint32_t>> assigned_by_cluster(K);
    if (cfg.ball_box) {
        for (std::size_t s = 0; s < st.assigned.size(); ++s) {
            if (st.assigned[s] >= 0) {
                assigned_by_cluster[st.assigned[s]].push_back(static_cast<std::uint32_t>(s));
            }
        }
    }

    for (std::size_t k = 0; k < K; ++k) {
        Box b = m.boxes[k];
        if (cfg.ball_box && !assigned_by_cluster[k].empty()) {
            const auto& members = assigned_by_cluster[k];
            if (members.size() <= cfg.ball_threshold) {
                b = ball_bt(d, b, members, alpha, cfg.ball_threshold, pool);
            } else {
                std::vector<const double*> pts;
                pts.reserve(members.size());
                for (std::uint32_t s : members) pts.push_back(d.row_ptr(s));
                b = box_bt(b, pts, alpha);
            }
        }
        auto [shrunk, count] = centers_on_samples_bt(d, b, pool);
        out.region.boxes[k] = std::move(shrunk);
        out.counts[k] = count;
        if (count == 0) {
            out.infeasible = true;
            return out;
        }
    }

    if (cfg.symmetry) {
        CenterRegion chained = symmetry_break(out.region);
        for (std::size_t k = 0; k < K; ++k) {
            if (!(chained.boxes[k] == out.region.boxes[k])) {
                auto [shrunk, count] = centers_on_samples_bt(d, chained.boxes[k], pool);
                out.region.boxes[k] = std::move(shrunk);
                out.counts[k] = count;
                if (count == 0) {
                    out.infeasible = true;
                    return out;
                }
            }
        }
    }
    return out;
}

}  // namespace kcenter
