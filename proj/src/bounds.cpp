#include "kcenter/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "kcenter/parallel.hpp"

namespace kcenter {

namespace {

void check_dims(std::size_t xd, std::size_t bd) {
    if (xd != bd) throw std::invalid_argument("dimension mismatch between point and box");
}

// min over centers of the squared distance from sample s; attribute order is
// fixed so results are bitwise reproducible.
double nearest_center_sqdist(const double* x, std::span<const double* const> centers,
                             std::size_t n_attrs) {
    double best = std::numeric_limits<double>::infinity();
    for (const double* c : centers) {
        double sq = 0.0;
        for (std::size_t a = 0; a < n_attrs; ++a) {
            const double diff = x[a] - c[a];
            sq += diff * diff;
        }
        best = std::min(best, sq);
    }
    return best;
}

}  // namespace

double min_sqdist_to_box(std::span<const double> x, const Box& b) {
    check_dims(x.size(), b.dim());
    double sq = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) {
        double diff = 0.0;
        if (x[a] < b.lo[a]) {
            diff = b.lo[a] - x[a];
        } else if (x[a] > b.hi[a]) {
            diff = x[a] - b.hi[a];
        }
        sq += diff * diff;
    }
    return sq;
}

double max_sqdist_to_box(std::span<const double> x, const Box& b) {
    check_dims(x.size(), b.dim());
    double sq = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) {
        const double dlo = x[a] - b.lo[a];
        const double dhi = b.hi[a] - x[a];
        const double diff = std::abs(dlo) > std::abs(dhi) ? dlo : dhi;
        sq += diff * diff;
    }
    return sq;
}

double sample_lower_bound(std::span<const double> x, const CenterRegion& m) {
    double best = std::numeric_limits<double>::infinity();
    for (const Box& b : m.boxes) best = std::min(best, min_sqdist_to_box(x, b));
    return best;
}

double node_lower_bound(const Dataset& d, const CenterRegion& m, const std::uint8_t* active,
                        WorkerPool* pool) {
    const std::size_t S = d.n_samples();
    const std::size_t W = pool ? pool->worker_count() : 1;
    std::vector<double> partial(W, -1.0);

    auto work = [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        double worst = -1.0;
        for (std::size_t s = begin; s < end; ++s) {
            if (active && !active[s]) continue;
            worst = std::max(worst, sample_lower_bound(d.row(s), m));
        }
        partial[chunk] = worst;
    };
    if (pool) {
        pool->run_chunks(S, work);
    } else {
        work(0, 0, S);
    }

    double worst = -1.0;
    for (double p : partial) worst = std::max(worst, p);
    if (worst < 0.0) throw std::invalid_argument("node_lower_bound: empty active sample set");
    return worst;
}

void sample_cluster_betas(const Dataset& d, const CenterRegion& m, std::vector<double>& out,
                          WorkerPool* pool) {
    const std::size_t S = d.n_samples();
    const std::size_t K = m.k();
    out.resize(S * K);
    auto work = [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            const auto x = d.row(s);
            for (std::size_t k = 0; k < K; ++k) {
                out[s * K + k] = min_sqdist_to_box(x, m.boxes[k]);
            }
        }
    };
    if (pool) {
        pool->run_chunks(S, work);
    } else {
        work(0, 0, S);
    }
}

double evaluate_assignment(const Dataset& d, std::span<const double* const> centers,
                           WorkerPool* pool) {
    if (centers.empty()) throw std::invalid_argument("evaluate_assignment: no centers");
    const std::size_t S = d.n_samples();
    const std::size_t W = pool ? pool->worker_count() : 1;
    std::vector<double> partial(W, 0.0);

    auto work = [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        double worst = 0.0;
        for (std::size_t s = begin; s < end; ++s) {
            worst = std::max(worst, nearest_center_sqdist(d.row_ptr(s), centers, d.n_attrs()));
        }
        partial[chunk] = worst;
    };
    if (pool) {
        pool->run_chunks(S, work);
    } else {
        work(0, 0, S);
    }

    double worst = 0.0;
    for (double p : partial) worst = std::max(worst, p);
    return worst;
}

double evaluate_assignment(const Dataset& d, const std::vector<std::vector<double>>& centers,
                           WorkerPool* pool) {
    std::vector<const double*> ptrs;
    ptrs.reserve(centers.size());
    for (const auto& c : centers) {
        if (c.size() != d.n_attrs()) {
            throw std::invalid_argument("evaluate_assignment: center dimension mismatch");
        }
        ptrs.push_back(c.data());
    }
    return evaluate_assignment(d, std::span<const double* const>(ptrs), pool);
}

double evaluate_assignment_indices(const Dataset& d, std::span<const std::size_t> center_indices,
                                   WorkerPool* pool) {
    std::vector<const double*> ptrs;
    ptrs.reserve(center_indices.size());
    for (std::size_t idx : center_indices) ptrs.push_back(d.row_ptr(idx));
    return evaluate_assignment(d, std::span<const double* const>(ptrs), pool);
}

std::optional<std::vector<std::size_t>> candidate_centers(const Dataset& d, const CenterRegion& m,
                                                          WorkerPool* pool) {
    const std::size_t S = d.n_samples();
    const std::size_t K = m.k();
    const std::size_t A = d.n_attrs();
    const std::size_t W = pool ? pool->worker_count() : 1;

    std::vector<double> mid(K * A);
    for (std::size_t k = 0; k < K; ++k) {
        if (m.boxes[k].is_empty_marker()) return std::nullopt;
        for (std::size_t a = 0; a < A; ++a) mid[k * A + a] = m.boxes[k].midpoint(a);
    }

    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<double> best_dist(W * K, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> best_idx(W * K, kNone);

    auto work = [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        double* dist = best_dist.data() + chunk * K;
        std::size_t* idx = best_idx.data() + chunk * K;
        for (std::size_t s = begin; s < end; ++s) {
            const double* x = d.row_ptr(s);
            for (std::size_t k = 0; k < K; ++k) {
                if (!m.boxes[k].contains(x)) continue;
                double sq = 0.0;
                const double* c = mid.data() + k * A;
                for (std::size_t a = 0; a < A; ++a) {
                    const double diff = x[a] - c[a];
                    sq += diff * diff;
                }
                // strict improvement keeps the lowest index on ties
                if (sq < dist[k]) {
                    dist[k] = sq;
                    idx[k] = s;
                }
            }
        }
    };
    if (pool) {
        pool->run_chunks(S, work);
    } else {
        work(0, 0, S);
    }

    std::vector<std::size_t> result(K);
    for (std::size_t k = 0; k < K; ++k) {
        double dist = std::numeric_limits<double>::infinity();
        std::size_t idx = kNone;
        for (std::size_t w = 0; w < W; ++w) {
            const double dw = best_dist[w * K + k];
            const std::size_t iw = best_idx[w * K + k];
            if (iw == kNone) continue;
            if (dw < dist || (dw == dist && iw < idx)) {
                dist = dw;
                idx = iw;
            }
        }
        if (idx == kNone) return std::nullopt;  // empty X ∩ M^k: infeasible node
        result[k] = idx;
    }
    return result;
}

}  // namespace kcenter
