#include "kcenter/assign.hpp"

#include <bit>
#include <stdexcept>

#include "kcenter/heuristic.hpp"
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

}  // namespace

AssignmentState AssignmentState::make(std::size_t n_samples, std::size_t k) {
    if (k > kMaxClusters) throw std::invalid_argument("cluster count exceeds the 64-bit mask");
    AssignmentState st;
    st.k = static_cast<std::uint32_t>(k);
    st.assigned.assign(n_samples, -1);
    st.excluded.assign(n_samples, 0);
    st.reps.assign(k, {});
    st.cluster_count.assign(k, 0);
    return st;
}

bool AssignmentState::all_clusters_touched() const {
    for (std::uint32_t c : cluster_count) {
        if (c == 0) return false;
    }
    return true;
}

std::size_t AssignmentState::n_assigned() const {
    std::size_t n = 0;
    for (std::int32_t a : assigned) n += a >= 0;
    return n;
}

void AssignmentState::assign_sample(std::size_t s, std::size_t cluster) {
    assigned[s] = static_cast<std::int32_t>(cluster);
    excluded[s] &= ~(std::uint64_t{1} << cluster);
    ++cluster_count[cluster];
    if (reps[cluster].size() < kRepCap) reps[cluster].push_back(static_cast<std::uint32_t>(s));
}

bool AssignmentState::exclude(std::size_t s, std::uint64_t cluster_bits) {
    if (is_assigned(s)) return false;
    excluded[s] |= cluster_bits;
    const std::uint64_t all = (k == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
    const std::uint64_t mask = excluded[s] & all;
    if (mask == all) return true;
    if (std::popcount(mask) == static_cast<int>(k) - 1) {
        const std::size_t remaining = std::countr_one(mask);  // lowest zero bit
        assign_sample(s, remaining);
    }
    return false;
}

std::optional<std::vector<std::size_t>> find_initial_seeds(const Dataset& d, std::size_t k,
                                                           double alpha, WorkerPool* pool) {
    if (k < 1 || k > d.n_samples()) return std::nullopt;
    CenterSet cs = fft(d, k, 0, pool);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (!(pair_sqdist(d, cs.indices[i], cs.indices[j]) > 4.0 * alpha)) {
                return std::nullopt;
            }
        }
    }
    return cs.indices;  // discovery order: seed i belongs to cluster i
}

CenterAssignResult center_based_assign(AssignmentState& st, const std::vector<double>& betas,
                                       double alpha, WorkerPool* pool) {
    const std::size_t K = st.k;
    const std::size_t S = st.assigned.size();
    const std::size_t W = pool ? pool->worker_count() : 1;

    // Per-sample new exclusion bits; slots are disjoint across chunks, so the
    // parallel pass is deterministic. Assignment happens in a serial pass to
    // keep rep insertion order independent of the worker count.
    std::vector<std::uint64_t> fresh(S, 0);
    std::vector<std::uint8_t> contradiction(W, 0);

    auto scan = [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            const double* row = betas.data() + s * K;
            if (st.is_assigned(s)) {
                // own cluster unreachable within alpha: nothing in this region
                // beats the incumbent
                if (row[st.assigned[s]] > alpha) contradiction[chunk] = 1;
                continue;
            }
            std::uint64_t bits = 0;
            for (std::size_t c = 0; c < K; ++c) {
                if (row[c] > alpha) bits |= std::uint64_t{1} << c;
            }
            bits &= ~st.excluded[s];
            fresh[s] = bits;
        }
    };
    if (pool) {
        pool->run_chunks(S, scan);
    } else {
        scan(0, 0, S);
    }

    CenterAssignResult res;
    for (std::uint8_t c : contradiction) res.prune |= c != 0;
    for (std::size_t s = 0; s < S; ++s) {
        if (fresh[s] == 0) {
            // K = 1 needs no exclusions: a sample within alpha of the single
            // box is a member outright
            if (K == 1 && !st.is_assigned(s)) {
                st.assign_sample(s, 0);
                ++res.newly_assigned;
            }
            continue;
        }
        const bool was_assigned = st.is_assigned(s);
        if (st.exclude(s, fresh[s])) res.prune = true;
        if (!was_assigned && st.is_assigned(s)) ++res.newly_assigned;
    }
    return res;
}

std::size_t sample_based_assign(AssignmentState& st, const Dataset& d, double alpha,
                                std::vector<std::uint64_t>* far_out, WorkerPool* pool) {
    const std::size_t S = d.n_samples();
    const std::size_t K = st.k;
    if (far_out) far_out->assign(S, 0);
    if (!st.all_clusters_touched()) return 0;  // prerequisite unmet: no-op

    // Snapshot reps so the scan is independent of this round's assignments.
    const std::vector<std::vector<std::uint32_t>> reps = st.reps;
    std::vector<std::uint64_t> fresh(S, 0);

    auto scan = [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            std::uint64_t exclude_bits = 0;
            std::uint64_t far_bits = 0;
            for (std::size_t c = 0; c < K; ++c) {
                bool far4 = false;
                bool far1 = false;
                for (std::uint32_t r : reps[c]) {
                    if (r == s) {
                        far4 = far1 = false;
                        break;  // a sample never excludes itself
                    }
                    const double sq = pair_sqdist(d, s, r);
                    far1 |= sq > alpha;
                    if (sq > 4.0 * alpha) {
                        far4 = true;
                        break;
                    }
                }
                if (far4) exclude_bits |= std::uint64_t{1} << c;
                if (far1 || far4) far_bits |= std::uint64_t{1} << c;
            }
            if (far_out) (*far_out)[s] = far_bits;
            if (!st.is_assigned(s)) fresh[s] = exclude_bits & ~st.excluded[s];
        }
    };
    if (pool) {
        pool->run_chunks(S, scan);
    } else {
        scan(0, 0, S);
    }

    std::size_t newly = 0;
    for (std::size_t s = 0; s < S; ++s) {
        if (fresh[s] == 0) continue;
        const bool was_assigned = st.is_assigned(s);
        st.exclude(s, fresh[s]);
        if (!was_assigned && st.is_assigned(s)) ++newly;
    }
    return newly;
}

}  // namespace kcenter
