#include "kcenter/heuristic.hpp"

#include <limits>
#include <stdexcept>

#include "kcenter/bounds.hpp"
#include "kcenter/parallel.hpp"
#include "kcenter/rng.hpp"

namespace kcenter {

CenterSet fft(const Dataset& d, std::size_t k, std::size_t start, WorkerPool* pool) {
    const std::size_t S = d.n_samples();
    if (k < 1 || k > S) throw std::invalid_argument("fft: need 1 <= k <= n_samples");
    if (start >= S) throw std::invalid_argument("fft: start index out of range");

    const std::size_t W = pool ? pool->worker_count() : 1;
    CenterSet out;
    out.indices.reserve(k);
    out.indices.push_back(start);

    std::vector<double> mind(S);        // squared distance to the chosen set
    std::vector<std::uint8_t> chosen(S, 0);
    chosen[start] = 1;
    {
        const double* c = d.row_ptr(start);
        for (std::size_t s = 0; s < S; ++s) {
            double sq = 0.0;
            const double* x = d.row_ptr(s);
            for (std::size_t a = 0; a < d.n_attrs(); ++a) {
                const double diff = x[a] - c[a];
                sq += diff * diff;
            }
            mind[s] = sq;
        }
    }

    std::vector<double> best_val(W);
    std::vector<std::size_t> best_idx(W);
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    while (out.indices.size() < k) {
        auto work = [&](std::size_t chunk, std::size_t begin, std::size_t end) {
            double val = -1.0;
            std::size_t idx = kNone;
            for (std::size_t s = begin; s < end; ++s) {
                if (chosen[s]) continue;
                if (mind[s] > val) {  // strict: lowest index wins ties
                    val = mind[s];
                    idx = s;
                }
            }
            best_val[chunk] = val;
            best_idx[chunk] = idx;
        };
        best_val.assign(W, -1.0);
        best_idx.assign(W, kNone);
        if (pool) {
            pool->run_chunks(S, work);
        } else {
            work(0, 0, S);
        }
        double val = -1.0;
        std::size_t next = kNone;
        for (std::size_t w = 0; w < W; ++w) {
            if (best_idx[w] == kNone) continue;
            if (best_val[w] > val || (best_val[w] == val && best_idx[w] < next)) {
                val = best_val[w];
                next = best_idx[w];
            }
        }
        out.indices.push_back(next);
        chosen[next] = 1;
        const double* c = d.row_ptr(next);
        for (std::size_t s = 0; s < S; ++s) {
            double sq = 0.0;
            const double* x = d.row_ptr(s);
            for (std::size_t a = 0; a < d.n_attrs(); ++a) {
                const double diff = x[a] - c[a];
                sq += diff * diff;
            }
            if (sq < mind[s]) mind[s] = sq;
        }
    }
    return out;
}

FftResult fft_multistart(const Dataset& d, std::size_t k, std::size_t trials, std::uint64_t seed,
                         WorkerPool* pool) {
    if (trials < 1) throw std::invalid_argument("fft_multistart: trials must be positive");
    Rng rng(seed);
    FftResult best;
    best.objective = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t start = rng.uniform_index(d.n_samples());
        CenterSet cs = fft(d, k, start, pool);
        const double obj = evaluate_assignment_indices(d, cs.indices, pool);
        if (obj < best.objective) {  // first trial wins ties
            best.objective = obj;
            best.centers = std::move(cs);
        }
    }
    return best;
}

}  // namespace kcenter
