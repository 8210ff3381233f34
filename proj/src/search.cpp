#include "kcenter/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "kcenter/bounds.hpp"
#include "kcenter/heuristic.hpp"
#include "kcenter/parallel.hpp"
#include "kcenter/tighten.hpp"

namespace kcenter {

std::string to_string(Termination t) {
    switch (t) {
        case Termination::gap: return "gap";
        case Termination::queue_empty: return "queue-empty";
        case Termination::time_limit: return "time-limit";
    }
    return "unknown";
}

double gap_pct(double ub, double lb) {
    if (!(ub > 0.0)) return 0.0;  // ub == 0 forces lb == 0
    const double g = (ub - lb) / ub * 100.0;
    return std::clamp(g, 0.0, 100.0);
}

namespace {
// std::*_heap with this comparator keeps the (lb, id) minimum at the front.
bool heap_cmp(const Node& a, const Node& b) {
    return b.lb < a.lb || (b.lb == a.lb && b.id < a.id);
}
}  // namespace

void NodeQueue::push(Node n) {
    heap_.push_back(std::move(n));
    std::push_heap(heap_.begin(), heap_.end(), heap_cmp);
}

Node NodeQueue::pop_min() {
    if (heap_.empty()) throw std::logic_error("pop_min on an empty node queue");
    std::pop_heap(heap_.begin(), heap_.end(), heap_cmp);
    Node n = std::move(heap_.back());
    heap_.pop_back();
    return n;
}

const Node& NodeQueue::peek_min() const {
    if (heap_.empty()) throw std::logic_error("peek_min on an empty node queue");
    return heap_.front();
}

void NodeQueue::prune_dominated(double alpha) {
    auto dead = [alpha](const Node& n) { return n.lb >= alpha; };
    if (std::none_of(heap_.begin(), heap_.end(), dead)) return;
    heap_.erase(std::remove_if(heap_.begin(), heap_.end(), dead), heap_.end());
    std::make_heap(heap_.begin(), heap_.end(), heap_cmp);
}

std::pair<std::size_t, std::size_t> branching_coordinate(const CenterRegion& m) {
    double best = 0.0;
    std::size_t bk = m.k(), ba = 0;
    for (std::size_t k = 0; k < m.k(); ++k) {
        for (std::size_t a = 0; a < m.boxes[k].dim(); ++a) {
            if (m.boxes[k].range(a) > best) {  // strict: lowest (k, a) wins ties
                best = m.boxes[k].range(a);
                bk = k;
                ba = a;
            }
        }
    }
    if (bk == m.k()) throw std::logic_error("branch called on a terminal (zero-range) region");
    return {bk, ba};
}

std::pair<CenterRegion, CenterRegion> branch(const CenterRegion& m) {
    const auto [k, a] = branching_coordinate(m);
    const double lo = m.boxes[k].lo[a];
    const double hi = m.boxes[k].hi[a];
    const double mid = m.boxes[k].midpoint(a);
    CenterRegion left = m;
    CenterRegion right = m;
    if (mid > lo && mid < hi) {
        left.boxes[k].hi[a] = mid;
        right.boxes[k].lo[a] = mid;
    } else {
        // lo and hi are adjacent doubles; no representable interior point
        // exists, so split into the two endpoint slabs.
        left.boxes[k].hi[a] = lo;
        right.boxes[k].lo[a] = hi;
    }
    return {std::move(left), std::move(right)};
}

namespace {

struct Workspace {
    Dataset data;                    // working copy, rows shrink under reduction
    std::vector<std::size_t> orig;   // working row -> original sample id
};

std::shared_ptr<AssignmentState> remap_state(const AssignmentState& old,
                                             const std::vector<std::uint32_t>& new_index,
                                             std::size_t new_s) {
    auto st = std::make_shared<AssignmentState>();
    st->k = old.k;
    st->assigned.resize(new_s);
    st->excluded.resize(new_s);
    st->cluster_count.assign(old.k, 0);
    for (std::size_t s = 0; s < old.assigned.size(); ++s) {
        const std::uint32_t ns = new_index[s];
        if (ns == UINT32_MAX) continue;
        st->assigned[ns] = old.assigned[s];
        st->excluded[ns] = old.excluded[s];
        if (old.assigned[s] >= 0) ++st->cluster_count[old.assigned[s]];
    }
    st->reps.assign(old.k, {});
    for (std::size_t c = 0; c < old.reps.size(); ++c) {
        for (std::uint32_t r : old.reps[c]) {
            if (new_index[r] != UINT32_MAX) st->reps[c].push_back(new_index[r]);
        }
    }
    return st;
}

std::shared_ptr<RedundancyFlags> remap_flags(const RedundancyFlags& old,
                                             const std::vector<std::uint32_t>& new_index,
                                             std::size_t new_s) {
    auto f = std::make_shared<RedundancyFlags>(RedundancyFlags::make(new_s));
    for (std::size_t s = 0; s < old.lb.size(); ++s) {
        const std::uint32_t ns = new_index[s];
        if (ns == UINT32_MAX) continue;
        f->lb[ns] = old.lb[s];
        f->ub[ns] = old.ub[s];
    }
    return f;
}

// Deletes samples flagged lb- and ub-redundant in every open node plus the
// current one, then rewrites all sample-indexed state. Returns removed count.
std::size_t apply_sample_reduction(Workspace& ws, Node& current, NodeQueue& queue,
                                   std::vector<std::size_t>& removed_audit) {
    const std::size_t S = ws.data.n_samples();
    std::vector<const RedundancyFlags*> all;
    all.reserve(queue.size() + 1);
    all.push_back(current.flags.get());
    for (const Node& n : queue.raw()) all.push_back(n.flags.get());
    const std::vector<std::uint8_t> removable = removal_mask(all, S);

    std::size_t removed = 0;
    for (std::uint8_t r : removable) removed += r;
    if (removed == 0 || removed == S) return 0;  // keep at least one sample

    std::vector<std::uint32_t> new_index(S, UINT32_MAX);
    const std::size_t new_s = S - removed;
    std::vector<double> values;
    values.reserve(new_s * ws.data.n_attrs());
    std::vector<std::size_t> orig;
    orig.reserve(new_s);
    std::uint32_t next = 0;
    for (std::size_t s = 0; s < S; ++s) {
        if (removable[s]) {
            removed_audit.push_back(ws.orig[s]);
            continue;
        }
        new_index[s] = next++;
        values.insert(values.end(), ws.data.row_ptr(s), ws.data.row_ptr(s) + ws.data.n_attrs());
        orig.push_back(ws.orig[s]);
    }
    ws.data = Dataset(new_s, ws.data.n_attrs(), std::move(values));
    ws.orig = std::move(orig);

    // Shared states are rewritten once and re-shared.
    std::unordered_map<const void*, std::shared_ptr<AssignmentState>> st_memo;
    std::unordered_map<const void*, std::shared_ptr<RedundancyFlags>> fl_memo;
    auto fix_node = [&](Node& n) {
        auto& st = st_memo[n.state.get()];
        if (!st) st = remap_state(*n.state, new_index, new_s);
        n.state = st;
        auto& fl = fl_memo[n.flags.get()];
        if (!fl) fl = remap_flags(*n.flags, new_index, new_s);
        n.flags = fl;
    };
    fix_node(current);
    for (Node& n : queue.raw()) fix_node(n);
    return removed;
}

bool region_terminal(const CenterRegion& m) {
    for (const Box& b : m.boxes) {
        if (!b.degenerate()) return false;
    }
    return true;
}

void ensure_unique(Node& n) {
    if (n.state.use_count() > 1) n.state = std::make_shared<AssignmentState>(*n.state);
    if (n.flags.use_count() > 1) n.flags = std::make_shared<RedundancyFlags>(*n.flags);
}

}  // namespace

BoundOutcome node_bound_and_prune(const Dataset& d, std::vector<Node> children, double& alpha,
                                  const std::uint8_t* active, WorkerPool* pool) {
    BoundOutcome out;
    std::vector<Node> bounded;
    for (Node& child : children) {
        auto cand = candidate_centers(d, child.region, pool);
        if (!cand) continue;  // some cluster lost every candidate sample
        child.lb = node_lower_bound(d, child.region, active, pool);
        const double val = evaluate_assignment_indices(d, *cand, pool);
        if (val < alpha) {
            alpha = val;
            out.incumbent_updated = true;
            out.incumbent = std::move(*cand);
        }
        bounded.push_back(std::move(child));
    }
    for (Node& child : bounded) {
        if (child.lb < alpha) out.survivors.push_back(std::move(child));
    }
    return out;
}

SolveReport solve(const Dataset& d, std::size_t k, const SolverConfig& cfg,
                  const TraceSink& trace) {
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&t0] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    if (k < 1 || k > d.n_samples()) throw std::invalid_argument("solve: need 1 <= k <= n_samples");
    if (k > kMaxClusters) throw std::invalid_argument("solve: cluster count exceeds the mask limit");
    if (k > d.distinct_count()) {
        throw std::invalid_argument("solve: k exceeds the number of distinct samples");
    }
    if (cfg.epsilon_rel < 0.0) throw std::invalid_argument("solve: negative gap tolerance");

    WorkerPool pool(cfg.workers == 0 ? 1 : cfg.workers);
    Workspace ws;
    ws.data = d;
    ws.orig.resize(d.n_samples());
    for (std::size_t s = 0; s < d.n_samples(); ++s) ws.orig[s] = s;

    SolveReport report;
    report.n_samples = d.n_samples();
    report.n_attrs = d.n_attrs();
    report.k = k;

    // Root bounds: closed-form lower bound, farthest-first upper bound.
    const CenterRegion root = root_region(ws.data, k);
    const double root_lb = node_lower_bound(ws.data, root, nullptr, &pool);
    FftResult fft_root = fft_multistart(ws.data, k, cfg.fft_trials, cfg.seed, &pool);

    double alpha = fft_root.objective;
    std::vector<std::size_t> incumbent_orig;
    for (std::size_t idx : fft_root.centers.indices) incumbent_orig.push_back(ws.orig[idx]);

    // Initial seeds fix one cluster labeling; otherwise the first-attribute
    // ordering chain removes the label symmetry.
    auto state0 = std::make_shared<AssignmentState>(AssignmentState::make(ws.data.n_samples(), k));
    bool seeds_found = false;
    if (cfg.enable_assign) {
        if (auto seeds = find_initial_seeds(ws.data, k, alpha, &pool)) {
            for (std::size_t i = 0; i < seeds->size(); ++i) state0->assign_sample((*seeds)[i], i);
            seeds_found = true;
        }
    }
    const bool symmetry_active = cfg.enable_symmetry && !seeds_found;
    report.seeds_found = seeds_found;

    NodeQueue queue;
    std::uint64_t next_id = 0;
    {
        Node root_node;
        root_node.region = root;
        root_node.lb = root_lb;
        root_node.id = next_id++;
        root_node.depth = 0;
        root_node.state = state0;
        root_node.flags = std::make_shared<RedundancyFlags>(RedundancyFlags::make(ws.data.n_samples()));
        queue.push(std::move(root_node));
    }

    double beta = std::max(0.0, std::min(alpha, root_lb));
    std::size_t iter = 0;
    std::vector<std::size_t> removed_audit;
    Termination termination = Termination::queue_empty;

    auto emit = [&](std::size_t open) {
        if (trace) trace(TraceRow{iter, beta, alpha, open, ws.data.n_samples()});
    };
    emit(queue.size());

    bool stopped = false;
    if (alpha - beta <= cfg.epsilon_rel * alpha) {
        termination = Termination::gap;
        stopped = true;
    }

    std::vector<double> betas;          // per-sample per-cluster, current node
    std::vector<std::uint64_t> far_bits;  // rep-distance signal for ub flags
    std::vector<std::uint8_t> active;     // complement of lb flags

    while (!stopped && !queue.empty()) {
        if (elapsed() > cfg.time_limit_s) {
            termination = Termination::time_limit;
            stopped = true;
            break;
        }

        Node node = queue.pop_min();
        if (node.lb >= alpha) continue;  // stale, dominated since push
        ++iter;

        const std::size_t S = ws.data.n_samples();
        const std::size_t K = k;
        const bool mutate = cfg.enable_assign || cfg.enable_reduce;
        if (mutate) ensure_unique(node);

        // Cluster assignment on the node's current region.
        bool discard = false;
        if (cfg.enable_assign) {
            sample_cluster_betas(ws.data, node.region, betas, &pool);
            const CenterAssignResult cres = center_based_assign(*node.state, betas, alpha, &pool);
            if (cres.prune) discard = true;
            if (!discard) {
                sample_based_assign(*node.state, ws.data, alpha,
                                    cfg.enable_reduce ? &far_bits : nullptr, &pool);
            }
        } else if (cfg.enable_reduce) {
            far_bits.assign(S, 0);
        }

        // Bounds tightening down to the candidate hull of every cluster.
        TightenOutcome tight;
        if (!discard) {
            TightenConfig tc;
            tc.ball_threshold = cfg.ball_threshold;
            tc.ball_box = cfg.enable_bt;
            tc.symmetry = symmetry_active;
            tight = tighten_node(ws.data, node.region, *node.state, alpha, tc, &pool);
            if (tight.infeasible) discard = true;
        }

        if (!discard) {
            node.region = std::move(tight.region);

            if (cfg.enable_reduce) {
                RedundancyFlags& fl = *node.flags;
                const CenterRegion& reg = node.region;
                const double beta_best = beta;
                const std::vector<std::uint64_t>& far = far_bits;
                auto flag_work = [&](std::size_t, std::size_t begin, std::size_t end) {
                    for (std::size_t s = begin; s < end; ++s) {
                        if (!fl.lb[s] && best_max_sqdist(ws.data.row(s), reg) < beta_best) {
                            fl.lb[s] = 1;
                        }
                        if (!fl.ub[s]) {
                            bool redundant = true;
                            const double* x = ws.data.row_ptr(s);
                            for (std::size_t c = 0; c < K && redundant; ++c) {
                                if (reg.boxes[c].contains(x) && !((far[s] >> c) & 1)) {
                                    redundant = false;
                                }
                            }
                            if (redundant) fl.ub[s] = 1;
                        }
                    }
                };
                pool.run_chunks(S, flag_work);

                if (cfg.i_sr > 0 && iter % cfg.i_sr == 0) {
                    apply_sample_reduction(ws, node, queue, removed_audit);
                }
            }
        }

        if (!discard) {
            if (region_terminal(node.region)) {
                // Every box is a single candidate point: evaluate it exactly.
                if (auto cand = candidate_centers(ws.data, node.region, &pool)) {
                    const double val = evaluate_assignment_indices(ws.data, *cand, &pool);
                    if (val < alpha) {
                        alpha = val;
                        incumbent_orig.clear();
                        for (std::size_t idx : *cand) incumbent_orig.push_back(ws.orig[idx]);
                        queue.prune_dominated(alpha);
                    }
                }
            } else {
                auto [left, right] = branch(node.region);
                const std::uint8_t* act = nullptr;
                if (cfg.enable_reduce) {
                    active.resize(ws.data.n_samples());
                    for (std::size_t s = 0; s < ws.data.n_samples(); ++s) {
                        active[s] = !node.flags->lb[s];
                    }
                    act = active.data();
                }

                std::vector<Node> children(2);
                children[0].region = std::move(left);
                children[1].region = std::move(right);
                for (Node& c : children) {
                    c.depth = node.depth + 1;
                    c.state = node.state;
                    c.flags = node.flags;
                }

                const double alpha_before = alpha;
                BoundOutcome bound = node_bound_and_prune(ws.data, std::move(children), alpha,
                                                          act, &pool);
                if (bound.incumbent_updated) {
                    incumbent_orig.clear();
                    for (std::size_t idx : bound.incumbent) incumbent_orig.push_back(ws.orig[idx]);
                }
                for (Node& c : bound.survivors) {
                    c.id = next_id++;
                    queue.push(std::move(c));
                }
                if (alpha < alpha_before) queue.prune_dominated(alpha);
                if (queue.size() > cfg.max_open_nodes) {
                    throw std::runtime_error("solve: open node limit exceeded");
                }
            }
        }

        const double queue_min = queue.empty() ? alpha : queue.min_lb();
        beta = std::max(beta, std::min(alpha, queue_min));
        emit(queue.size());
        if (alpha - beta <= cfg.epsilon_rel * alpha) {
            termination = Termination::gap;
            stopped = true;
        }
    }

    if (!stopped) {
        // queue exhausted: the incumbent is exact
        beta = alpha;
        termination = Termination::queue_empty;
    }

    report.ub = alpha;
    report.lb = beta;
    report.gap_pct = gap_pct(alpha, beta);
    report.incumbent = std::move(incumbent_orig);
    report.nodes = iter;
    report.wall_time_s = elapsed();
    report.termination = termination;
    report.samples_remaining = ws.data.n_samples();
    return report;
}

}  // namespace kcenter
