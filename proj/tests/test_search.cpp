#include <doctest.h>

#include <stdexcept>

#include "kcenter/bounds.hpp"
#include "kcenter/oracle.hpp"
#include "kcenter/search.hpp"
#include "test_support.hpp"

using namespace kcenter;

TEST_CASE("branch splits the max-range coordinate at its midpoint") {
    CenterRegion m;
    m.boxes.push_back(Box{{0, 0}, {4, 1}});
    m.boxes.push_back(Box{{0, 0}, {1, 1}});
    CHECK(branching_coordinate(m) == std::pair<std::size_t, std::size_t>{0, 0});

    const auto [left, right] = branch(m);
    CHECK(left.boxes[0].hi[0] == 2.0);
    CHECK(right.boxes[0].lo[0] == 2.0);
    CHECK(left.boxes[0].lo[0] == 0.0);
    CHECK(right.boxes[0].hi[0] == 4.0);
    CHECK(left.boxes[1] == m.boxes[1]);
    CHECK(right.boxes[1] == m.boxes[1]);
}

TEST_CASE("branch ties go to the lowest cluster and attribute") {
    CenterRegion m;
    m.boxes.push_back(Box{{0, 0}, {2, 2}});
    m.boxes.push_back(Box{{0, 0}, {2, 2}});
    CHECK(branching_coordinate(m) == std::pair<std::size_t, std::size_t>{0, 0});
}

TEST_CASE("branch children cover the parent with a zero-width overlap") {
    Rng rng(81);
    for (int rep = 0; rep < 40; ++rep) {
        CenterRegion m;
        m.boxes.push_back(test::random_box(rng, 3));
        m.boxes.push_back(test::random_box(rng, 3));
        const auto [k, a] = branching_coordinate(m);
        const auto [left, right] = branch(m);
        CHECK(left.boxes[k].lo[a] == m.boxes[k].lo[a]);
        CHECK(right.boxes[k].hi[a] == m.boxes[k].hi[a]);
        CHECK(left.boxes[k].hi[a] == right.boxes[k].lo[a]);  // zero-width seam
        for (std::size_t kk = 0; kk < 2; ++kk) {
            if (kk == k) continue;
            CHECK(left.boxes[kk] == m.boxes[kk]);
            CHECK(right.boxes[kk] == m.boxes[kk]);
        }
    }
}

TEST_CASE("branch on a terminal region is an error") {
    CenterRegion m;
    m.boxes.push_back(Box{{1, 2}, {1, 2}});
    CHECK_THROWS_AS(branch(m), std::logic_error);
}

TEST_CASE("node queue pops the smallest lb, then the smallest id") {
    NodeQueue q;
    auto push = [&](double lb, std::uint64_t id) {
        Node n;
        n.lb = lb;
        n.id = id;
        q.push(std::move(n));
    };
    push(5.0, 1);
    push(3.0, 9);
    push(7.0, 2);
    push(3.0, 4);
    CHECK(q.pop_min().id == 4);  // lb tie broken by id
    CHECK(q.pop_min().id == 9);
    CHECK(q.min_lb() == 5.0);  // heap contract: new minimum surfaces
    CHECK(q.pop_min().id == 1);
    CHECK(q.pop_min().id == 2);
    CHECK(q.empty());
    CHECK_THROWS_AS(q.pop_min(), std::logic_error);
}

TEST_CASE("prune_dominated removes everything at or above alpha") {
    NodeQueue q;
    for (std::uint64_t i = 0; i < 10; ++i) {
        Node n;
        n.lb = static_cast<double>(i);
        n.id = i;
        q.push(std::move(n));
    }
    q.prune_dominated(4.0);
    CHECK(q.size() == 4);
    CHECK(q.min_lb() == 0.0);
}

TEST_CASE("node_bound_and_prune discards empty and dominated children") {
    const Dataset d = test::make_dataset({{0.0}, {1.0}, {10.0}});
    double alpha = 1e9;

    // child 0 covers all samples; child 1 has an empty cluster box
    std::vector<Node> children(2);
    children[0].region.boxes.push_back(Box{{0.0}, {10.0}});
    children[1].region.boxes.push_back(Box{{20.0}, {30.0}});
    BoundOutcome out = node_bound_and_prune(d, std::move(children), alpha);
    REQUIRE(out.survivors.size() == 1);
    CHECK(out.incumbent_updated);
    // candidate: nearest to midpoint 5 is sample 1 (distance 16 vs 25)
    CHECK(out.incumbent == std::vector<std::size_t>{1});
    CHECK(alpha == evaluate_assignment_indices(d, out.incumbent));

    // a child whose lb reaches alpha is pruned (non-strict rule)
    std::vector<Node> tight(1);
    tight[0].region.boxes.push_back(Box{{0.0}, {0.0}});  // lb = 100 from sample 2
    double alpha2 = 100.0;
    BoundOutcome out2 = node_bound_and_prune(d, std::move(tight), alpha2);
    CHECK(out2.survivors.empty());
    CHECK(alpha2 == 100.0);  // candidate evaluation matched but did not improve
}

TEST_CASE("solve: k = n on a duplicate-free dataset gives zero at the root") {
    Rng rng(91);
    const Dataset d = test::random_dataset(rng, 8, 2);
    SolverConfig cfg;
    const SolveReport rep = solve(d, 8, cfg);
    CHECK(rep.ub == 0.0);
    CHECK(rep.lb == 0.0);
    CHECK(rep.gap_pct == 0.0);
    CHECK(rep.nodes == 0);
    CHECK(rep.termination == Termination::gap);
}

TEST_CASE("solve rejects infeasible k") {
    const Dataset dup = test::make_dataset({{1, 2}, {1, 2}, {3, 4}});
    CHECK_THROWS_AS(solve(dup, 3, SolverConfig{}), std::invalid_argument);
    CHECK_THROWS_AS(solve(dup, 0, SolverConfig{}), std::invalid_argument);
    CHECK_THROWS_AS(solve(dup, 4, SolverConfig{}), std::invalid_argument);
}

TEST_CASE("solve tolerates duplicate rows") {
    const Dataset dup = test::make_dataset({{0.0}, {0.0}, {10.0}, {10.0}, {4.0}});
    SolverConfig cfg;
    cfg.epsilon_rel = 0.0;
    const SolveReport rep = solve(dup, 2, cfg);
    const OracleResult opt = brute_force(dup, 2);
    CHECK(rep.ub == opt.opt_value);
}

TEST_CASE("solve respects a zero time limit") {
    Rng rng(95);
    const Dataset d = test::random_dataset(rng, 40, 2);
    SolverConfig cfg;
    cfg.epsilon_rel = 0.0;
    cfg.time_limit_s = 0.0;
    const SolveReport rep = solve(d, 3, cfg);
    CHECK(rep.termination == Termination::time_limit);
    CHECK(rep.ub >= rep.lb);
}

TEST_CASE("solve reports a valid incumbent whose value matches ub") {
    Rng rng(97);
    const Dataset d = test::random_dataset(rng, 15, 2);
    SolverConfig cfg;
    cfg.epsilon_rel = 0.0;
    const SolveReport rep = solve(d, 2, cfg);
    REQUIRE(rep.incumbent.size() == 2);
    CHECK(evaluate_assignment_indices(d, rep.incumbent) == rep.ub);
}

TEST_CASE("gap_pct definition") {
    CHECK(gap_pct(2.0, 1.0) == 50.0);
    CHECK(gap_pct(0.0, 0.0) == 0.0);
    CHECK(gap_pct(5.0, 5.0) == 0.0);
    CHECK(gap_pct(5.0, 6.0) == 0.0);  // clamped
}
