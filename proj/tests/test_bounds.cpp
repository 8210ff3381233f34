#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "kcenter/bounds.hpp"
#include "kcenter/oracle.hpp"
#include "kcenter/rng.hpp"
#include "test_support.hpp"

using namespace kcenter;

namespace {

// Dense grid search over the box: the independent oracle for the closed-form
// minimum distance.
double grid_min_sqdist(std::span<const double> x, const Box& b, std::size_t steps) {
    const std::size_t A = b.dim();
    std::vector<std::size_t> idx(A, 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        double sq = 0.0;
        for (std::size_t a = 0; a < A; ++a) {
            const double t = steps == 1 ? 0.0 : static_cast<double>(idx[a]) / (steps - 1);
            const double p = b.lo[a] + t * (b.hi[a] - b.lo[a]);
            const double diff = x[a] - p;
            sq += diff * diff;
        }
        best = std::min(best, sq);
        std::size_t a = 0;
        while (a < A && ++idx[a] == steps) idx[a++] = 0;
        if (a == A) return best;
    }
}

Box shrink_box(Rng& rng, const Box& b) {
    Box s = b;
    for (std::size_t a = 0; a < b.dim(); ++a) {
        const double u = rng.uniform(b.lo[a], b.hi[a]);
        const double v = rng.uniform(b.lo[a], b.hi[a]);
        s.lo[a] = std::min(u, v);
        s.hi[a] = std::max(u, v);
    }
    return s;
}

}  // namespace

TEST_CASE("min_sqdist_to_box basics") {
    Box b{{0, 0}, {1, 1}};
    CHECK(min_sqdist_to_box(std::vector<double>{0.5, 0.5}, b) == 0.0);
    CHECK(min_sqdist_to_box(std::vector<double>{3.0, 0.0}, b) == 4.0);
    CHECK_THROWS_AS(min_sqdist_to_box(std::vector<double>{1.0}, b), std::invalid_argument);
}

TEST_CASE("min_sqdist_to_box matches a dense grid search") {
    // The grid point nearest the true minimizer is within half a cell per
    // attribute, so grid - closed <= 2*sqrt(closed)*delta + delta^2 with
    // delta = |half cell|.
    auto grid_slack = [](const Box& b, double closed, std::size_t steps) {
        double delta_sq = 0.0;
        for (std::size_t a = 0; a < b.dim(); ++a) {
            const double h = (b.hi[a] - b.lo[a]) / (2.0 * (steps - 1));
            delta_sq += h * h;
        }
        return 2.0 * std::sqrt(closed * delta_sq) + delta_sq + 1e-12;
    };

    Rng rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        const Box b = test::random_box(rng, 3);
        const auto x = test::random_point(rng, 3);
        const double closed = min_sqdist_to_box(x, b);
        const double grid = grid_min_sqdist(x, b, 41);
        CHECK(closed <= grid + 1e-12);
        CHECK(grid - closed <= grid_slack(b, closed, 41));
        // the refined oracle agrees to 1e-6
        CHECK(std::abs(test::refined_grid_min_sqdist(x, b) - closed) <= 1e-6);
    }
}

TEST_CASE("max_sqdist_to_box basics and corner oracle") {
    Box b{{0, 0}, {1, 1}};
    CHECK(max_sqdist_to_box(std::vector<double>{0.0, 0.0}, b) == 2.0);
    Box pt{{1, 2}, {1, 2}};
    CHECK(max_sqdist_to_box(std::vector<double>{1.0, 2.0}, pt) == 0.0);

    Rng rng(13);
    for (int rep = 0; rep < 200; ++rep) {
        const Box rb = test::random_box(rng, 3);
        const auto x = test::random_point(rng, 3);
        CHECK(max_sqdist_to_box(x, rb) ==
              doctest::Approx(test::corner_enum_max_sqdist(x, rb)).epsilon(1e-12));
    }
}

TEST_CASE("min <= max and monotonicity under shrinking") {
    Rng rng(17);
    for (int rep = 0; rep < 200; ++rep) {
        const Box outer = test::random_box(rng, 2);
        const Box inner = shrink_box(rng, outer);
        const auto x = test::random_point(rng, 2, -15, 15);
        const double mn_outer = min_sqdist_to_box(x, outer);
        const double mx_outer = max_sqdist_to_box(x, outer);
        CHECK(mn_outer >= 0.0);
        CHECK(mn_outer <= mx_outer);
        CHECK(min_sqdist_to_box(x, inner) >= mn_outer);
        CHECK(max_sqdist_to_box(x, inner) <= mx_outer);
    }
}

TEST_CASE("sample_lower_bound: containment, K=1 collapse, grid oracle") {
    CenterRegion m;
    m.boxes.push_back(Box{{0, 0}, {1, 1}});
    m.boxes.push_back(Box{{5, 5}, {6, 6}});
    m.boxes.push_back(Box{{-3, -3}, {-2, -2}});
    CHECK(sample_lower_bound(std::vector<double>{0.5, 0.5}, m) == 0.0);

    Rng rng(19);
    for (int rep = 0; rep < 30; ++rep) {
        const Box b = test::random_box(rng, 2);
        const auto x = test::random_point(rng, 2);
        CenterRegion single;
        single.boxes.push_back(b);
        CHECK(sample_lower_bound(x, single) == min_sqdist_to_box(x, b));
    }

    for (int rep = 0; rep < 20; ++rep) {
        CenterRegion rm;
        rm.boxes.push_back(test::random_box(rng, 2));
        rm.boxes.push_back(test::random_box(rng, 2));
        const auto x = test::random_point(rng, 2);
        const double grid = std::min(grid_min_sqdist(x, rm.boxes[0], 201),
                                     grid_min_sqdist(x, rm.boxes[1], 201));
        CHECK(sample_lower_bound(x, rm) <= grid + 1e-12);
        CHECK(grid - sample_lower_bound(x, rm) <= 1e-2 * (1.0 + grid));
    }
}

TEST_CASE("node_lower_bound equals a direct double-loop oracle") {
    Rng rng(23);
    const Dataset d = test::random_dataset(rng, 5, 2);
    CenterRegion m;
    m.boxes.push_back(test::random_box(rng, 2));
    m.boxes.push_back(test::random_box(rng, 2));

    double expect = -1.0;
    for (std::size_t s = 0; s < d.n_samples(); ++s) {
        double per = std::numeric_limits<double>::infinity();
        for (const Box& b : m.boxes) per = std::min(per, min_sqdist_to_box(d.row(s), b));
        expect = std::max(expect, per);
    }
    CHECK(node_lower_bound(d, m) == expect);
}

TEST_CASE("node_lower_bound at a degenerate region equals evaluate_assignment") {
    Rng rng(29);
    const Dataset d = test::random_dataset(rng, 12, 3);
    std::vector<std::vector<double>> centers{test::random_point(rng, 3),
                                             test::random_point(rng, 3)};
    CenterRegion m;
    for (const auto& c : centers) m.boxes.push_back(Box{c, c});
    CHECK(node_lower_bound(d, m) == evaluate_assignment(d, centers));
}

TEST_CASE("node_lower_bound: containment and empty active set") {
    const Dataset d = test::make_dataset({{0.5, 0.5}});
    CenterRegion m;
    m.boxes.push_back(Box{{0, 0}, {1, 1}});
    CHECK(node_lower_bound(d, m) == 0.0);

    const std::uint8_t none[1] = {0};
    CHECK_THROWS_AS(node_lower_bound(d, m, none), std::invalid_argument);
}

TEST_CASE("node_lower_bound skips inactive samples") {
    const Dataset d = test::make_dataset({{0, 0}, {10, 0}});
    CenterRegion m;
    m.boxes.push_back(Box{{-1, -1}, {1, 1}});
    const std::uint8_t first_only[2] = {1, 0};
    CHECK(node_lower_bound(d, m) == 81.0);
    CHECK(node_lower_bound(d, m, first_only) == 0.0);
}

TEST_CASE("evaluate_assignment examples") {
    const Dataset d = test::make_dataset({{0, 0}, {1, 1}, {2, 2}});
    CHECK(evaluate_assignment_indices(d, std::vector<std::size_t>{0, 1, 2}) == 0.0);

    const Dataset corners = test::unit_square_corners();
    const std::vector<std::vector<double>> centers{{0, 0}, {1, 1}};
    CHECK(evaluate_assignment(corners, centers) == 1.0);
}

TEST_CASE("evaluate_assignment dominates the degenerate-region lower bound") {
    Rng rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        const Dataset d = test::random_dataset(rng, 10, 2);
        std::vector<std::vector<double>> centers{test::random_point(rng, 2),
                                                 test::random_point(rng, 2)};
        CenterRegion m;
        for (const auto& c : centers) m.boxes.push_back(Box{c, c});
        CHECK(evaluate_assignment(d, centers) >= node_lower_bound(d, m));
    }
}

TEST_CASE("evaluate_assignment with sample centers dominates the oracle optimum") {
    Rng rng(37);
    const Dataset d = test::random_dataset(rng, 12, 2);
    const OracleResult opt = brute_force(d, 2);
    for (std::size_t i = 0; i < d.n_samples(); ++i) {
        for (std::size_t j = i + 1; j < d.n_samples(); ++j) {
            CHECK(evaluate_assignment_indices(d, std::vector<std::size_t>{i, j}) >=
                  opt.opt_value);
        }
    }
}

TEST_CASE("lower-bound validity at the root") {
    Rng rng(41);
    for (int rep = 0; rep < 10; ++rep) {
        const Dataset d = test::random_dataset(rng, 10 + rng.uniform_index(8), 2);
        const CenterRegion m = root_region(d, 2);
        const OracleResult opt = brute_force(d, 2);
        CHECK(node_lower_bound(d, m) <= opt.opt_value);
    }
}

TEST_CASE("candidate_centers picks the midpoint-nearest sample per cluster") {
    const Dataset d = test::make_dataset({{0, 0}, {1, 1}, {2, 2}});
    CenterRegion m;
    m.boxes.push_back(Box{{0, 0}, {2, 2}});
    auto got = candidate_centers(d, m);
    REQUIRE(got.has_value());
    CHECK((*got)[0] == 1);

    CenterRegion off;
    off.boxes.push_back(Box{{10, 10}, {11, 11}});
    CHECK(!candidate_centers(d, off).has_value());
}

TEST_CASE("candidate_centers agrees with a linear scan and breaks ties low") {
    Rng rng(43);
    for (int rep = 0; rep < 30; ++rep) {
        const Dataset d = test::random_dataset(rng, 25, 2);
        CenterRegion m;
        m.boxes.push_back(test::random_box(rng, 2, -12, 12));
        const auto got = candidate_centers(d, m);

        double best = std::numeric_limits<double>::infinity();
        std::size_t idx = static_cast<std::size_t>(-1);
        for (std::size_t s = 0; s < d.n_samples(); ++s) {
            if (!m.boxes[0].contains(d.row(s))) continue;
            double sq = 0.0;
            for (std::size_t a = 0; a < 2; ++a) {
                const double diff = d.at(s, a) - m.boxes[0].midpoint(a);
                sq += diff * diff;
            }
            if (sq < best) {
                best = sq;
                idx = s;
            }
        }
        if (idx == static_cast<std::size_t>(-1)) {
            CHECK(!got.has_value());
        } else {
            REQUIRE(got.has_value());
            CHECK((*got)[0] == idx);
        }
    }

    // exact tie: two samples equidistant from the midpoint
    const Dataset tie = test::make_dataset({{0.0}, {2.0}, {1.0}});
    CenterRegion m;
    m.boxes.push_back(Box{{0.0}, {2.0}});
    auto got = candidate_centers(tie, m);
    REQUIRE(got.has_value());
    CHECK((*got)[0] == 2);  // distance 0 beats the tied pair
    const Dataset tie2 = test::make_dataset({{0.0}, {2.0}});
    auto got2 = candidate_centers(tie2, m);
    REQUIRE(got2.has_value());
    CHECK((*got2)[0] == 0);  // equidistant: lowest index
}
