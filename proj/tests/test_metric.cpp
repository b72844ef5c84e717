#include <doctest.h>

#include <cmath>
#include <memory>

#include "curvelab/errors.hpp"
#include "curvelab/metric.hpp"
#include "curvelab/rng.hpp"

using namespace curvelab;

namespace {

MetricSpace line_points(std::vector<double> xs) {
    return MetricSpace::euclidean(std::move(xs), 1);
}

MetricSpace random_cloud(std::size_t n, std::size_t dim, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> c(n * dim);
    for (double& v : c) v = rng.next_double();
    return MetricSpace::euclidean(std::move(c), dim);
}

} // namespace

TEST_CASE("euclidean distances") {
    const auto s = MetricSpace::euclidean({{0.0, 0.0}, {3.0, 4.0}});
    CHECK(s.dist(0, 1) == doctest::Approx(5.0));
    CHECK(s.dist(0, 0) == 0.0);
    CHECK(s.dist(1, 1) == 0.0);
    CHECK_THROWS_AS(s.dist(0, 2), std::invalid_argument);
}

TEST_CASE("power transform distances") {
    auto base = std::make_shared<MetricSpace>(line_points({0.0, 4.0}));
    const auto s = MetricSpace::power(base, 0.5);
    CHECK(s.dist(0, 1) == doctest::Approx(2.0));
    CHECK(s.dist(0, 0) == 0.0);
    CHECK_THROWS_AS(MetricSpace::power(base, 0.0), std::domain_error);
    CHECK_THROWS_AS(MetricSpace::power(base, 1.5), std::domain_error);
}

TEST_CASE("ball members on a line") {
    const auto s = line_points({0.0, 1.0, 2.0, 3.0});
    const auto domain = all_points(s);
    CHECK(ball_members(s, Ball{1, 1.0}, domain) == PointSubset{0, 1, 2});
    CHECK(ball_members(s, Ball{1, 0.5}, domain) == PointSubset{1});
    CHECK(ball_members(s, Ball{1, 3.0}, domain) == domain);
}

TEST_CASE("ball dilation") {
    const Ball b{3, 0.5};
    const Ball b2 = b.dilated(4.0);
    CHECK(b2.center == 3);
    CHECK(b2.radius == 2.0);
}

TEST_CASE("subset diameters") {
    const auto s = MetricSpace::euclidean({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
    CHECK(subset_diam(s, all_points(s)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(subset_diam(s, {1}) == 0.0);
    CHECK_THROWS_AS(subset_diam(s, {}), std::domain_error);
}

TEST_CASE("circle sample diameter reaches 2") {
    // max over pairs of a regular 360-gon on the unit circle
    std::vector<double> c;
    for (int k = 0; k < 360; ++k) {
        const double th = 2.0 * M_PI * k / 360.0;
        c.push_back(std::cos(th));
        c.push_back(std::sin(th));
    }
    const auto s = MetricSpace::euclidean(std::move(c), 2);
    CHECK(subset_diam(s, all_points(s)) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("explicit matrix validation") {
    // valid 3-point metric
    CHECK_NOTHROW(MetricSpace::explicit_matrix(3, {0, 1, 2, 1, 0, 1.5, 2, 1.5, 0}));
    // asymmetry
    CHECK_THROWS_AS(MetricSpace::explicit_matrix(2, {0, 1, 1.25, 0}), ValidationError);
    // nonzero diagonal
    CHECK_THROWS_AS(MetricSpace::explicit_matrix(2, {0.5, 1, 1, 0}), ValidationError);
    // non-positive off-diagonal
    CHECK_THROWS_AS(MetricSpace::explicit_matrix(2, {0, 0, 0, 0}), ValidationError);
    // triangle inequality violation: d(0,2) = 5 > 1 + 1
    CHECK_THROWS_AS(MetricSpace::explicit_matrix(3, {0, 1, 5, 1, 0, 1, 5, 1, 0}),
                    ValidationError);
    // wrong size
    CHECK_THROWS_AS(MetricSpace::explicit_matrix(3, {0, 1, 1, 0}), ValidationError);
}

TEST_CASE("metric axioms hold for constructor outputs") {
    const auto cloud = random_cloud(40, 3, 17);
    auto base = std::make_shared<MetricSpace>(random_cloud(40, 2, 99));
    const auto snow = MetricSpace::power(base, 0.7);

    for (const MetricSpace* s : {&cloud, &snow}) {
        const std::size_t n = s->size();
        for (PointId i = 0; i < n; ++i) {
            CHECK(s->dist(i, i) == 0.0);
            for (PointId j = 0; j < n; ++j) CHECK(s->dist(i, j) == s->dist(j, i));
        }
        // exhaustive triangle check at this size
        for (PointId i = 0; i < n; ++i)
            for (PointId j = 0; j < n; ++j)
                for (PointId k = 0; k < n; ++k)
                    CHECK(s->dist(i, k) <= s->dist(i, j) + s->dist(j, k) + 1e-12);
    }
}

TEST_CASE("ball membership is monotone in radius") {
    const auto s = random_cloud(60, 2, 5);
    const auto domain = all_points(s);
    SplitMix64 rng(7);
    for (int t = 0; t < 50; ++t) {
        const auto c = static_cast<PointId>(rng.next_below(60));
        const double r1 = rng.next_double();
        const double r2 = r1 + rng.next_double();
        const auto m1 = ball_members(s, Ball{c, r1}, domain);
        const auto m2 = ball_members(s, Ball{c, r2}, domain);
        // m1 subseteq m2 (both are in domain order)
        std::size_t pos = 0;
        for (PointId id : m1) {
            while (pos < m2.size() && m2[pos] != id) ++pos;
            REQUIRE(pos < m2.size());
        }
    }
}

TEST_CASE("validate_subset rejects bad ids") {
    const auto s = line_points({0.0, 1.0});
    CHECK_NOTHROW(validate_subset(s, {0, 1}));
    CHECK_THROWS_AS(validate_subset(s, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_subset(s, {0, 7}), std::invalid_argument);
}
