#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "curvelab/curve.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/generators.hpp"
#include "curvelab/rng.hpp"

using namespace curvelab;

namespace {
constexpr double kPi = std::numbers::pi;

Curve unit_circle(std::size_t m) {
    return *generate(parse_generator_spec("circle:1:" + std::to_string(m))).curve;
}
} // namespace

TEST_CASE("point_at on the unit square boundary") {
    const Curve sq = Curve::polyline({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true);
    CHECK(sq.length() == doctest::Approx(4.0));
    const auto mid = sq.point_at(0.5);
    CHECK(mid[0] == doctest::Approx(0.5));
    CHECK(mid[1] == 0.0);
    // closed wraparound
    const auto a = sq.point_at(0.0), b = sq.point_at(4.0);
    CHECK(a[0] == b[0]);
    CHECK(a[1] == b[1]);
    // exact vertex
    const auto v = sq.point_at(1.0);
    CHECK(v[0] == 1.0);
    CHECK(v[1] == 0.0);
}

TEST_CASE("open curve rejects out-of-range parameters") {
    const Curve seg = Curve::polyline({{0, 0}, {1, 0}}, false);
    CHECK_THROWS_AS(seg.point_at(1.5), std::domain_error);
    CHECK_THROWS_AS(seg.point_at(-0.5), std::domain_error);
    CHECK_NOTHROW(seg.point_at(1.0));
}

TEST_CASE("curve construction validation") {
    CHECK_THROWS_AS(Curve::polyline({{0, 0}, {0, 0}, {1, 0}}, false), ValidationError);
}

TEST_CASE("arc-length parameterization is 1-Lipschitz") {
    const Curve c = unit_circle(128);
    SplitMix64 rng(41);
    for (int t = 0; t < 500; ++t) {
        const double s1 = c.length() * rng.next_double();
        const double s2 = c.length() * rng.next_double();
        CHECK(c.dist_at(s1, s2) <= std::abs(s1 - s2) + 1e-12);
    }
}

TEST_CASE("lambda components on a circle") {
    const Curve c = unit_circle(720);
    // ball at (1,0) catching a quarter of the circle: chord radius for a
    // +-45 degree arc is 2 sin(pi/8)
    const double r = 2.0 * std::sin(kPi / 8.0);
    const auto arcs = lambda_components(c, std::vector<double>{1.0, 0.0}, r);
    REQUIRE(arcs.size() == 1); // wraps through the seam into one component
    const double mu = arcs[0].length();
    CHECK(mu == doctest::Approx(kPi / 2.0).epsilon(2e-2));
    // whole curve inside
    const auto all = lambda_components(c, std::vector<double>{0.0, 0.0}, 2.0);
    REQUIRE(all.size() == 1);
    CHECK(all[0].a == 0.0);
    CHECK(all[0].b == doctest::Approx(c.length()));
    // disjoint ball
    CHECK(lambda_components(c, std::vector<double>{5.0, 5.0}, 0.5).empty());
}

TEST_CASE("lambda components: arcs are disjoint, ordered, inside the ball") {
    const Curve c = unit_circle(256);
    SplitMix64 rng(55);
    for (int t = 0; t < 40; ++t) {
        const std::vector<double> center{2.0 * rng.next_double() - 1.0,
                                         2.0 * rng.next_double() - 1.0};
        const double r = 0.1 + rng.next_double();
        const auto arcs = lambda_components(c, center, r);
        for (std::size_t i = 0; i + 1 < arcs.size(); ++i) CHECK(arcs[i].b < arcs[i + 1].a);
        for (const Arc& a : arcs) {
            CHECK(a.b >= a.a);
            for (int k = 0; k <= 8; ++k) {
                const double s = a.a + (a.b - a.a) * k / 8.0;
                const auto p = c.point_at(s);
                CHECK(std::hypot(p[0] - center[0], p[1] - center[1]) <= r + 1e-9);
            }
        }
    }
}

TEST_CASE("one-third trick: derived example") {
    const auto got = one_third_containing(0.49, 0.02);
    CHECK(got.filtration == 1);
    CHECK(got.len == doctest::Approx(1.0 / 32.0));
    CHECK(got.lo == doctest::Approx(1.0 / 3.0 + 5.0 / 32.0).epsilon(1e-12));
}

TEST_CASE("one-third trick: dyadic interval maps to itself") {
    const auto got = one_third_containing(0.25, 0.125);
    CHECK(got.filtration == 0);
    CHECK(got.lo == doctest::Approx(0.25));
    CHECK(got.len == doctest::Approx(0.125));
}

TEST_CASE("one-third trick: wraparound interval") {
    const auto got = one_third_containing(0.99, 0.02); // [0.99, 1.01 mod 1]
    CHECK(got.len <= 6.0 * 0.02);
    // containment in circle coordinates
    const double u = std::fmod(0.99 - got.lo + 2.0, 1.0);
    CHECK(u + 0.02 <= got.len + 1e-12);
}

TEST_CASE("one-third trick: fuzz containment and factor 6") {
    SplitMix64 rng(77);
    for (int t = 0; t < 10000; ++t) {
        const double lo = rng.next_double();
        const double len = 1e-6 + rng.next_double() * (1.0 / 6.0 - 2e-6);
        const auto got = one_third_containing(lo, len);
        CHECK(got.len <= 6.0 * len * (1.0 + 1e-12));
        const double u = std::fmod(lo - got.lo + 2.0, 1.0);
        CHECK(u + len <= got.len + 1e-12);
    }
    CHECK_THROWS_AS(one_third_containing(0.1, 0.2), std::domain_error);
    CHECK_THROWS_AS(one_third_containing(0.1, 0.0), std::domain_error);
}

TEST_CASE("measure_regularity on circle and segment") {
    const Curve c = unit_circle(512);
    std::vector<RegularityTrial> trials;
    for (double r : {0.1, 0.5, 1.0, 1.9})
        trials.push_back(RegularityTrial{{1.0, 0.0}, 0, r});
    const auto rep = measure_regularity(c, trials);
    CHECK(rep.c_hat <= kPi + 0.05);
    CHECK(rep.c_hat >= 1.9); // small-r chord-to-arc ratio approaches 2

    const Curve seg = Curve::polyline({{0, 0}, {1, 0}}, false);
    const auto rep2 =
        measure_regularity(seg, {RegularityTrial{{0.5, 0.0}, 0, 0.1}});
    CHECK(rep2.c_hat == doctest::Approx(2.0)); // two-sided interval: mu = 2r

    CHECK_THROWS_AS(measure_regularity(seg, {}), std::domain_error);
}

TEST_CASE("koch prefixes grow the regularity constant") {
    double prev = 0.0;
    for (int level : {1, 3, 5}) {
        const auto gen = generate(GeneratorSpec{.kind = GeneratorKind::KochPrefix,
                                                .scale = 1.0,
                                                .level = level});
        std::vector<RegularityTrial> trials;
        for (double r : {0.05, 0.1, 0.2})
            trials.push_back(RegularityTrial{{0.5, 0.28}, 0, r}); // near the apex region
        const auto rep = measure_regularity(*gen.curve, trials);
        CHECK(rep.c_hat >= prev * 0.99);
        prev = rep.c_hat;
    }
    CHECK(prev > 2.0);
}

TEST_CASE("metric-backed curve evaluation") {
    const auto gen = generate(parse_generator_spec("snowflake:0.5:64"));
    REQUIRE(gen.curve.has_value());
    const Curve& c = *gen.curve;
    CHECK_FALSE(c.is_euclidean());
    CHECK(c.length() == doctest::Approx(*gen.analytic_length));
    // vertex-resolution lambda components around the first vertex
    const auto arcs = lambda_components(c, PointId{0}, 0.3 * c.length());
    REQUIRE(arcs.size() == 1);
    CHECK(arcs[0].a == 0.0);
}

TEST_CASE("sample_distances matches dist_at") {
    const Curve c = unit_circle(64);
    const auto params = c.sample_params(16);
    const auto D = sample_distances(c, params);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(D(i, i) == 0.0);
        for (std::size_t j = 0; j < 16; ++j) {
            CHECK(D(i, j) == D(j, i));
            CHECK(D(i, j) == doctest::Approx(c.dist_at(params[i], params[j])));
        }
    }
}
