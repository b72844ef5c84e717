#include <doctest.h>

#include <cmath>
#include <map>
#include <memory>
#include <numbers>

#include "curvelab/errors.hpp"
#include "curvelab/generators.hpp"
#include "curvelab/rng.hpp"
#include "curvelab/spanning.hpp"

using namespace curvelab;

namespace {

constexpr double kPi = std::numbers::pi;

// each undirected edge must appear exactly twice, once per direction
void audit_tour(const NetGraph& g, const Tour& tour) {
    if (g.edges.empty()) {
        CHECK(tour.vertex_seq.size() == 1);
        return;
    }
    REQUIRE(tour.vertex_seq.size() == 2 * g.edges.size() + 1);
    CHECK(tour.vertex_seq.front() == tour.vertex_seq.back());
    std::map<std::pair<std::uint32_t, std::uint32_t>, int> directed;
    for (std::size_t i = 0; i + 1 < tour.vertex_seq.size(); ++i) {
        const auto a = tour.vertex_seq[i], b = tour.vertex_seq[i + 1];
        ++directed[{a, b}];
        // consecutive vertices adjacent: the traversed edge matches edge_seq
        const auto& e = g.edges[tour.edge_seq[i]];
        CHECK(((e.u == a && e.v == b) || (e.u == b && e.v == a)));
    }
    for (const auto& e : g.edges) {
        CHECK(directed[{e.u, e.v}] == 1);
        CHECK(directed[{e.v, e.u}] == 1);
    }
    double len = 0.0;
    for (auto ei : tour.edge_seq) len += g.edges[ei].length;
    CHECK(tour.length == doctest::Approx(len));
    CHECK(tour.length == doctest::Approx(2.0 * g.total_length()));
}

} // namespace

TEST_CASE("net graph on three collinear points") {
    const auto s = MetricSpace::euclidean({0.0, 0.2, 0.4}, 1);
    const Net net{0.1, all_points(s), all_points(s)};
    const auto g = build_net_graph(s, net); // radius 0.8
    REQUIRE(g.edges.size() == 2);           // path graph
    CHECK(g.total_length() == doctest::Approx(0.4));
    CHECK(g.conformant);
}

TEST_CASE("net graph on a single point") {
    const auto s = MetricSpace::euclidean({{0.0, 0.0}});
    const Net net{1.0, {0}, {0}};
    const auto g = build_net_graph(s, net);
    CHECK(g.edges.empty());
    audit_tour(g, double_euler_tour(g));
}

TEST_CASE("euler tour on a path graph") {
    const auto s = MetricSpace::euclidean({0.0, 1.0, 3.0}, 1);
    const Net net{0.4, all_points(s), all_points(s)};
    const auto g = build_net_graph(s, net); // radius 3.2 connects 0-1 (1) and 1-3 (2)
    REQUIRE(g.edges.size() == 2);
    const auto tour = double_euler_tour(g);
    CHECK(tour.length == doctest::Approx(6.0));
    audit_tour(g, tour);
}

TEST_CASE("euler tour on a hand-built triangle") {
    NetGraph g;
    g.vertices = {0, 1, 2};
    g.edges = {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}};
    g.adjacency = {{0, 2}, {0, 1}, {1, 2}};
    const auto tour = double_euler_tour(g);
    CHECK(tour.length == doctest::Approx(6.0));
    audit_tour(g, tour);
}

TEST_CASE("euler tour on a random connected graph") {
    SplitMix64 rng(2024);
    const std::uint32_t n = 500;
    NetGraph g;
    g.vertices.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) g.vertices[i] = i;
    std::map<std::pair<std::uint32_t, std::uint32_t>, bool> seen;
    auto add_edge = [&](std::uint32_t a, std::uint32_t b) {
        if (a == b) return;
        const auto key = std::minmax(a, b);
        if (seen[{key.first, key.second}]) return;
        seen[{key.first, key.second}] = true;
        g.edges.push_back({key.first, key.second, 0.5 + rng.next_double()});
    };
    for (std::uint32_t i = 1; i < n; ++i)
        add_edge(i, static_cast<std::uint32_t>(rng.next_below(i))); // spanning tree
    for (int t = 0; t < 300; ++t)
        add_edge(static_cast<std::uint32_t>(rng.next_below(n)),
                 static_cast<std::uint32_t>(rng.next_below(n)));
    g.adjacency.resize(n);
    for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
        g.adjacency[g.edges[e].u].push_back(e);
        g.adjacency[g.edges[e].v].push_back(e);
    }
    audit_tour(g, double_euler_tour(g));
}

TEST_CASE("disconnected input raises a structured error") {
    // two clusters 10 apart, net epsilon 0.5, connection radius 4
    const auto s = MetricSpace::euclidean({0.0, 1.0, 11.0, 12.0}, 1);
    const Net net{0.5, all_points(s), all_points(s)};
    try {
        build_net_graph(s, net);
        FAIL("expected DisconnectedError");
    } catch (const DisconnectedError& e) {
        CHECK(e.gap >= 4.0);
        CHECK(e.connect_radius == doctest::Approx(4.0));
        CHECK(s.dist(e.component_a, e.component_b) == doctest::Approx(e.gap));
    }
}

TEST_CASE("parameterize a dense circle sample") {
    const auto gen = generate(parse_generator_spec("circle:1:512"));
    auto space = gen.space;
    const auto result = parameterize_with_details(space, all_points(*space), 4);
    const double eps = std::exp2(-4.0);
    const double href = 2.0 * kPi;

    CHECK(result.graph.total_length() <=
          static_cast<double>(result.net.members.size()) * 8.0 * eps);
    CHECK(result.graph.total_length() <= 16.0 * href);
    CHECK(result.tour.length <= 32.0 * href);
    CHECK(result.curve.closed());
    CHECK(result.curve.length() == doctest::Approx(result.tour.length));
    audit_tour(result.graph, result.tour);

    const auto gap = approximation_gap(*space, all_points(*space), result);
    CHECK(gap.total() <= 5.0 * eps);
}

TEST_CASE("parameterize degenerate two-point domains") {
    // both points inside one net ball: single-vertex tour of length 0
    auto s = std::make_shared<MetricSpace>(MetricSpace::euclidean({0.0, 0.05}, 1));
    const auto one = parameterize_with_details(s, all_points(*s), 2); // eps 0.25
    CHECK(one.net.members.size() == 1);
    CHECK(one.curve.length() == 0.0);
    CHECK(one.curve.vertex_count() == 1);

    // two net points: out-and-back tour of length 2d
    auto s2 = std::make_shared<MetricSpace>(MetricSpace::euclidean({0.0, 0.5}, 1));
    const auto two = parameterize_with_details(s2, all_points(*s2), 2);
    CHECK(two.net.members.size() == 2);
    CHECK(two.curve.length() == doctest::Approx(1.0));
}

TEST_CASE("parameterize an L-shaped polyline sample") {
    std::vector<std::vector<double>> pts;
    for (int k = 0; k <= 40; ++k) pts.push_back({k / 40.0, 0.0});
    for (int k = 1; k <= 40; ++k) pts.push_back({1.0, k / 40.0});
    auto space = std::make_shared<MetricSpace>(MetricSpace::euclidean(pts));
    const auto result = parameterize_with_details(space, all_points(*space), 3);
    audit_tour(result.graph, result.tour);
    // every net point appears in the tour
    std::vector<char> seen(result.graph.vertices.size(), 0);
    for (auto v : result.tour.vertex_seq) seen[v] = 1;
    for (char f : seen) CHECK(f == 1);
}

TEST_CASE("metric-backed parameterization visits net points only") {
    const auto gen = generate(parse_generator_spec("star:3:1:6"));
    auto space = gen.space;
    const auto result = parameterize_with_details(space, all_points(*space), 2);
    CHECK_FALSE(result.curve.is_euclidean());
    audit_tour(result.graph, result.tour);
    const auto gap = approximation_gap(*space, all_points(*space), result);
    CHECK(gap.set_to_curve <= std::exp2(-2.0));
    CHECK(gap.curve_to_set == 0.0); // curve vertices are domain points
}
