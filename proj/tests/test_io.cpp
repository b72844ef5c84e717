#include <doctest.h>

#include <sstream>

#include "curvelab/errors.hpp"
#include "curvelab/generators.hpp"
#include "curvelab/io.hpp"

using namespace curvelab;

TEST_CASE("point cloud CSV round trip") {
    const auto g = generate(parse_generator_spec("circle:1:16"));
    std::stringstream ss;
    write_point_cloud_csv(ss, *g.space);
    const auto back = load_point_cloud_csv(ss);
    REQUIRE(back.size() == g.space->size());
    for (PointId i = 0; i < back.size(); ++i)
        CHECK(back.dist(0, i) == g.space->dist(0, i));
}

TEST_CASE("point cloud CSV rejects garbage") {
    std::stringstream ss("1.0,2.0\nnot,a,number\n");
    CHECK_THROWS_AS(load_point_cloud_csv(ss), ValidationError);
    std::stringstream empty("# only a comment\n");
    CHECK_THROWS_AS(load_point_cloud_csv(empty), ValidationError);
}

TEST_CASE("curve CSV round trip keeps the closed flag") {
    const auto g = generate(parse_generator_spec("circle:1:12"));
    std::stringstream ss;
    write_curve_csv(ss, *g.curve);
    const Curve back = load_curve_csv(ss);
    CHECK(back.closed());
    CHECK(back.vertex_count() == 12);
    CHECK(back.length() == g.curve->length());

    std::stringstream bad("diagonal\n0,0\n1,1\n");
    CHECK_THROWS_AS(load_curve_csv(bad), ValidationError);
}

TEST_CASE("explicit metric JSON round trip") {
    const auto g = generate(parse_generator_spec("star:3:1:4"));
    std::stringstream ss;
    ss << explicit_metric_json(*g.space);
    const auto back = load_explicit_metric_json(ss);
    REQUIRE(back.size() == g.space->size());
    for (PointId i = 0; i < back.size(); ++i)
        for (PointId j = 0; j < back.size(); ++j)
            CHECK(back.dist(i, j) == doctest::Approx(g.space->dist(i, j)));

    std::stringstream bad("{\"n\": 2}");
    CHECK_THROWS_AS(load_explicit_metric_json(bad), ValidationError);
}

TEST_CASE("report JSON carries the estimator metadata") {
    FunctionalReport r;
    r.functional = "global_curvature";
    r.value = 1.5;
    r.reference = 3.0;
    r.ratio = 0.5;
    r.m = 100;
    r.seed = 42;
    r.per_ball.push_back(BallRow{2, 7, 0.5, 0.1, 0.01, 120, false, 0.0});
    const json j = report_json(r);
    CHECK(j["functional"] == "global_curvature");
    CHECK(j["value"] == 1.5);
    CHECK(j["per_ball"].size() == 1);
    CHECK(j["per_ball"][0]["center"] == 7);

    std::stringstream csv;
    write_per_ball_csv(csv, r);
    CHECK(csv.str().find("scale,center,radius") == 0);
    CHECK(csv.str().find("\n2,7,0.5") != std::string::npos);
}

TEST_CASE("svg scene renders 2-D inputs") {
    const auto g = generate(parse_generator_spec("circle:1:64"));
    const auto fam = build_family(*g.space, all_points(*g.space), 2.0, 0, 3, true);
    SvgScene scene;
    scene.add_points(*g.space);
    scene.add_curve(*g.curve);
    scene.add_balls(*g.space, fam);
    std::stringstream ss;
    scene.write(ss);
    const std::string svg = ss.str();
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(svg.find("<polygon") != std::string::npos);

    const auto star = generate(parse_generator_spec("star:3:1:4"));
    SvgScene bad;
    CHECK_THROWS_AS(bad.add_points(*star.space), UnsupportedOperation);
}
