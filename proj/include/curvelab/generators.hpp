#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curvelab/curve.hpp"
#include "curvelab/metric.hpp"

namespace curvelab {

enum class GeneratorKind {
    Segment,
    Circle,
    Stadium,
    KochPrefix,
    LipschitzGraph,
    FourCornerCantor,
    StarTree,
    SnowflakeSegment,
};

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Circle;
    std::size_t m = 64;     // resolution: vertex count / points per arm / samples
    double scale = 1.0;     // radius, base length, arm length, or set side
    int level = 0;          // koch prefix / cantor
    double alpha = 0.5;     // snowflake exponent, in (0, 1]
    std::uint64_t seed = 1; // lipschitz graph
    double amplitude = 1.0; // lipschitz slope bound
    int arms = 3;           // star tree
    double straight = 2.0;  // stadium straight-side length
};

struct Generated {
    std::shared_ptr<const MetricSpace> space; // vertex cloud / explicit metric / snowflake
    std::optional<Curve> curve;
    std::optional<double> analytic_length; // closed-form reference length where known
    std::vector<double> weights;           // cantor: uniform masses summing to 1
    std::string description;
};

Generated generate(const GeneratorSpec& spec);

// Flag syntax, colon-separated:
//   circle:R:m     segment:L:m        stadium:R:straight:m   koch:level[:scale]
//   lipschitz:seed:amplitude:m[:scale]  cantor:level[:scale]
//   star:arms:armlen:perarm             snowflake:alpha:m[:scale]
GeneratorSpec parse_generator_spec(const std::string& text);
std::string generator_spec_string(const GeneratorSpec& spec);

} // namespace curvelab
