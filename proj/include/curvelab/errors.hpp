#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace curvelab {

// Input data failed a structural check (metric axioms, malformed file).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A net graph could not be connected: two components remained at distance
// >= the connection radius. Carries one representative point id per side.
class DisconnectedError : public std::runtime_error {
public:
    DisconnectedError(const std::string& what, std::uint32_t rep_a, std::uint32_t rep_b,
                      double gap, double connect_radius)
        : std::runtime_error(what),
          component_a(rep_a),
          component_b(rep_b),
          gap(gap),
          connect_radius(connect_radius) {}

    std::uint32_t component_a;
    std::uint32_t component_b;
    double gap;
    double connect_radius;
};

// Operation requested on a space kind that cannot support it
// (e.g. a line-fitting beta number on an explicit metric).
class UnsupportedOperation : public std::runtime_error {
public:
    explicit UnsupportedOperation(const std::string& what) : std::runtime_error(what) {}
};

} // namespace curvelab
