#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "curvelab/curve.hpp"
#include "curvelab/metric.hpp"
#include "curvelab/nets.hpp"

namespace curvelab {

// Spanning structure over net points: edges added shortest-first between
// points closer than the connection radius that are not yet in the same
// component, so the result is a forest (a tree when connected).
struct NetGraph {
    PointSubset vertices; // net member ids (into the ambient space)
    struct Edge {
        std::uint32_t u = 0, v = 0; // indices into vertices
        double length = 0.0;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<std::uint32_t>> adjacency; // edge indices per vertex
    double connect_radius = 0.0;
    bool conformant = true; // false when a non-default radius override was used

    double total_length() const;
};

// Connection radius is 8 * net.epsilon (the 2^{-n+3} rule). Throws
// DisconnectedError when two components remain at distance >= the radius.
NetGraph build_net_graph(const MetricSpace& space, const Net& net);
NetGraph build_net_graph(const MetricSpace& space, const Net& net, double connect_radius);

// Closed walk traversing every edge exactly twice, once per direction.
struct Tour {
    std::vector<std::uint32_t> vertex_seq; // 2E+1 entries, first == last
    std::vector<std::uint32_t> edge_seq;   // 2E entries
    double length = 0.0;
};

Tour double_euler_tour(const NetGraph& graph);

struct ParameterizationResult {
    Net net;
    NetGraph graph;
    Tour tour;
    Curve curve; // closed polyline through the tour's net points
};

// The full pipeline: 2^-n net of the domain, net graph, doubled Euler tour,
// realized as a closed curve. The space handle is shared so metric-backed
// curves stay valid. A connect_radius override replaces the 8 * 2^-n rule
// and marks the graph non-conformant.
ParameterizationResult parameterize_with_details(
    std::shared_ptr<const MetricSpace> space, const PointSubset& domain, int scale_n,
    NetOrder order = NetOrder::Input, std::optional<double> connect_radius = std::nullopt);

Curve parameterize_connected_set(std::shared_ptr<const MetricSpace> space,
                                 const PointSubset& domain, int scale_n,
                                 NetOrder order = NetOrder::Input,
                                 std::optional<double> connect_radius = std::nullopt);

struct GapReport {
    double set_to_curve = 0.0; // sup over domain of dist to the curve
    double curve_to_set = 0.0; // sup over curve samples of dist to the domain
    double total() const { return set_to_curve + curve_to_set; }
};

// Two-sided approximation gap between the domain sample and the tour curve.
// Euclidean curves measure true point-to-segment distances; metric-backed
// curves measure against tour vertices.
GapReport approximation_gap(const MetricSpace& space, const PointSubset& domain,
                            const ParameterizationResult& result);

} // namespace curvelab
