#include "curvelab/spanning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "curvelab/errors.hpp"

namespace curvelab {

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b); // keep the smaller root, fully deterministic
        parent[b] = a;
        return true;
    }
};

} // namespace

double NetGraph::total_length() const {
    double s = 0.0;
    for (const auto& e : edges) s += e.length;
    return s;
}

NetGraph build_net_graph(const MetricSpace& space, const Net& net) {
    return build_net_graph(space, net, 8.0 * net.epsilon);
}

NetGraph build_net_graph(const MetricSpace& space, const Net& net, double connect_radius) {
    if (!(connect_radius > 0.0))
        throw std::domain_error("build_net_graph: connection radius must be positive");
    NetGraph g;
    g.vertices = net.members;
    g.connect_radius = connect_radius;
    g.conformant = connect_radius == 8.0 * net.epsilon;
    const std::size_t n = g.vertices.size();
    g.adjacency.resize(n);
    if (n <= 1) return g;

    struct Cand {
        double length;
        std::uint32_t u, v;
    };
    std::vector<Cand> cands;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) {
            const double d = space.dist(g.vertices[i], g.vertices[j]);
            if (d < connect_radius) cands.push_back(Cand{d, i, j});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.length != b.length) return a.length < b.length;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });

    UnionFind uf(n);
    for (const Cand& c : cands) {
        if (!uf.unite(c.u, c.v)) continue;
        const auto e = static_cast<std::uint32_t>(g.edges.size());
        g.edges.push_back(NetGraph::Edge{c.u, c.v, c.length});
        g.adjacency[c.u].push_back(e);
        g.adjacency[c.v].push_back(e);
    }

    // connectivity check; on failure report the closest pair of points in
    // distinct components (their distance is necessarily >= the radius)
    const std::uint32_t root = uf.find(0);
    std::uint32_t other = n;
    for (std::uint32_t i = 1; i < n; ++i)
        if (uf.find(i) != root) {
            other = i;
            break;
        }
    if (other != n) {
        double best = std::numeric_limits<double>::infinity();
        std::uint32_t ba = 0, bb = other;
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = i + 1; j < n; ++j) {
                if (uf.find(i) == uf.find(j)) continue;
                const double d = space.dist(g.vertices[i], g.vertices[j]);
                if (d < best) {
                    best = d;
                    ba = i;
                    bb = j;
                }
            }
        throw DisconnectedError(
            "net graph disconnected: points " + std::to_string(g.vertices[ba]) + " and " +
                std::to_string(g.vertices[bb]) + " lie in different components at distance " +
                std::to_string(best) + " >= connection radius " + std::to_string(connect_radius),
            g.vertices[ba], g.vertices[bb], best, connect_radius);
    }
    return g;
}

Tour double_euler_tour(const NetGraph& graph) {
    const std::size_t n = graph.vertices.size();
    if (n == 0) throw std::domain_error("double_euler_tour: empty graph");
    Tour tour;
    if (graph.edges.empty()) {
        tour.vertex_seq = {0};
        return tour;
    }

    // Hierholzer on the bidirected multigraph: arcs (e, dir) for each edge.
    // All in/out degrees are even, so a circuit through every arc exists.
    const std::size_t m = graph.edges.size();
    std::vector<char> arc_used(2 * m, 0); // arc 2e = u->v, 2e+1 = v->u
    std::vector<std::size_t> next_arc(n, 0);

    // per-vertex outgoing arcs, ordered by edge index
    std::vector<std::vector<std::uint32_t>> out(n);
    for (std::uint32_t e = 0; e < m; ++e) {
        out[graph.edges[e].u].push_back(2 * e);
        out[graph.edges[e].v].push_back(2 * e + 1);
    }

    auto arc_head = [&](std::uint32_t arc) {
        const auto& e = graph.edges[arc / 2];
        return (arc & 1u) == 0 ? e.v : e.u;
    };

    std::vector<std::uint32_t> stack{0}; // lowest-id start vertex
    std::vector<std::uint32_t> circuit_v;
    while (!stack.empty()) {
        const std::uint32_t v = stack.back();
        bool advanced = false;
        while (next_arc[v] < out[v].size()) {
            const std::uint32_t arc = out[v][next_arc[v]];
            ++next_arc[v];
            if (arc_used[arc]) continue;
            arc_used[arc] = 1;
            stack.push_back(arc_head(arc));
            advanced = true;
            break;
        }
        if (!advanced) {
            circuit_v.push_back(v);
            stack.pop_back();
        }
    }
    std::reverse(circuit_v.begin(), circuit_v.end());
    tour.vertex_seq = std::move(circuit_v);

    // the graph is a forest, so a vertex pair determines its edge
    std::vector<std::uint32_t> edge_at; // lookup by packed pair
    {
        std::unordered_map<std::uint64_t, std::uint32_t> lookup;
        lookup.reserve(m * 2);
        for (std::uint32_t e = 0; e < m; ++e) {
            const auto& ed = graph.edges[e];
            lookup[(static_cast<std::uint64_t>(ed.u) << 32) | ed.v] = e;
            lookup[(static_cast<std::uint64_t>(ed.v) << 32) | ed.u] = e;
        }
        tour.edge_seq.reserve(tour.vertex_seq.size() - 1);
        for (std::size_t i = 0; i + 1 < tour.vertex_seq.size(); ++i) {
            const std::uint64_t key =
                (static_cast<std::uint64_t>(tour.vertex_seq[i]) << 32) | tour.vertex_seq[i + 1];
            tour.edge_seq.push_back(lookup.at(key));
        }
    }
    for (std::uint32_t e : tour.edge_seq) tour.length += graph.edges[e].length;
    return tour;
}

ParameterizationResult parameterize_with_details(std::shared_ptr<const MetricSpace> space,
                                                 const PointSubset& domain, int scale_n,
                                                 NetOrder order,
                                                 std::optional<double> connect_radius) {
    if (!space) throw std::invalid_argument("parameterize: null space");
    const double eps = std::exp2(static_cast<double>(-scale_n));
    Net net = build_net(*space, domain, eps, order);
    NetGraph graph = connect_radius ? build_net_graph(*space, net, *connect_radius)
                                    : build_net_graph(*space, net);
    Tour tour = double_euler_tour(graph);

    // realize the tour as a closed polyline through net points
    Curve curve = [&] {
        if (tour.vertex_seq.size() <= 1) {
            // single net point: degenerate closed curve
            const PointId id = graph.vertices.front();
            if (space->is_euclidean()) {
                const auto p = space->point(id);
                return Curve::polyline(std::vector<double>(p.begin(), p.end()), space->dim(),
                                       true);
            }
            return Curve::through_points(space, PointSubset{id}, true);
        }
        const std::size_t steps = tour.vertex_seq.size() - 1; // last repeats the first
        if (space->is_euclidean()) {
            const std::size_t d = space->dim();
            std::vector<double> coords(steps * d);
            for (std::size_t i = 0; i < steps; ++i) {
                const auto p = space->point(graph.vertices[tour.vertex_seq[i]]);
                std::copy(p.begin(), p.end(), coords.begin() + i * d);
            }
            return Curve::polyline(std::move(coords), d, true);
        }
        PointSubset ids(steps);
        for (std::size_t i = 0; i < steps; ++i) ids[i] = graph.vertices[tour.vertex_seq[i]];
        return Curve::through_points(space, std::move(ids), true);
    }();

    return ParameterizationResult{std::move(net), std::move(graph), std::move(tour),
                                  std::move(curve)};
}

Curve parameterize_connected_set(std::shared_ptr<const MetricSpace> space,
                                 const PointSubset& domain, int scale_n, NetOrder order,
                                 std::optional<double> connect_radius) {
    return parameterize_with_details(std::move(space), domain, scale_n, order, connect_radius)
        .curve;
}

namespace {

double point_segment_dist(std::span<const double> x, std::span<const double> a,
                          std::span<const double> b) {
    double ab2 = 0.0, t = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double d = b[k] - a[k];
        ab2 += d * d;
        t += (x[k] - a[k]) * d;
    }
    const double u = ab2 > 0.0 ? std::clamp(t / ab2, 0.0, 1.0) : 0.0;
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double p = a[k] + u * (b[k] - a[k]);
        const double d = x[k] - p;
        s += d * d;
    }
    return std::sqrt(s);
}

} // namespace

GapReport approximation_gap(const MetricSpace& space, const PointSubset& domain,
                            const ParameterizationResult& result) {
    GapReport gap;
    const auto& verts = result.graph.vertices;
    if (space.is_euclidean()) {
        // domain -> curve: exact point-to-edge distances
        for (PointId y : domain) {
            const auto py = space.point(y);
            double best = std::numeric_limits<double>::infinity();
            if (result.graph.edges.empty()) {
                best = space.dist(y, verts.front());
            } else {
                for (const auto& e : result.graph.edges)
                    best = std::min(best, point_segment_dist(py, space.point(verts[e.u]),
                                                             space.point(verts[e.v])));
            }
            gap.set_to_curve = std::max(gap.set_to_curve, best);
        }
        // curve -> domain: sample each edge
        constexpr int kSub = 16;
        auto min_to_domain = [&](std::span<const double> p) {
            double best = std::numeric_limits<double>::infinity();
            for (PointId y : domain) best = std::min(best, euclidean_dist(p, space.point(y)));
            return best;
        };
        if (result.graph.edges.empty()) {
            gap.curve_to_set = min_to_domain(space.point(verts.front()));
        } else {
            std::vector<double> p(space.dim());
            for (const auto& e : result.graph.edges) {
                const auto pa = space.point(verts[e.u]);
                const auto pb = space.point(verts[e.v]);
                for (int s = 0; s <= kSub; ++s) {
                    const double t = static_cast<double>(s) / kSub;
                    for (std::size_t k = 0; k < p.size(); ++k)
                        p[k] = pa[k] + t * (pb[k] - pa[k]);
                    gap.curve_to_set = std::max(gap.curve_to_set, min_to_domain(p));
                }
            }
        }
    } else {
        for (PointId y : domain) {
            double best = std::numeric_limits<double>::infinity();
            for (PointId v : verts) best = std::min(best, space.dist(y, v));
            gap.set_to_curve = std::max(gap.set_to_curve, best);
        }
        for (PointId v : verts) {
            double best = std::numeric_limits<double>::infinity();
            for (PointId y : domain) best = std::min(best, space.dist(v, y));
            gap.curve_to_set = std::max(gap.curve_to_set, best);
        }
    }
    return gap;
}

} // namespace curvelab
