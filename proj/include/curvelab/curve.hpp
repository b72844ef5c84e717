#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "curvelab/metric.hpp"

namespace curvelab {

// Parameter interval [a, b] of a curve, under arc-length parameterization,
// so the arc's length is b - a. On closed curves b may exceed the curve
// length; evaluation wraps.
struct Arc {
    double a = 0.0;
    double b = 0.0;
    double length() const { return b - a; }
};

// A polyline with arc-length parameterization. Backed either by raw
// Euclidean coordinates or by point ids into a MetricSpace (in which case
// evaluation is vertex-resolution: a parameter resolves to the nearest
// vertex along the curve).
class Curve {
public:
    static Curve polyline(std::vector<double> coords, std::size_t dim, bool closed);
    static Curve polyline(const std::vector<std::vector<double>>& vertices, bool closed);
    static Curve through_points(std::shared_ptr<const MetricSpace> space, PointSubset ids,
                                bool closed);

    std::size_t vertex_count() const { return n_; }
    bool closed() const { return closed_; }
    double length() const { return length_; }
    bool is_euclidean() const { return space_ == nullptr; }
    std::size_t dim() const { return dim_; }
    const MetricSpace* space() const { return space_.get(); }
    std::shared_ptr<const MetricSpace> space_handle() const { return space_; }

    std::span<const double> vertex(std::size_t i) const; // Euclidean
    PointId vertex_id(std::size_t i) const;              // metric-backed
    double vertex_param(std::size_t i) const { return cum_[i]; }

    // Wrap a parameter into [0, length) on closed curves; validates range on
    // open curves (throws std::domain_error outside [0, length]).
    double normalize_param(double s) const;

    // gamma(s) by linear interpolation along the containing segment.
    std::vector<double> point_at(double s) const;               // Euclidean
    void point_at(double s, std::span<double> out) const;       // Euclidean, no alloc
    std::size_t vertex_index_near(double s) const;              // nearest vertex in parameter

    // Distance between gamma(s) and gamma(t) in the ambient metric.
    double dist_at(double s, double t) const;

    // Midpoint-rule parameters: m values (k + 1/2) * (b - a) / m + a.
    std::vector<double> sample_params(std::size_t m) const; // over [0, length]
    std::vector<double> sample_params(std::size_t m, double a, double b) const;

    Curve scaled(double lambda) const; // Euclidean dilation

private:
    Curve() = default;
    void finish(bool closed);

    std::size_t n_ = 0;
    std::size_t dim_ = 0;
    bool closed_ = false;
    double length_ = 0.0;
    std::vector<double> coords_;  // Euclidean backing
    std::shared_ptr<const MetricSpace> space_; // metric backing
    PointSubset ids_;
    std::vector<double> cum_; // cum_[i] = arc length from vertex 0 to vertex i

    double segment_length(std::size_t i) const; // segment i -> i+1 (wraps)
};

struct DistanceMatrix {
    std::size_t n = 0;
    std::vector<double> d;
    double operator()(std::size_t i, std::size_t j) const { return d[i * n + j]; }
};

// Pairwise ambient distances between curve points at the given parameters.
DistanceMatrix sample_distances(const Curve& curve, std::span<const double> params);

// Dyadic decompositions of the circle of unit total length. The rotated
// filtration is offset by one third of a full turn.
struct DyadicFiltration {
    bool rotated = false;
    int max_depth = 48;
    double offset() const { return rotated ? 1.0 / 3.0 : 0.0; }
};

struct DyadicInterval {
    int filtration = 0; // 0 = standard, 1 = rotated by 1/3
    int level = 0;      // 2^level intervals of length 2^-level
    std::uint64_t index = 0;
    double lo = 0.0;  // start position on the unit circle
    double len = 0.0;
};

// One-third trick: a containing dyadic interval for J = [lo, lo+len) on the
// unit circle with len < 1/6, from either filtration, with |I| <= 6*len.
// Deterministic: the smallest qualifying interval wins, the standard
// filtration preferred on ties. Throws std::domain_error for len outside
// (0, 1/6).
DyadicInterval one_third_containing(double lo, double len);

// Maximal parameter intervals of the curve whose image lies in the closed
// ball of the given radius. Euclidean curves use exact per-segment crossing
// interpolation; metric-backed curves use vertex resolution.
std::vector<Arc> lambda_components(const Curve& curve, std::span<const double> center,
                                   double radius);
std::vector<Arc> lambda_components(const Curve& curve, PointId center, double radius);

// For a component arc of ball B, the component of the dilated ball that
// contains it (the extension tau^i for 2^i B). curve_length handles
// wrap-represented components on closed curves.
Arc extend_to_component(const Arc& arc, const std::vector<Arc>& dilated_components,
                        double curve_length);

struct RegularityTrial {
    std::vector<double> center; // Euclidean coords; empty for id-based trials
    PointId center_id = 0;
    double radius = 0.0;
};

struct RegularityRow {
    RegularityTrial trial;
    double mu = 0.0;    // parameter measure of the ball preimage
    double ratio = 0.0; // max(r/mu, mu/r)
};

struct RegularityReport {
    double c_hat = 0.0;
    std::size_t argmax_index = 0;
    std::vector<RegularityRow> rows;
};

// Empirical Ahlfors-regularity constant over the supplied trials.
RegularityReport measure_regularity(const Curve& curve,
                                    const std::vector<RegularityTrial>& trials);

} // namespace curvelab
