#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace curvelab {

using PointId = std::uint32_t;

// Ordered list of point ids into a MetricSpace. Callers keep ids distinct;
// validate_subset checks when the list comes from outside.
using PointSubset = std::vector<PointId>;

// Closed metric ball: {y : dist(center, y) <= radius}.
struct Ball {
    PointId center = 0;
    double radius = 0.0;

    Ball dilated(double lambda) const { return Ball{center, lambda * radius}; }
};

// A finite metric space. One of:
//   - a Euclidean point cloud (flat row-major coordinates),
//   - an explicit symmetric distance matrix (validated at load),
//   - a snowflake transform dist^alpha of another space, alpha in (0, 1].
class MetricSpace {
public:
    static MetricSpace euclidean(std::vector<double> coords, std::size_t dim);
    static MetricSpace euclidean(const std::vector<std::vector<double>>& points);
    // Validates metric axioms (symmetry, identity, triangle inequality) and
    // throws ValidationError on failure. Checks triangles exhaustively for
    // n <= exhaustive_limit, by seeded sampling above.
    static MetricSpace explicit_matrix(std::size_t n, std::vector<double> row_major,
                                       std::size_t exhaustive_limit = 300);
    static MetricSpace power(std::shared_ptr<const MetricSpace> base, double alpha);

    std::size_t size() const { return n_; }
    double dist(PointId i, PointId j) const;

    bool is_euclidean() const { return kind_ == Kind::Euclidean; }
    std::size_t dim() const { return dim_; }
    // Coordinates of point i; only valid for Euclidean clouds.
    std::span<const double> point(PointId i) const;
    // Flat coordinate storage (Euclidean clouds).
    std::span<const double> coords() const { return data_; }

    // Dilate a Euclidean cloud by lambda (coordinates scaled).
    MetricSpace scaled(double lambda) const;

    void require_valid(PointId i) const;

private:
    enum class Kind { Euclidean, Explicit, Power };

    MetricSpace() = default;

    Kind kind_ = Kind::Euclidean;
    std::size_t n_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> data_; // coordinates (Euclidean) or distances (Explicit)
    std::shared_ptr<const MetricSpace> base_;
    double alpha_ = 1.0;
};

// All ids 0..n-1.
PointSubset all_points(const MetricSpace& space);

// Throws std::invalid_argument if ids are out of range or repeated.
void validate_subset(const MetricSpace& space, const PointSubset& subset);

// Domain points inside the closed ball, in domain order.
PointSubset ball_members(const MetricSpace& space, const Ball& ball, const PointSubset& domain);

// Max pairwise distance; 0 for a singleton. Throws std::domain_error if empty.
double subset_diam(const MetricSpace& space, const PointSubset& subset);

// Smallest positive pairwise distance; 0 if none exists (all points coincide
// or the subset is a singleton).
double min_positive_spacing(const MetricSpace& space, const PointSubset& subset);

double euclidean_dist(std::span<const double> a, std::span<const double> b);

} // namespace curvelab
