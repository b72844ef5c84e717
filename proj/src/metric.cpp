#include "curvelab/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "curvelab/errors.hpp"
#include "curvelab/rng.hpp"

namespace curvelab {

namespace {

constexpr double kSymmetryTol = 1e-12;      // absolute, on matrix entries
constexpr double kTriangleTolPerScale = 1e-9; // times the largest entry

void check_explicit_matrix(std::size_t n, std::vector<double>& d, std::size_t exhaustive_limit) {
    if (d.size() != n * n)
        throw ValidationError("explicit metric: matrix size " + std::to_string(d.size()) +
                              " does not match n*n = " + std::to_string(n * n));
    double scale = 0.0;
    for (double v : d) {
        if (!std::isfinite(v)) throw ValidationError("explicit metric: non-finite entry");
        scale = std::max(scale, std::abs(v));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(d[i * n + i]) > kSymmetryTol * std::max(1.0, scale))
            throw ValidationError("explicit metric: nonzero diagonal at i=" + std::to_string(i));
        d[i * n + i] = 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = d[i * n + j], b = d[j * n + i];
            if (std::abs(a - b) > kSymmetryTol * std::max(1.0, scale))
                throw ValidationError("explicit metric: asymmetry at (" + std::to_string(i) +
                                      "," + std::to_string(j) + "): " + std::to_string(a) +
                                      " vs " + std::to_string(b));
            const double sym = 0.5 * (a + b);
            if (sym <= 0.0)
                throw ValidationError("explicit metric: non-positive distance at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
            d[i * n + j] = d[j * n + i] = sym;
        }
    }
    const double tri_tol = kTriangleTolPerScale * std::max(1.0, scale);
    auto violates = [&](std::size_t i, std::size_t j, std::size_t k) {
        return d[i * n + k] > d[i * n + j] + d[j * n + k] + tri_tol;
    };
    if (n <= exhaustive_limit) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = i + 1; k < n; ++k)
                    if (j != i && j != k && violates(i, j, k))
                        throw ValidationError(
                            "explicit metric: triangle inequality fails for (" +
                            std::to_string(i) + "," + std::to_string(j) + "," +
                            std::to_string(k) + ")");
    } else {
        SplitMix64 rng(0x7e3a11c9u);
        for (int t = 0; t < 200000; ++t) {
            const auto i = static_cast<std::size_t>(rng.next_below(n));
            const auto j = static_cast<std::size_t>(rng.next_below(n));
            const auto k = static_cast<std::size_t>(rng.next_below(n));
            if (i == j || j == k || i == k) continue;
            if (violates(i, j, k))
                throw ValidationError("explicit metric: triangle inequality fails for (" +
                                      std::to_string(i) + "," + std::to_string(j) + "," +
                                      std::to_string(k) + ") [sampled]");
        }
    }
}

} // namespace

MetricSpace MetricSpace::euclidean(std::vector<double> coords, std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("euclidean cloud: dim must be positive");
    if (coords.empty() || coords.size() % dim != 0)
        throw std::invalid_argument("euclidean cloud: coordinate count not a multiple of dim");
    for (double v : coords)
        if (!std::isfinite(v)) throw ValidationError("euclidean cloud: non-finite coordinate");
    MetricSpace s;
    s.kind_ = Kind::Euclidean;
    s.dim_ = dim;
    s.n_ = coords.size() / dim;
    s.data_ = std::move(coords);
    return s;
}

MetricSpace MetricSpace::euclidean(const std::vector<std::vector<double>>& points) {
    if (points.empty()) throw std::invalid_argument("euclidean cloud: no points");
    const std::size_t dim = points.front().size();
    std::vector<double> flat;
    flat.reserve(points.size() * dim);
    for (const auto& p : points) {
        if (p.size() != dim)
            throw std::invalid_argument("euclidean cloud: ragged coordinate rows");
        flat.insert(flat.end(), p.begin(), p.end());
    }
    return euclidean(std::move(flat), dim);
}

MetricSpace MetricSpace::explicit_matrix(std::size_t n, std::vector<double> row_major,
                                         std::size_t exhaustive_limit) {
    if (n == 0) throw std::invalid_argument("explicit metric: n must be positive");
    check_explicit_matrix(n, row_major, exhaustive_limit);
    MetricSpace s;
    s.kind_ = Kind::Explicit;
    s.n_ = n;
    s.data_ = std::move(row_major);
    return s;
}

MetricSpace MetricSpace::power(std::shared_ptr<const MetricSpace> base, double alpha) {
    if (!base) throw std::invalid_argument("power transform: null base");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::domain_error("power transform: alpha must lie in (0, 1]");
    MetricSpace s;
    s.kind_ = Kind::Power;
    s.n_ = base->size();
    s.base_ = std::move(base);
    s.alpha_ = alpha;
    return s;
}

void MetricSpace::require_valid(PointId i) const {
    if (i >= n_)
        throw std::invalid_argument("point id " + std::to_string(i) + " out of range (n = " +
                                    std::to_string(n_) + ")");
}

double MetricSpace::dist(PointId i, PointId j) const {
    require_valid(i);
    require_valid(j);
    switch (kind_) {
    case Kind::Euclidean: {
        if (i == j) return 0.0;
        const double* a = data_.data() + static_cast<std::size_t>(i) * dim_;
        const double* b = data_.data() + static_cast<std::size_t>(j) * dim_;
        double s = 0.0;
        for (std::size_t k = 0; k < dim_; ++k) {
            const double t = a[k] - b[k];
            s += t * t;
        }
        return std::sqrt(s);
    }
    case Kind::Explicit:
        return data_[static_cast<std::size_t>(i) * n_ + j];
    case Kind::Power:
        return std::pow(base_->dist(i, j), alpha_);
    }
    return 0.0;
}

std::span<const double> MetricSpace::point(PointId i) const {
    require_valid(i);
    if (kind_ != Kind::Euclidean)
        throw UnsupportedOperation("point coordinates require a Euclidean cloud");
    return {data_.data() + static_cast<std::size_t>(i) * dim_, dim_};
}

MetricSpace MetricSpace::scaled(double lambda) const {
    if (kind_ != Kind::Euclidean)
        throw UnsupportedOperation("scaled() requires a Euclidean cloud");
    if (!(lambda > 0.0)) throw std::domain_error("scaled: lambda must be positive");
    std::vector<double> c(data_);
    for (double& v : c) v *= lambda;
    return euclidean(std::move(c), dim_);
}

PointSubset all_points(const MetricSpace& space) {
    PointSubset ids(space.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<PointId>(i);
    return ids;
}

void validate_subset(const MetricSpace& space, const PointSubset& subset) {
    std::unordered_set<PointId> seen;
    seen.reserve(subset.size());
    for (PointId id : subset) {
        space.require_valid(id);
        if (!seen.insert(id).second)
            throw std::invalid_argument("point subset: repeated id " + std::to_string(id));
    }
}

PointSubset ball_members(const MetricSpace& space, const Ball& ball, const PointSubset& domain) {
    space.require_valid(ball.center);
    PointSubset out;
    for (PointId id : domain)
        if (space.dist(ball.center, id) <= ball.radius) out.push_back(id);
    return out;
}

double subset_diam(const MetricSpace& space, const PointSubset& subset) {
    if (subset.empty()) throw std::domain_error("subset_diam: empty subset");
    double d = 0.0;
    for (std::size_t i = 0; i < subset.size(); ++i)
        for (std::size_t j = i + 1; j < subset.size(); ++j)
            d = std::max(d, space.dist(subset[i], subset[j]));
    return d;
}

double min_positive_spacing(const MetricSpace& space, const PointSubset& subset) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < subset.size(); ++i)
        for (std::size_t j = i + 1; j < subset.size(); ++j) {
            const double d = space.dist(subset[i], subset[j]);
            if (d > 0.0) best = std::min(best, d);
        }
    return std::isfinite(best) ? best : 0.0;
}

double euclidean_dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double t = a[k] - b[k];
        s += t * t;
    }
    return std::sqrt(s);
}

} // namespace curvelab
