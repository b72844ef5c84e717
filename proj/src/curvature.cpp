#include "curvelab/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace curvelab {

namespace {
constexpr double kCollinearAreaTol = 1e-14; // times max_side^2
}

TripleDistances triple_distances(const MetricSpace& space, PointId x1, PointId x2, PointId x3) {
    return TripleDistances{space.dist(x1, x2), space.dist(x2, x3), space.dist(x1, x3)};
}

double triple_diam(const TripleDistances& t) {
    return std::max(t.d12, std::max(t.d23, t.d13));
}

double delta1(const TripleDistances& t) {
    return t.d12 + t.d23 - t.d13;
}

double delta1(const MetricSpace& space, PointId x1, PointId x2, PointId x3) {
    return delta1(triple_distances(space, x1, x2, x3));
}

double delta_min(const TripleDistances& t) {
    // min over middle choices = (d12 + d23 + d13) - 2 * max
    return t.d12 + t.d23 + t.d13 - 2.0 * triple_diam(t);
}

double delta_min(const MetricSpace& space, PointId x1, PointId x2, PointId x3) {
    return delta_min(triple_distances(space, x1, x2, x3));
}

double menger(const TripleDistances& t) {
    double a = t.d12, b = t.d23, c = t.d13;
    if (a <= 0.0 || b <= 0.0 || c <= 0.0) return 0.0;
    // sort a >= b >= c
    if (a < b) std::swap(a, b);
    if (b < c) std::swap(b, c);
    if (a < b) std::swap(a, b);
    // Kahan's stable Heron form; the (c - (a - b)) factor carries the
    // cancellation and stays accurate for needle triangles.
    const double f1 = a + (b + c);
    const double f2 = c - (a - b);
    const double f3 = c + (a - b);
    const double f4 = a + (b - c);
    if (f2 <= 0.0) return 0.0; // flat within rounding of a metric triple
    const double area = 0.25 * std::sqrt(f1 * f2 * f3 * f4);
    if (area < kCollinearAreaTol * a * a) return 0.0;
    return 4.0 * area / (a * b * c);
}

double menger(const MetricSpace& space, PointId x1, PointId x2, PointId x3) {
    return menger(triple_distances(space, x1, x2, x3));
}

bool is_comparable(const TripleDistances& t, double comp) {
    if (comp < 1.0) throw std::domain_error("is_comparable: scale factor must be >= 1");
    const double mn = std::min(t.d12, std::min(t.d23, t.d13));
    if (mn <= 0.0) return false;
    return comp * mn >= triple_diam(t);
}

bool is_comparable(const MetricSpace& space, PointId x1, PointId x2, PointId x3, double comp) {
    return is_comparable(triple_distances(space, x1, x2, x3), comp);
}

} // namespace curvelab
