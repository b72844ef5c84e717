#pragma once

#include "curvelab/metric.hpp"

namespace curvelab {

// The three pairwise distances of a triple, in the index convention
// d12 = dist(x1,x2), d23 = dist(x2,x3), d13 = dist(x1,x3).
struct TripleDistances {
    double d12 = 0.0;
    double d23 = 0.0;
    double d13 = 0.0;
};

TripleDistances triple_distances(const MetricSpace& space, PointId x1, PointId x2, PointId x3);

double triple_diam(const TripleDistances& t);

// Ordered excess dist(x1,x2) + dist(x2,x3) - dist(x1,x3); nonnegative for
// metric inputs by the triangle inequality.
double delta1(const TripleDistances& t);
double delta1(const MetricSpace& space, PointId x1, PointId x2, PointId x3);

// Unordered excess: the minimum of delta1 over the three middle-point
// choices, equal to (sum of the two smallest distances) - (the largest).
double delta_min(const TripleDistances& t);
double delta_min(const MetricSpace& space, PointId x1, PointId x2, PointId x3);

// Menger curvature: reciprocal circumradius of the planar triangle realizing
// the three distances (4*Area / product of sides). Collinear or degenerate
// triples map to 0.
double menger(const TripleDistances& t);
double menger(const MetricSpace& space, PointId x1, PointId x2, PointId x3);

// True iff scale * (minimum pairwise distance) covers the triple's diameter:
// comp * min >= diam. Any coincident pair makes the triple non-comparable.
bool is_comparable(const TripleDistances& t, double comp);
bool is_comparable(const MetricSpace& space, PointId x1, PointId x2, PointId x3, double comp);

} // namespace curvelab
