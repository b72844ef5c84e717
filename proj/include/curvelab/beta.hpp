#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "curvelab/curve.hpp"
#include "curvelab/metric.hpp"
#include "curvelab/nets.hpp"

namespace curvelab {

// A line in R^d: anchor point plus unit direction.
struct LineCandidate {
    std::vector<double> point;
    std::vector<double> direction;
};

double point_line_distance(std::span<const double> x, const LineCandidate& line);

// Weighted total-least-squares line: principal axis of the weighted
// covariance through the weighted centroid. Empty weights mean uniform.
LineCandidate orthogonal_regression_line(const MetricSpace& cloud, const PointSubset& members,
                                         std::span<const double> weights = {});

struct BetaReport {
    Ball ball;
    double value = 0.0;       // the beta number
    double ball_diam = 0.0;   // normalization used: 2 * radius
    double members_diam = 0.0; // diameter of B ∩ domain, recorded alongside
    std::size_t member_count = 0;
    std::size_t candidate_count = 0; // lines tried (beta_inf / beta_p)
    std::uint64_t triple_count = 0;  // triples summed (beta2)
    bool monte_carlo = false;
    double std_error = 0.0;   // of value^2 * radius (the summed term), MC only
    double raw_integral = 0.0; // beta2: triple integral of delta before scaling
};

// beta_inf over a candidate set: all lines through point pairs in the ball
// plus the orthogonal-regression line. An upper bound on the true thinnest
// cylinder. 0 for two or fewer points. Euclidean clouds only.
BetaReport beta_inf(const MetricSpace& cloud, const Ball& ball, const PointSubset& domain);

// L^p beta against per-point masses, p in {1, 2}. p=2 uses the exact
// weighted orthogonal-regression minimizer; p=1 the beta_inf candidate set.
BetaReport beta_p(const MetricSpace& cloud, const Ball& ball, const PointSubset& domain,
                  std::span<const double> weights, int p);

struct Beta2Options {
    std::uint64_t triple_cap = 20'000'000; // ordered triples; above this, Monte Carlo
    std::uint64_t mc_samples = 1'000'000;
    std::uint64_t seed = 1;
};

// The ball functional: value^2 * radius = triple integral over (B ∩ samples)^3
// of delta * radius^-3. Samples may repeat ids; weights are the H^1
// quadrature masses, aligned with `samples`.
BetaReport beta2_ball(const MetricSpace& space, const Ball& ball, const PointSubset& samples,
                      std::span<const double> weights, const Beta2Options& opts = {});

// Jones beta of an arc: value^2 * diam(tau) = l(tau)^-3 * ordered triple
// quadrature of delta1 over a < x < y < z < b with m midpoint samples.
double beta_tilde_arc(const Curve& curve, const Arc& arc, std::size_t m);

// Sum of delta1(endpoint, midpoint, endpoint) over dyadic intervals of the
// filtration down to `depth` levels (level 1 = the full circle). Bounded by
// the curve length for closed curves (telescoping chord sums).
double dyadic_excess_sum(const Curve& curve, const DyadicFiltration& filtration, int depth);

struct BetaSumRow {
    int scale = 0;
    Ball ball;
    double beta = 0.0;
    double term = 0.0; // beta^2 * diam(B)
};

struct BetaSumReport {
    double total = 0.0;
    std::vector<BetaSumRow> rows;
};

// Multiresolution sum of beta_inf(B)^2 * diam(B) over all family balls.
BetaSumReport beta_inf_multires_sum(const MetricSpace& cloud, const PointSubset& domain,
                                    const MultiresolutionFamily& family);

} // namespace curvelab
