#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curvelab/beta.hpp"
#include "curvelab/curve.hpp"
#include "curvelab/metric.hpp"
#include "curvelab/nets.hpp"

namespace curvelab {

enum class EstimatorMode { Deterministic, MonteCarlo };

struct EstimatorOptions {
    std::size_t m = 200;              // quadrature samples along the curve
    EstimatorMode mode = EstimatorMode::Deterministic;
    std::uint64_t mc_samples = 1'000'000;
    std::uint64_t seed = 1;
    std::uint64_t triple_cap = 20'000'000; // per-ball deterministic limit
    unsigned threads = 1;
};

struct BallRow {
    int scale = 0;
    PointId center = 0;
    double radius = 0.0;
    double beta = 0.0;        // beta_2(B)
    double term = 0.0;        // beta^2 * radius contribution
    std::uint64_t triples = 0;
    bool monte_carlo = false;
    double std_error = 0.0;
};

struct FunctionalReport {
    std::string functional;
    double value = 0.0;
    double reference = 0.0; // H^1 length, or R for localized variants
    double ratio = 0.0;
    std::size_t m = 0;
    std::string mode = "det";
    std::uint64_t seed = 0;
    double std_error = 0.0;
    std::uint64_t triple_count = 0;
    int component_count = 1;
    double connector_length = 0.0;
    std::vector<BallRow> per_ball;
    std::vector<std::string> notes;
};

// Uniform arc-length quadrature of a curve: m midpoint samples realized as
// point ids into a metric space (a fresh cloud for Euclidean curves, the
// backing space for metric ones; ids may repeat at vertex resolution).
struct SampledCurve {
    std::shared_ptr<const MetricSpace> space;
    PointSubset ids;
    std::vector<double> weights; // length/m each
    std::vector<double> params;
    double curve_length = 0.0;
};

SampledCurve sample_curve(const Curve& curve, std::size_t m);

// Sample ids with duplicates removed, preserving order (net domains).
PointSubset unique_ids(const PointSubset& ids);

// Triple integral of delta * diam^-3 over the curve, reference H^1.
FunctionalReport global_curvature_functional(const Curve& curve, const EstimatorOptions& opts);

// Multiresolution sum of the per-ball triple integrals delta * radius^-3
// over (B ∩ samples)^3, reference H^1. Balls above the triple cap fall back
// to seeded per-ball Monte Carlo.
FunctionalReport multires_curvature_sum(const Curve& curve, double A, const EstimatorOptions& opts,
                                        std::optional<int> n_min = std::nullopt,
                                        std::optional<int> n_max = std::nullopt,
                                        bool nested = true);

// Same sum over an externally supplied family (dilation tests and localized
// variants). `reference` defaults to the total sample mass.
FunctionalReport multires_curvature_sum_over(const MetricSpace& space, const PointSubset& samples,
                                             std::span<const double> weights,
                                             const MultiresolutionFamily& family,
                                             const EstimatorOptions& opts,
                                             std::optional<double> reference = std::nullopt);

enum class LocalizedKind { Global, Multires };

struct LocalizedOptions {
    double A = 2.0;
    bool nested = true;
};

// Localized variants: the same integrands restricted to Ball(z, R) (or to
// family balls contained in it), reference R. When Gamma ∩ Ball(z, 10R) has
// several components meeting Ball(z, R), the components are chained with
// connector segments (total length recorded, bounded by 20 P R) and the
// glued curve is analyzed as one.
FunctionalReport localized_functional(const Curve& curve, double z_param, double R,
                                      LocalizedKind which, const EstimatorOptions& opts,
                                      const LocalizedOptions& lopts = {});

// Certificate sum: c^2 over comparability-filtered triples inside
// Ball(z, R), weights approximating H^1, reference R.
FunctionalReport hahlomaa_condition_sum(const MetricSpace& space, const PointSubset& samples,
                                        std::span<const double> weights, double A, PointId z,
                                        double R, const EstimatorOptions& opts = {});

struct LargeBallReport {
    std::vector<std::pair<int, std::size_t>> per_scale; // (scale, count)
    std::size_t max_count = 0;
};

// Per scale, how many balls have >= length/6 of the sample mass in 4B.
LargeBallReport large_ball_diagnostic(const SampledCurve& sc, const MultiresolutionFamily& family);

} // namespace curvelab
