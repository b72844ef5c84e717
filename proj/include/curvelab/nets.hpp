#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "curvelab/metric.hpp"

namespace curvelab {

enum class NetOrder {
    Input,         // greedy insertion in domain order (deterministic default)
    FarthestFirst, // farthest-point sampling, ties broken by lowest id
};

// Maximal epsilon-separated subset of a domain: members pairwise > epsilon
// apart, every domain point within <= epsilon of some member.
struct Net {
    double epsilon = 0.0;
    PointSubset members;
    PointSubset domain;
};

Net build_net(const MetricSpace& space, const PointSubset& domain, double epsilon,
              NetOrder order = NetOrder::Input);

// Seeded variant: `seed` points are kept as members unconditionally (they
// must already be epsilon-separated); remaining domain points are inserted
// greedily. Used for nested multiresolution families.
Net build_net_seeded(const MetricSpace& space, const PointSubset& domain, double epsilon,
                     const PointSubset& seed, NetOrder order = NetOrder::Input);

// Per-scale 2^-n nets of K together with the balls Ball(x, A*2^-n) centered
// at net points, for n in [n_min, n_max].
struct MultiresolutionFamily {
    double A = 2.0;
    int n_min = 0;
    int n_max = 0;
    bool nested = false;
    std::vector<Net> nets;                 // index s => scale n_min + s
    std::vector<std::vector<Ball>> balls;  // same indexing
    std::vector<std::string> warnings;

    int scale_count() const { return n_max - n_min + 1; }
    int scale_at(std::size_t index) const { return n_min + static_cast<int>(index); }
    double radius_at(int n) const { return A * std::exp2(static_cast<double>(-n)); }
    std::size_t total_balls() const;

    // Same centers and structure with every epsilon and radius multiplied by
    // lambda: the image of this family under a dilation of the space.
    MultiresolutionFamily scaled(double lambda) const;
};

// Scale-range defaults on a finite sample: coarsest n with 2^-n >= diam(K),
// finest n with 2^-n below the minimum positive spacing (finer scales only
// repeat the full domain).
int default_n_min(const MetricSpace& space, const PointSubset& K);
int default_n_max(const MetricSpace& space, const PointSubset& K);

MultiresolutionFamily build_family(const MetricSpace& space, const PointSubset& K, double A,
                                   std::optional<int> n_min = std::nullopt,
                                   std::optional<int> n_max = std::nullopt, bool nested = true,
                                   NetOrder order = NetOrder::Input);

} // namespace curvelab
