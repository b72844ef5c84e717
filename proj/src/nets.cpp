#include "curvelab/nets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace curvelab {

namespace {

Net greedy_input_order(const MetricSpace& space, const PointSubset& domain, double epsilon,
                       const PointSubset& seed) {
    Net net;
    net.epsilon = epsilon;
    net.domain = domain;
    net.members = seed;
    for (PointId cand : domain) {
        bool separated = true;
        for (PointId m : net.members) {
            if (m == cand || space.dist(m, cand) <= epsilon) {
                separated = false;
                break;
            }
        }
        if (separated) net.members.push_back(cand);
    }
    return net;
}

Net farthest_first(const MetricSpace& space, const PointSubset& domain, double epsilon,
                   const PointSubset& seed) {
    Net net;
    net.epsilon = epsilon;
    net.domain = domain;
    net.members = seed;
    const std::size_t n = domain.size();
    std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
    auto absorb = [&](PointId m) {
        for (std::size_t i = 0; i < n; ++i)
            min_dist[i] = std::min(min_dist[i], space.dist(m, domain[i]));
    };
    for (PointId m : net.members) absorb(m);
    if (net.members.empty()) {
        net.members.push_back(domain.front());
        absorb(domain.front());
    }
    for (;;) {
        std::size_t best = n;
        double best_d = epsilon;
        for (std::size_t i = 0; i < n; ++i) {
            if (min_dist[i] > best_d) {
                best_d = min_dist[i];
                best = i;
            }
        }
        if (best == n) break; // everything covered within epsilon
        net.members.push_back(domain[best]);
        absorb(domain[best]);
    }
    return net;
}

Net build_impl(const MetricSpace& space, const PointSubset& domain, double epsilon,
               const PointSubset& seed, NetOrder order) {
    if (!(epsilon > 0.0)) throw std::domain_error("build_net: epsilon must be positive");
    if (domain.empty()) throw std::domain_error("build_net: empty domain");
    switch (order) {
    case NetOrder::Input:
        return greedy_input_order(space, domain, epsilon, seed);
    case NetOrder::FarthestFirst:
        return farthest_first(space, domain, epsilon, seed);
    }
    throw std::logic_error("build_net: unknown order policy");
}

} // namespace

Net build_net(const MetricSpace& space, const PointSubset& domain, double epsilon,
              NetOrder order) {
    return build_impl(space, domain, epsilon, {}, order);
}

Net build_net_seeded(const MetricSpace& space, const PointSubset& domain, double epsilon,
                     const PointSubset& seed, NetOrder order) {
    return build_impl(space, domain, epsilon, seed, order);
}

std::size_t MultiresolutionFamily::total_balls() const {
    std::size_t c = 0;
    for (const auto& bs : balls) c += bs.size();
    return c;
}

MultiresolutionFamily MultiresolutionFamily::scaled(double lambda) const {
    if (!(lambda > 0.0)) throw std::domain_error("family scaled: lambda must be positive");
    MultiresolutionFamily out = *this;
    for (auto& net : out.nets) net.epsilon *= lambda;
    for (auto& bs : out.balls)
        for (auto& b : bs) b.radius *= lambda;
    return out;
}

int default_n_min(const MetricSpace& space, const PointSubset& K) {
    const double diam = subset_diam(space, K);
    if (diam <= 0.0) return 0;
    // largest n with 2^-n >= diam
    int n = static_cast<int>(std::floor(std::log2(1.0 / diam)));
    while (std::exp2(static_cast<double>(-n)) < diam) --n;
    while (std::exp2(static_cast<double>(-(n + 1))) >= diam) ++n;
    return n;
}

int default_n_max(const MetricSpace& space, const PointSubset& K) {
    const double spacing = min_positive_spacing(space, K);
    if (spacing <= 0.0) return default_n_min(space, K);
    // smallest n with 2^-n < spacing
    int n = static_cast<int>(std::ceil(std::log2(1.0 / spacing)));
    while (std::exp2(static_cast<double>(-n)) >= spacing) ++n;
    while (n > 0 && std::exp2(static_cast<double>(-(n - 1))) < spacing) --n;
    return n;
}

MultiresolutionFamily build_family(const MetricSpace& space, const PointSubset& K, double A,
                                   std::optional<int> n_min, std::optional<int> n_max, bool nested,
                                   NetOrder order) {
    if (!(A > 1.0)) throw std::domain_error("build_family: A must exceed 1");
    if (K.empty()) throw std::domain_error("build_family: empty point set");

    MultiresolutionFamily fam;
    fam.A = A;
    fam.nested = nested;
    fam.n_min = n_min ? *n_min : default_n_min(space, K);
    fam.n_max = n_max ? *n_max : default_n_max(space, K);
    if (fam.n_min > fam.n_max)
        throw std::domain_error("build_family: n_min exceeds n_max");

    if (nested) {
        const double diam = subset_diam(space, K);
        if (std::exp2(static_cast<double>(-fam.n_min)) < diam)
            fam.warnings.push_back("nested family with 2^-n_min < diam(K); coarsest net may "
                                   "hold more than one point");
    }

    for (int n = fam.n_min; n <= fam.n_max; ++n) {
        const double eps = std::exp2(static_cast<double>(-n));
        Net net;
        if (nested && !fam.nets.empty())
            net = build_net_seeded(space, K, eps, fam.nets.back().members, order);
        else
            net = build_net(space, K, eps, order);
        std::vector<Ball> balls;
        balls.reserve(net.members.size());
        const double radius = A * eps;
        for (PointId x : net.members) balls.push_back(Ball{x, radius});
        fam.nets.push_back(std::move(net));
        fam.balls.push_back(std::move(balls));
    }
    return fam;
}

} // namespace curvelab
