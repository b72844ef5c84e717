#include "curvelab/beta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "curvelab/curvature.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/rng.hpp"

namespace curvelab {

namespace {

void require_euclidean(const MetricSpace& space, const char* op) {
    if (!space.is_euclidean())
        throw UnsupportedOperation(std::string(op) + " requires a Euclidean point cloud");
}

// squared point-line distance given unit direction
double sq_line_dist(std::span<const double> x, std::span<const double> p,
                    std::span<const double> u) {
    double norm2 = 0.0, proj = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double w = x[k] - p[k];
        norm2 += w * w;
        proj += w * u[k];
    }
    return std::max(0.0, norm2 - proj * proj);
}

struct CandidateSet {
    std::vector<LineCandidate> lines;
};

CandidateSet beta_candidates(const MetricSpace& cloud, const PointSubset& members) {
    CandidateSet cs;
    const std::size_t d = cloud.dim();
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto pi = cloud.point(members[i]);
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            const auto pj = cloud.point(members[j]);
            double norm = 0.0;
            std::vector<double> dir(d);
            for (std::size_t k = 0; k < d; ++k) {
                dir[k] = pj[k] - pi[k];
                norm += dir[k] * dir[k];
            }
            if (norm <= 0.0) continue;
            norm = std::sqrt(norm);
            for (double& v : dir) v /= norm;
            cs.lines.push_back(LineCandidate{{pi.begin(), pi.end()}, std::move(dir)});
        }
    }
    cs.lines.push_back(orthogonal_regression_line(cloud, members));
    return cs;
}

} // namespace

double point_line_distance(std::span<const double> x, const LineCandidate& line) {
    return std::sqrt(sq_line_dist(x, line.point, line.direction));
}

LineCandidate orthogonal_regression_line(const MetricSpace& cloud, const PointSubset& members,
                                         std::span<const double> weights) {
    require_euclidean(cloud, "orthogonal regression");
    if (members.empty()) throw std::domain_error("orthogonal regression: no points");
    if (!weights.empty() && weights.size() != members.size())
        throw std::invalid_argument("orthogonal regression: weight count mismatch");
    const std::size_t d = cloud.dim();

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
    double total = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        const auto p = cloud.point(members[i]);
        for (std::size_t k = 0; k < d; ++k) centroid[static_cast<Eigen::Index>(k)] += w * p[k];
        total += w;
    }
    if (total <= 0.0) throw std::domain_error("orthogonal regression: zero total mass");
    centroid /= total;

    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d),
                                                static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < members.size(); ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        const auto p = cloud.point(members[i]);
        Eigen::VectorXd x(static_cast<Eigen::Index>(d));
        for (std::size_t k = 0; k < d; ++k) x[static_cast<Eigen::Index>(k)] = p[k];
        x -= centroid;
        cov.noalias() += w * x * x.transpose();
    }
    cov /= total;

    LineCandidate line;
    line.point.assign(centroid.data(), centroid.data() + d);
    line.direction.assign(d, 0.0);
    line.direction[0] = 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.info() == Eigen::Success && es.eigenvalues().size() > 0) {
        const auto ev = es.eigenvalues();
        const double top = ev[ev.size() - 1];
        const double second = ev.size() >= 2 ? ev[ev.size() - 2] : 0.0;
        // A near-degenerate top pair leaves the principal direction
        // arbitrary; keep the canonical axis so the choice is stable under
        // dilations and reruns.
        if (top > 0.0 && top - second > 1e-6 * top) {
            const auto v = es.eigenvectors().col(es.eigenvectors().cols() - 1);
            for (std::size_t k = 0; k < d; ++k)
                line.direction[k] = v[static_cast<Eigen::Index>(k)];
        }
    }
    return line;
}

BetaReport beta_inf(const MetricSpace& cloud, const Ball& ball, const PointSubset& domain) {
    require_euclidean(cloud, "beta_inf");
    BetaReport rep;
    rep.ball = ball;
    rep.ball_diam = 2.0 * ball.radius;
    const PointSubset members = ball_members(cloud, ball, domain);
    rep.member_count = members.size();
    rep.members_diam = members.empty() ? 0.0 : subset_diam(cloud, members);
    if (members.size() <= 2) return rep;

    const CandidateSet cs = beta_candidates(cloud, members);
    rep.candidate_count = cs.lines.size();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& line : cs.lines) {
        double worst = 0.0;
        for (PointId id : members)
            worst = std::max(worst, sq_line_dist(cloud.point(id), line.point, line.direction));
        best = std::min(best, worst);
    }
    rep.value = std::sqrt(best) / rep.ball_diam;
    return rep;
}

BetaReport beta_p(const MetricSpace& cloud, const Ball& ball, const PointSubset& domain,
                  std::span<const double> weights, int p) {
    require_euclidean(cloud, "beta_p");
    if (p != 1 && p != 2) throw std::domain_error("beta_p: p must be 1 or 2");
    if (weights.size() != domain.size())
        throw std::invalid_argument("beta_p: weight count must match domain");

    BetaReport rep;
    rep.ball = ball;
    rep.ball_diam = 2.0 * ball.radius;

    PointSubset members;
    std::vector<double> w;
    for (std::size_t i = 0; i < domain.size(); ++i) {
        if (weights[i] < 0.0) throw std::domain_error("beta_p: negative weight");
        if (cloud.dist(ball.center, domain[i]) <= ball.radius) {
            members.push_back(domain[i]);
            w.push_back(weights[i]);
        }
    }
    rep.member_count = members.size();
    rep.members_diam = members.empty() ? 0.0 : subset_diam(cloud, members);
    double total = 0.0;
    for (double v : w) total += v;
    if (total <= 0.0) throw std::domain_error("beta_p: zero mass in ball");

    if (p == 2) {
        const LineCandidate line = orthogonal_regression_line(cloud, members, w);
        rep.candidate_count = 1;
        double acc = 0.0;
        for (std::size_t i = 0; i < members.size(); ++i)
            acc += w[i] * sq_line_dist(cloud.point(members[i]), line.point, line.direction);
        rep.value = std::sqrt(acc / total) / rep.ball_diam;
        return rep;
    }

    const CandidateSet cs = beta_candidates(cloud, members);
    rep.candidate_count = cs.lines.size();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& line : cs.lines) {
        double acc = 0.0;
        for (std::size_t i = 0; i < members.size(); ++i)
            acc += w[i] * std::sqrt(sq_line_dist(cloud.point(members[i]), line.point,
                                                 line.direction));
        best = std::min(best, acc / total);
    }
    rep.value = best / rep.ball_diam;
    return rep;
}

BetaReport beta2_ball(const MetricSpace& space, const Ball& ball, const PointSubset& samples,
                      std::span<const double> weights, const Beta2Options& opts) {
    if (weights.size() != samples.size())
        throw std::invalid_argument("beta2_ball: weight count must match samples");
    BetaReport rep;
    rep.ball = ball;
    rep.ball_diam = 2.0 * ball.radius;

    std::vector<std::size_t> idx; // indices into samples
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (space.dist(ball.center, samples[i]) <= ball.radius) idx.push_back(i);
    const std::size_t k = idx.size();
    rep.member_count = k;
    if (k == 0) return rep;
    {
        PointSubset mem;
        mem.reserve(k);
        for (std::size_t i : idx) mem.push_back(samples[i]);
        rep.members_diam = subset_diam(space, mem);
        if (k < 3) return rep;

        // local distance matrix over members
        std::vector<double> D(k * k, 0.0);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b)
                D[a * k + b] = D[b * k + a] = space.dist(mem[a], mem[b]);

        std::vector<double> wm(k);
        for (std::size_t a = 0; a < k; ++a) wm[a] = weights[idx[a]];

        const std::uint64_t ordered =
            static_cast<std::uint64_t>(k) * (k - 1) * (k - 2);
        double raw = 0.0;
        if (ordered <= opts.triple_cap) {
            rep.triple_count = ordered;
            for (std::size_t a = 0; a < k; ++a) {
                const double wa = wm[a];
                for (std::size_t b = a + 1; b < k; ++b) {
                    const double dab = D[a * k + b];
                    const double wab = wa * wm[b];
                    double acc = 0.0;
                    for (std::size_t c = b + 1; c < k; ++c) {
                        const double dbc = D[b * k + c];
                        const double dac = D[a * k + c];
                        const double mx = std::max(dab, std::max(dbc, dac));
                        acc += (dab + dbc + dac - 2.0 * mx) * wm[c];
                    }
                    raw += 6.0 * wab * acc;
                }
            }
        } else {
            rep.monte_carlo = true;
            rep.triple_count = opts.mc_samples;
            SplitMix64 rng(opts.seed);
            double sum = 0.0, sumsq = 0.0;
            const double cube = static_cast<double>(k) * static_cast<double>(k) *
                                static_cast<double>(k);
            for (std::uint64_t t = 0; t < opts.mc_samples; ++t) {
                const auto a = static_cast<std::size_t>(rng.next_below(k));
                const auto b = static_cast<std::size_t>(rng.next_below(k));
                const auto c = static_cast<std::size_t>(rng.next_below(k));
                const double dab = D[a * k + b], dbc = D[b * k + c], dac = D[a * k + c];
                const double mx = std::max(dab, std::max(dbc, dac));
                const double f = (dab + dbc + dac - 2.0 * mx) * wm[a] * wm[b] * wm[c];
                sum += f;
                sumsq += f * f;
            }
            const double n = static_cast<double>(opts.mc_samples);
            const double mean = sum / n;
            raw = cube * mean;
            const double var = std::max(0.0, sumsq / n - mean * mean);
            rep.std_error = cube * std::sqrt(var / n) / std::pow(ball.radius, 3);
        }
        rep.raw_integral = raw;
        const double r = ball.radius;
        rep.value = std::sqrt(std::max(0.0, raw) / (r * r * r * r));
    }
    return rep;
}

double beta_tilde_arc(const Curve& curve, const Arc& arc, std::size_t m) {
    if (m < 3) throw std::domain_error("beta_tilde_arc: need at least 3 samples");
    const double ell = arc.length();
    if (ell <= 0.0) return 0.0;
    const auto params = curve.sample_params(m, arc.a, arc.b);
    const DistanceMatrix D = sample_distances(curve, params);
    double diam = 0.0;
    for (double v : D.d) diam = std::max(diam, v);
    if (diam <= 0.0) return 0.0;
    const double h = ell / static_cast<double>(m);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const double dij = D(i, j);
            double inner = 0.0;
            for (std::size_t l = j + 1; l < m; ++l) inner += dij + D(j, l) - D(i, l);
            acc += inner;
        }
    const double bt2 = acc * h * h * h / (ell * ell * ell) / diam;
    return std::sqrt(std::max(0.0, bt2));
}

double dyadic_excess_sum(const Curve& curve, const DyadicFiltration& filtration, int depth) {
    if (!curve.closed())
        throw std::invalid_argument("dyadic_excess_sum: curve must be closed");
    if (depth < 1) throw std::domain_error("dyadic_excess_sum: depth must be >= 1");
    const double ell = curve.length();
    if (ell <= 0.0) return 0.0;
    const double off = filtration.offset();

    double total = 0.0;
    for (int level = 1; level <= depth; ++level) {
        const std::uint64_t count = 1ULL << (level - 1);
        const double ulen = 1.0 / static_cast<double>(count);
        // grid of endpoints and midpoints for this level
        const std::uint64_t grid = 2 * count;
        if (curve.is_euclidean()) {
            const std::size_t dim = curve.dim();
            std::vector<double> pts((grid + 1) * dim);
            for (std::uint64_t g = 0; g <= grid; ++g) {
                const double s = (off + static_cast<double>(g) * ulen * 0.5) * ell;
                curve.point_at(s, {pts.data() + g * dim, dim});
            }
            auto dist = [&](std::uint64_t a, std::uint64_t b) {
                return euclidean_dist({pts.data() + a * dim, dim}, {pts.data() + b * dim, dim});
            };
            for (std::uint64_t i = 0; i < count; ++i)
                total += dist(2 * i, 2 * i + 1) + dist(2 * i + 1, 2 * i + 2) -
                         dist(2 * i, 2 * i + 2);
        } else {
            const MetricSpace* space = curve.space();
            std::vector<PointId> pts(grid + 1);
            for (std::uint64_t g = 0; g <= grid; ++g) {
                const double s = (off + static_cast<double>(g) * ulen * 0.5) * ell;
                pts[g] = curve.vertex_id(curve.vertex_index_near(s));
            }
            for (std::uint64_t i = 0; i < count; ++i)
                total += space->dist(pts[2 * i], pts[2 * i + 1]) +
                         space->dist(pts[2 * i + 1], pts[2 * i + 2]) -
                         space->dist(pts[2 * i], pts[2 * i + 2]);
        }
    }
    return total;
}

BetaSumReport beta_inf_multires_sum(const MetricSpace& cloud, const PointSubset& domain,
                                    const MultiresolutionFamily& family) {
    require_euclidean(cloud, "beta_inf_multires_sum");
    BetaSumReport rep;
    for (std::size_t s = 0; s < family.balls.size(); ++s) {
        for (const Ball& ball : family.balls[s]) {
            const BetaReport br = beta_inf(cloud, ball, domain);
            const double term = br.value * br.value * br.ball_diam;
            rep.rows.push_back(BetaSumRow{family.scale_at(s), ball, br.value, term});
            rep.total += term;
        }
    }
    return rep;
}

} // namespace curvelab
