#include "curvelab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "curvelab/curvature.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/parallel.hpp"
#include "curvelab/rng.hpp"

namespace curvelab {

namespace {

constexpr std::size_t kChunkRows = 8;        // outer-loop rows per work chunk
constexpr std::uint64_t kMcBlock = 1 << 16;  // MC draws per substream block

struct Moments {
    double sum = 0.0;
    double sumsq = 0.0;
};

// deterministic triple quadrature of f(i,j,k) = g(D) over member indices;
// g takes the three pairwise distances and returns the integrand value
template <typename G>
double det_triple_sum(const DistanceMatrix& D, const std::vector<std::size_t>& members,
                      double w3, unsigned threads, const G& g) {
    const std::size_t k = members.size();
    if (k < 3) return 0.0;
    return chunked_sum(k, kChunkRows, threads, [&](std::size_t lo, std::size_t hi) {
        double acc = 0.0;
        for (std::size_t a = lo; a < hi; ++a) {
            const std::size_t ia = members[a];
            for (std::size_t b = a + 1; b < k; ++b) {
                const std::size_t ib = members[b];
                const double dab = D(ia, ib);
                double inner = 0.0;
                for (std::size_t c = b + 1; c < k; ++c) {
                    const std::size_t ic = members[c];
                    inner += g(dab, D(ib, ic), D(ia, ic));
                }
                acc += inner;
            }
        }
        return 6.0 * acc * w3;
    });
}

// Monte Carlo over the ordered cube members^3 with deterministic substreams
template <typename G>
Moments mc_triple_sum(const DistanceMatrix& D, const std::vector<std::size_t>& members,
                      std::uint64_t n_draws, std::uint64_t seed, unsigned threads, const G& g) {
    const std::size_t k = members.size();
    const std::size_t blocks = static_cast<std::size_t>((n_draws + kMcBlock - 1) / kMcBlock);
    const auto partials = chunked_map<Moments>(
        blocks, 1, threads, [&](std::size_t blo, std::size_t) {
            SplitMix64 rng(substream_seed(seed, blo));
            const std::uint64_t begin = blo * kMcBlock;
            const std::uint64_t count = std::min<std::uint64_t>(kMcBlock, n_draws - begin);
            Moments m;
            for (std::uint64_t t = 0; t < count; ++t) {
                const std::size_t a = members[rng.next_below(k)];
                const std::size_t b = members[rng.next_below(k)];
                const std::size_t c = members[rng.next_below(k)];
                const double f = g(D(a, b), D(b, c), D(a, c));
                m.sum += f;
                m.sumsq += f * f;
            }
            return m;
        });
    Moments total;
    for (const Moments& m : partials) {
        total.sum += m.sum;
        total.sumsq += m.sumsq;
    }
    return total;
}

double delta_diam3(double dab, double dbc, double dac) {
    const double mx = std::max(dab, std::max(dbc, dac));
    if (mx <= 0.0) return 0.0;
    return (dab + dbc + dac - 2.0 * mx) / (mx * mx * mx);
}

std::vector<std::size_t> index_range(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

} // namespace

SampledCurve sample_curve(const Curve& curve, std::size_t m) {
    if (m == 0) throw std::domain_error("sample_curve: m must be positive");
    SampledCurve sc;
    sc.params = curve.sample_params(m);
    sc.curve_length = curve.length();
    sc.weights.assign(m, curve.length() / static_cast<double>(m));
    if (curve.is_euclidean()) {
        const std::size_t d = curve.dim();
        std::vector<double> coords(m * d);
        for (std::size_t i = 0; i < m; ++i)
            curve.point_at(sc.params[i], {coords.data() + i * d, d});
        sc.space = std::make_shared<MetricSpace>(MetricSpace::euclidean(std::move(coords), d));
        sc.ids.resize(m);
        for (std::size_t i = 0; i < m; ++i) sc.ids[i] = static_cast<PointId>(i);
    } else {
        sc.space = curve.space_handle();
        sc.ids.resize(m);
        for (std::size_t i = 0; i < m; ++i)
            sc.ids[i] = curve.vertex_id(curve.vertex_index_near(sc.params[i]));
    }
    return sc;
}

PointSubset unique_ids(const PointSubset& ids) {
    PointSubset out;
    std::unordered_set<PointId> seen;
    seen.reserve(ids.size());
    for (PointId id : ids)
        if (seen.insert(id).second) out.push_back(id);
    return out;
}

FunctionalReport global_curvature_functional(const Curve& curve, const EstimatorOptions& opts) {
    if (opts.m < 3) throw std::domain_error("global functional: m must be >= 3");
    FunctionalReport rep;
    rep.functional = "global_curvature";
    rep.m = opts.m;
    rep.seed = opts.seed;
    rep.reference = curve.length();

    const SampledCurve sc = sample_curve(curve, opts.m);
    const DistanceMatrix D = sample_distances(curve, sc.params);
    const std::size_t m = opts.m;
    const double w = sc.curve_length / static_cast<double>(m);

    if (opts.mode == EstimatorMode::Deterministic) {
        rep.mode = "det";
        rep.triple_count = static_cast<std::uint64_t>(m) * (m - 1) * (m - 2);
        rep.value = det_triple_sum(D, index_range(m), w * w * w, opts.threads, delta_diam3);
    } else {
        rep.mode = "mc";
        rep.triple_count = opts.mc_samples;
        const Moments mom = mc_triple_sum(D, index_range(m), opts.mc_samples, opts.seed,
                                          opts.threads, delta_diam3);
        const double n = static_cast<double>(opts.mc_samples);
        const double mean = mom.sum / n;
        const double cube = sc.curve_length * sc.curve_length * sc.curve_length;
        rep.value = cube * mean;
        const double var = std::max(0.0, mom.sumsq / n - mean * mean);
        rep.std_error = cube * std::sqrt(var / n);
    }
    rep.ratio = rep.reference > 0.0 ? rep.value / rep.reference : 0.0;
    return rep;
}

FunctionalReport multires_curvature_sum_over(const MetricSpace& space, const PointSubset& samples,
                                             std::span<const double> weights,
                                             const MultiresolutionFamily& family,
                                             const EstimatorOptions& opts,
                                             std::optional<double> reference) {
    if (weights.size() != samples.size())
        throw std::invalid_argument("multires sum: weight count must match samples");

    FunctionalReport rep;
    rep.functional = "multires_curvature";
    rep.m = samples.size();
    rep.seed = opts.seed;
    double mass = 0.0;
    for (double v : weights) mass += v;
    rep.reference = reference.value_or(mass);

    // flatten ball list for deterministic per-ball parallelism
    struct Slot {
        int scale;
        const Ball* ball;
    };
    std::vector<Slot> slots;
    for (std::size_t s = 0; s < family.balls.size(); ++s)
        for (const Ball& b : family.balls[s]) slots.push_back(Slot{family.scale_at(s), &b});

    std::vector<BallRow> rows(slots.size());
    chunked_map<int>(slots.size(), 1, opts.threads, [&](std::size_t lo, std::size_t) {
        const Slot& slot = slots[lo];
        Beta2Options bo;
        bo.triple_cap = opts.triple_cap;
        bo.mc_samples = opts.mc_samples;
        bo.seed = substream_seed(opts.seed, lo);
        const BetaReport br = beta2_ball(space, *slot.ball, samples, weights, bo);
        BallRow row;
        row.scale = slot.scale;
        row.center = slot.ball->center;
        row.radius = slot.ball->radius;
        row.beta = br.value;
        const double r = slot.ball->radius;
        row.term = br.raw_integral / (r * r * r);
        row.triples = br.triple_count;
        row.monte_carlo = br.monte_carlo;
        row.std_error = br.std_error;
        rows[lo] = row;
        return 0;
    });

    bool any_mc = false;
    for (const BallRow& row : rows) {
        rep.value += row.term;
        rep.triple_count += row.triples;
        rep.std_error += row.std_error * row.std_error;
        any_mc = any_mc || row.monte_carlo;
    }
    rep.std_error = std::sqrt(rep.std_error);
    rep.mode = any_mc ? "det+mc-fallback" : "det";
    rep.per_ball = std::move(rows);
    rep.ratio = rep.reference > 0.0 ? rep.value / rep.reference : 0.0;
    return rep;
}

FunctionalReport multires_curvature_sum(const Curve& curve, double A, const EstimatorOptions& opts,
                                        std::optional<int> n_min, std::optional<int> n_max,
                                        bool nested) {
    const SampledCurve sc = sample_curve(curve, opts.m);
    const PointSubset domain = unique_ids(sc.ids);
    const MultiresolutionFamily family =
        build_family(*sc.space, domain, A, n_min, n_max, nested);
    FunctionalReport rep = multires_curvature_sum_over(*sc.space, sc.ids, sc.weights, family,
                                                       opts, sc.curve_length);
    rep.m = opts.m;
    for (const auto& wmsg : family.warnings) rep.notes.push_back(wmsg);
    return rep;
}

namespace {

// polyline piece of a Euclidean curve over a parameter interval
std::vector<double> arc_coords(const Curve& curve, const Arc& arc) {
    const std::size_t d = curve.dim();
    std::vector<double> out;
    std::vector<double> p(d);
    curve.point_at(arc.a, p);
    out.insert(out.end(), p.begin(), p.end());
    // interior vertices strictly inside (a, b)
    const double len = curve.length();
    for (double s = arc.a; s < arc.b;) {
        // next vertex parameter after s
        double snext = arc.b;
        const double sw = curve.normalize_param(s);
        for (std::size_t i = 0; i < curve.vertex_count(); ++i) {
            const double vp = curve.vertex_param(i);
            double cand = vp;
            if (cand <= sw + 1e-12 * (len > 0 ? len : 1.0)) cand += len;
            const double abs_cand = s + (cand - sw);
            if (abs_cand < snext) snext = abs_cand;
        }
        if (snext >= arc.b - 1e-12 * (len > 0 ? len : 1.0)) break;
        curve.point_at(snext, p);
        out.insert(out.end(), p.begin(), p.end());
        s = snext;
    }
    curve.point_at(arc.b, p);
    out.insert(out.end(), p.begin(), p.end());
    return out;
}

PointSubset arc_ids(const Curve& curve, const Arc& arc) {
    // vertices inside [a, b], ordered along the arc (wrap-represented arcs
    // place the tail of the parameter range before the seam)
    std::vector<std::pair<double, PointId>> hits;
    for (std::size_t i = 0; i < curve.vertex_count(); ++i) {
        const double vp = curve.vertex_param(i);
        if (vp >= arc.a - 1e-12 && vp <= arc.b + 1e-12)
            hits.emplace_back(vp, curve.vertex_id(i));
        else if (curve.closed() && vp + curve.length() >= arc.a - 1e-12 &&
                 vp + curve.length() <= arc.b + 1e-12)
            hits.emplace_back(vp + curve.length(), curve.vertex_id(i));
    }
    std::sort(hits.begin(), hits.end());
    PointSubset out;
    out.reserve(hits.size());
    for (const auto& [pos, id] : hits) out.push_back(id);
    return out;
}

} // namespace

FunctionalReport localized_functional(const Curve& curve, double z_param, double R,
                                      LocalizedKind which, const EstimatorOptions& opts,
                                      const LocalizedOptions& lopts) {
    if (!(R > 0.0)) throw std::domain_error("localized functional: R must be positive");

    FunctionalReport rep;
    rep.functional = which == LocalizedKind::Global ? "localized_global" : "localized_multires";
    rep.m = opts.m;
    rep.seed = opts.seed;
    rep.reference = R;

    const bool euclidean = curve.is_euclidean();
    std::vector<double> z;
    PointId z_id = 0;
    if (euclidean) {
        z = curve.point_at(z_param);
    } else {
        z_id = curve.vertex_id(curve.vertex_index_near(z_param));
    }

    auto components = [&](double radius) {
        return euclidean ? lambda_components(curve, z, radius)
                         : lambda_components(curve, z_id, radius);
    };
    const std::vector<Arc> comps10 = components(10.0 * R);
    const std::vector<Arc> comps1 = components(R);

    // components of the 10R ball that actually meet Ball(z, R)
    std::vector<Arc> active;
    for (const Arc& small : comps1) {
        const Arc big = extend_to_component(small, comps10, curve.length());
        bool seen = false;
        for (const Arc& got : active)
            seen = seen || (got.a == big.a && got.b == big.b);
        if (!seen) active.push_back(big);
    }
    const int P = static_cast<int>(active.size());
    rep.component_count = std::max(P, 1);

    // glue multiple components into one closed curve
    const Curve* working = &curve;
    std::optional<Curve> glued;
    if (P > 1) {
        double pieces_len = 0.0;
        if (euclidean) {
            const std::size_t d = curve.dim();
            std::vector<double> coords;
            for (const Arc& a : active) {
                const std::vector<double> piece = arc_coords(curve, a);
                pieces_len += a.length();
                for (std::size_t i = 0; i + d <= piece.size(); i += d) {
                    if (!coords.empty()) {
                        // skip joints that coincide with the previous vertex
                        double gap = 0.0;
                        for (std::size_t k = 0; k < d; ++k) {
                            const double t =
                                piece[i + k] - coords[coords.size() - d + k];
                            gap += t * t;
                        }
                        if (std::sqrt(gap) <= 1e-12 * R) continue;
                    }
                    coords.insert(coords.end(), piece.begin() + i, piece.begin() + i + d);
                }
            }
            // avoid a zero-length closing segment when the loop lands back
            // exactly on its starting vertex
            if (coords.size() >= 2 * d) {
                double gap = 0.0;
                for (std::size_t k = 0; k < d; ++k) {
                    const double t = coords[coords.size() - d + k] - coords[k];
                    gap += t * t;
                }
                if (std::sqrt(gap) <= 1e-12 * R) coords.resize(coords.size() - d);
            }
            glued = Curve::polyline(std::move(coords), d, true);
        } else {
            PointSubset ids;
            for (const Arc& a : active) {
                const PointSubset piece = arc_ids(curve, a);
                pieces_len += a.length();
                for (PointId id : piece)
                    if (ids.empty() || ids.back() != id) ids.push_back(id);
            }
            if (ids.size() >= 2 && ids.front() == ids.back()) ids.pop_back();
            glued = Curve::through_points(curve.space_handle(), std::move(ids), true);
        }
        working = &*glued;
        rep.connector_length = std::max(0.0, glued->length() - pieces_len);
        rep.notes.push_back("glued " + std::to_string(P) + " components");
    }

    const SampledCurve sc = sample_curve(*working, opts.m);

    // sample indices inside Ball(z, R)
    std::vector<std::size_t> members;
    if (euclidean) {
        for (std::size_t i = 0; i < sc.ids.size(); ++i)
            if (euclidean_dist(sc.space->point(sc.ids[i]), z) <= R) members.push_back(i);
    } else {
        for (std::size_t i = 0; i < sc.ids.size(); ++i)
            if (sc.space->dist(z_id, sc.ids[i]) <= R) members.push_back(i);
    }

    if (which == LocalizedKind::Global) {
        const DistanceMatrix D = sample_distances(*working, sc.params);
        const double w = sc.curve_length / static_cast<double>(opts.m);
        rep.mode = "det";
        rep.triple_count = members.size() < 3
                               ? 0
                               : static_cast<std::uint64_t>(members.size()) *
                                     (members.size() - 1) * (members.size() - 2);
        rep.value = det_triple_sum(D, members, w * w * w, opts.threads, delta_diam3);
    } else {
        // family over the full working sample, balls restricted to Ball(z, R)
        const PointSubset domain = unique_ids(sc.ids);
        MultiresolutionFamily family =
            build_family(*sc.space, domain, lopts.A, std::nullopt, std::nullopt, lopts.nested);
        for (std::size_t s = 0; s < family.balls.size(); ++s) {
            std::vector<Ball> kept;
            for (const Ball& b : family.balls[s]) {
                const double center_gap =
                    euclidean ? euclidean_dist(sc.space->point(b.center), z)
                              : sc.space->dist(z_id, b.center);
                if (center_gap + b.radius <= R) kept.push_back(b);
            }
            family.balls[s] = std::move(kept);
        }
        FunctionalReport inner =
            multires_curvature_sum_over(*sc.space, sc.ids, sc.weights, family, opts, R);
        rep.value = inner.value;
        rep.mode = inner.mode;
        rep.triple_count = inner.triple_count;
        rep.std_error = inner.std_error;
        rep.per_ball = std::move(inner.per_ball);
    }
    rep.ratio = rep.value / R;
    return rep;
}

FunctionalReport hahlomaa_condition_sum(const MetricSpace& space, const PointSubset& samples,
                                        std::span<const double> weights, double A, PointId z,
                                        double R, const EstimatorOptions& opts) {
    if (A < 1.0) throw std::domain_error("hahlomaa sum: A must be >= 1");
    if (!(R > 0.0)) throw std::domain_error("hahlomaa sum: R must be positive");
    if (weights.size() != samples.size())
        throw std::invalid_argument("hahlomaa sum: weight count must match samples");

    FunctionalReport rep;
    rep.functional = "hahlomaa_condition";
    rep.m = samples.size();
    rep.seed = opts.seed;
    rep.reference = R;

    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (space.dist(z, samples[i]) <= R) members.push_back(i);
    const std::size_t k = members.size();
    if (k < 3) {
        rep.mode = "det";
        return rep;
    }

    // local distances over members
    DistanceMatrix D;
    D.n = k;
    D.d.assign(k * k, 0.0);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
            const double v = space.dist(samples[members[a]], samples[members[b]]);
            D.d[a * k + b] = D.d[b * k + a] = v;
        }
    std::vector<double> w(k);
    for (std::size_t a = 0; a < k; ++a) w[a] = weights[members[a]];

    auto c2_comparable = [&](double dab, double dbc, double dac) {
        const double mn = std::min(dab, std::min(dbc, dac));
        const double mx = std::max(dab, std::max(dbc, dac));
        if (mn <= 0.0 || A * mn < mx) return 0.0;
        const double c = menger(TripleDistances{dab, dbc, dac});
        return c * c;
    };

    const std::uint64_t ordered = static_cast<std::uint64_t>(k) * (k - 1) * (k - 2);
    if (opts.mode == EstimatorMode::Deterministic && ordered <= opts.triple_cap) {
        rep.mode = "det";
        rep.triple_count = ordered;
        rep.value = chunked_sum(k, kChunkRows, opts.threads, [&](std::size_t lo, std::size_t hi) {
            double acc = 0.0;
            for (std::size_t a = lo; a < hi; ++a)
                for (std::size_t b = a + 1; b < k; ++b) {
                    const double dab = D(a, b);
                    const double wab = w[a] * w[b];
                    for (std::size_t c = b + 1; c < k; ++c)
                        acc += c2_comparable(dab, D(b, c), D(a, c)) * wab * w[c];
                }
            return 6.0 * acc;
        });
    } else {
        rep.mode = "mc";
        rep.triple_count = opts.mc_samples;
        const auto g = [&](double dab, double dbc, double dac) {
            return c2_comparable(dab, dbc, dac);
        };
        // weighted cube estimator over member indices
        const std::size_t blocks =
            static_cast<std::size_t>((opts.mc_samples + kMcBlock - 1) / kMcBlock);
        Moments total;
        const auto partials =
            chunked_map<Moments>(blocks, 1, opts.threads, [&](std::size_t blo, std::size_t) {
                SplitMix64 rng(substream_seed(opts.seed, blo));
                const std::uint64_t begin = blo * kMcBlock;
                const std::uint64_t count =
                    std::min<std::uint64_t>(kMcBlock, opts.mc_samples - begin);
                Moments mo;
                for (std::uint64_t t = 0; t < count; ++t) {
                    const std::size_t a = rng.next_below(k);
                    const std::size_t b = rng.next_below(k);
                    const std::size_t c = rng.next_below(k);
                    const double f = g(D(a, b), D(b, c), D(a, c)) * w[a] * w[b] * w[c];
                    mo.sum += f;
                    mo.sumsq += f * f;
                }
                return mo;
            });
        for (const Moments& mo : partials) {
            total.sum += mo.sum;
            total.sumsq += mo.sumsq;
        }
        const double n = static_cast<double>(opts.mc_samples);
        const double cube = static_cast<double>(k) * static_cast<double>(k) *
                            static_cast<double>(k);
        const double mean = total.sum / n;
        rep.value = cube * mean;
        const double var = std::max(0.0, total.sumsq / n - mean * mean);
        rep.std_error = cube * std::sqrt(var / n);
    }
    rep.ratio = rep.value / R;
    return rep;
}

LargeBallReport large_ball_diagnostic(const SampledCurve& sc,
                                      const MultiresolutionFamily& family) {
    LargeBallReport rep;
    double mass = 0.0;
    for (double v : sc.weights) mass += v;
    const double threshold = mass / 6.0;
    for (std::size_t s = 0; s < family.balls.size(); ++s) {
        std::size_t count = 0;
        for (const Ball& b : family.balls[s]) {
            double captured = 0.0;
            const double r4 = 4.0 * b.radius;
            for (std::size_t i = 0; i < sc.ids.size(); ++i)
                if (sc.space->dist(b.center, sc.ids[i]) <= r4) captured += sc.weights[i];
            if (captured >= threshold) ++count;
        }
        rep.per_scale.emplace_back(family.scale_at(s), count);
        rep.max_count = std::max(rep.max_count, count);
    }
    return rep;
}

} // namespace curvelab
