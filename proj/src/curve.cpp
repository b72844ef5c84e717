#include "curvelab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "curvelab/errors.hpp"

namespace curvelab {

// ---------------------------------------------------------------- Curve

Curve Curve::polyline(std::vector<double> coords, std::size_t dim, bool closed) {
    if (dim == 0) throw std::invalid_argument("curve: dim must be positive");
    if (coords.empty() || coords.size() % dim != 0)
        throw std::invalid_argument("curve: coordinate count not a multiple of dim");
    Curve c;
    c.dim_ = dim;
    c.n_ = coords.size() / dim;
    c.coords_ = std::move(coords);
    c.finish(closed);
    return c;
}

Curve Curve::polyline(const std::vector<std::vector<double>>& vertices, bool closed) {
    if (vertices.empty()) throw std::invalid_argument("curve: no vertices");
    const std::size_t dim = vertices.front().size();
    std::vector<double> flat;
    flat.reserve(vertices.size() * dim);
    for (const auto& v : vertices) {
        if (v.size() != dim) throw std::invalid_argument("curve: ragged vertex rows");
        flat.insert(flat.end(), v.begin(), v.end());
    }
    return polyline(std::move(flat), dim, closed);
}

Curve Curve::through_points(std::shared_ptr<const MetricSpace> space, PointSubset ids,
                            bool closed) {
    if (!space) throw std::invalid_argument("curve: null space");
    if (ids.empty()) throw std::invalid_argument("curve: no vertices");
    for (PointId id : ids) space->require_valid(id);
    Curve c;
    c.n_ = ids.size();
    c.space_ = std::move(space);
    c.ids_ = std::move(ids);
    c.finish(closed);
    return c;
}

double Curve::segment_length(std::size_t i) const {
    const std::size_t j = (i + 1) % n_;
    if (space_) return space_->dist(ids_[i], ids_[j]);
    double s = 0.0;
    const double* a = coords_.data() + i * dim_;
    const double* b = coords_.data() + j * dim_;
    for (std::size_t k = 0; k < dim_; ++k) {
        const double t = a[k] - b[k];
        s += t * t;
    }
    return std::sqrt(s);
}

void Curve::finish(bool closed) {
    closed_ = closed;
    cum_.resize(n_);
    cum_[0] = 0.0;
    for (std::size_t i = 0; i + 1 < n_; ++i) {
        const double seg = segment_length(i);
        if (!(seg > 0.0))
            throw ValidationError("curve: consecutive vertices " + std::to_string(i) + "," +
                                  std::to_string(i + 1) + " coincide");
        cum_[i + 1] = cum_[i] + seg;
    }
    length_ = cum_[n_ - 1];
    if (closed_ && n_ >= 2) {
        const double seg = segment_length(n_ - 1);
        if (!(seg > 0.0))
            throw ValidationError("curve: closing segment has zero length");
        length_ += seg;
    }
}

std::span<const double> Curve::vertex(std::size_t i) const {
    if (space_) throw UnsupportedOperation("vertex coordinates require a Euclidean curve");
    return {coords_.data() + i * dim_, dim_};
}

PointId Curve::vertex_id(std::size_t i) const {
    if (!space_) throw UnsupportedOperation("vertex ids require a metric-backed curve");
    return ids_[i];
}

double Curve::normalize_param(double s) const {
    if (length_ <= 0.0) return 0.0;
    if (closed_) {
        double t = std::fmod(s, length_);
        if (t < 0.0) t += length_;
        return t;
    }
    if (s < -1e-9 * length_ || s > length_ * (1.0 + 1e-9))
        throw std::domain_error("curve parameter outside [0, length] on an open curve");
    return std::clamp(s, 0.0, length_);
}

namespace {
// index of the segment containing parameter t (cum[i] <= t), given cum table
std::size_t containing_segment(const std::vector<double>& cum, double t) {
    const auto it = std::upper_bound(cum.begin(), cum.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - cum.begin());
    return i == 0 ? 0 : i - 1;
}
} // namespace

void Curve::point_at(double s, std::span<double> out) const {
    if (space_) throw UnsupportedOperation("point_at requires a Euclidean curve");
    const double t = normalize_param(s);
    if (n_ == 1) {
        for (std::size_t k = 0; k < dim_; ++k) out[k] = coords_[k];
        return;
    }
    const std::size_t i = containing_segment(cum_, t);
    const std::size_t j = (i + 1) % n_;
    const double seg_start = cum_[i];
    const double seg_len = (i + 1 < n_ ? cum_[i + 1] : length_) - seg_start;
    const double u = seg_len > 0.0 ? (t - seg_start) / seg_len : 0.0;
    const double* a = coords_.data() + i * dim_;
    const double* b = coords_.data() + j * dim_;
    for (std::size_t k = 0; k < dim_; ++k) out[k] = a[k] + u * (b[k] - a[k]);
}

std::vector<double> Curve::point_at(double s) const {
    std::vector<double> out(dim_);
    point_at(s, out);
    return out;
}

std::size_t Curve::vertex_index_near(double s) const {
    const double t = normalize_param(s);
    if (n_ == 1) return 0;
    const std::size_t i = containing_segment(cum_, t);
    const double seg_end = i + 1 < n_ ? cum_[i + 1] : length_;
    const std::size_t j = (i + 1) % n_;
    return (t - cum_[i] <= seg_end - t) ? i : j;
}

double Curve::dist_at(double s, double t) const {
    if (space_) {
        const PointId a = ids_[vertex_index_near(s)];
        const PointId b = ids_[vertex_index_near(t)];
        return space_->dist(a, b);
    }
    std::vector<double> p(dim_), q(dim_);
    point_at(s, p);
    point_at(t, q);
    return euclidean_dist(p, q);
}

std::vector<double> Curve::sample_params(std::size_t m, double a, double b) const {
    std::vector<double> s(m);
    const double h = (b - a) / static_cast<double>(m);
    for (std::size_t k = 0; k < m; ++k) s[k] = a + (static_cast<double>(k) + 0.5) * h;
    return s;
}

std::vector<double> Curve::sample_params(std::size_t m) const {
    return sample_params(m, 0.0, length_);
}

Curve Curve::scaled(double lambda) const {
    if (space_) throw UnsupportedOperation("scaled() requires a Euclidean curve");
    if (!(lambda > 0.0)) throw std::domain_error("curve scaled: lambda must be positive");
    std::vector<double> c(coords_);
    for (double& v : c) v *= lambda;
    return polyline(std::move(c), dim_, closed_);
}

DistanceMatrix sample_distances(const Curve& curve, std::span<const double> params) {
    const std::size_t m = params.size();
    DistanceMatrix D;
    D.n = m;
    D.d.assign(m * m, 0.0);
    if (curve.is_euclidean()) {
        const std::size_t dim = curve.dim();
        std::vector<double> pts(m * dim);
        for (std::size_t i = 0; i < m; ++i)
            curve.point_at(params[i], {pts.data() + i * dim, dim});
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < dim; ++k) {
                    const double t = pts[i * dim + k] - pts[j * dim + k];
                    s += t * t;
                }
                const double dist = std::sqrt(s);
                D.d[i * m + j] = D.d[j * m + i] = dist;
            }
        }
    } else {
        const MetricSpace* space = curve.space();
        std::vector<PointId> ids(m);
        for (std::size_t i = 0; i < m; ++i)
            ids[i] = curve.vertex_id(curve.vertex_index_near(params[i]));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                const double dist = space->dist(ids[i], ids[j]);
                D.d[i * m + j] = D.d[j * m + i] = dist;
            }
    }
    return D;
}

// ------------------------------------------------- one-third trick

DyadicInterval one_third_containing(double lo, double len) {
    if (!(len > 0.0) || len >= 1.0 / 6.0)
        throw std::domain_error("one_third_containing: interval length must lie in (0, 1/6)");
    double u0 = std::fmod(lo, 1.0);
    if (u0 < 0.0) u0 += 1.0;

    // finest level whose intervals can still contain J, coarsest allowed by
    // the factor-6 bound
    int k_hi = static_cast<int>(std::floor(std::log2(1.0 / len)));
    while (std::exp2(static_cast<double>(-k_hi)) < len) --k_hi;
    while (std::exp2(static_cast<double>(-(k_hi + 1))) >= len) ++k_hi;
    k_hi = std::min(k_hi, 60);
    int k_lo = k_hi;
    while (k_lo > 1 && std::exp2(static_cast<double>(-(k_lo - 1))) <= 6.0 * len) --k_lo;

    for (int k = k_hi; k >= k_lo; --k) {
        const double h = std::exp2(static_cast<double>(-k));
        if (h > 6.0 * len) break;
        for (int f = 0; f < 2; ++f) {
            const double off = f == 0 ? 0.0 : 1.0 / 3.0;
            double u = std::fmod(u0 - off, 1.0);
            if (u < 0.0) u += 1.0;
            const auto j = static_cast<std::uint64_t>(std::floor(u / h));
            const double start = static_cast<double>(j) * h;
            if (u >= start && u + len <= start + h) {
                double abs_lo = std::fmod(off + start, 1.0);
                return DyadicInterval{f, k, j, abs_lo, h};
            }
        }
    }
    throw std::logic_error("one_third_containing: no dyadic interval found");
}

// ------------------------------------------------- lambda components

namespace {

struct RawInterval {
    double a, b;
    bool open_left; // reaches the segment start, so it can merge backwards
};

std::vector<Arc> merge_intervals(const Curve& curve, std::vector<RawInterval> raw) {
    std::vector<Arc> arcs;
    for (const auto& r : raw) {
        if (!arcs.empty() && r.open_left && arcs.back().b >= r.a - 1e-15 * curve.length())
            arcs.back().b = r.b;
        else
            arcs.push_back(Arc{r.a, r.b});
    }
    // wraparound: join an interval ending at the seam with one starting at 0
    if (curve.closed() && arcs.size() >= 2) {
        const double len = curve.length();
        if (arcs.front().a <= 1e-15 * len && arcs.back().b >= len * (1.0 - 1e-15)) {
            arcs.back().b = len + arcs.front().b;
            arcs.erase(arcs.begin());
        }
    }
    return arcs;
}

} // namespace

std::vector<Arc> lambda_components(const Curve& curve, std::span<const double> center,
                                   double radius) {
    if (!curve.is_euclidean())
        throw UnsupportedOperation("coordinate-ball lambda_components requires a Euclidean curve");
    if (center.size() != curve.dim())
        throw std::invalid_argument("lambda_components: center dimension mismatch");
    if (!(radius > 0.0)) throw std::domain_error("lambda_components: radius must be positive");

    const std::size_t n = curve.vertex_count();
    const double r2 = radius * radius;
    auto sq_to_center = [&](std::span<const double> p) {
        double s = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            const double t = p[k] - center[k];
            s += t * t;
        }
        return s;
    };
    std::vector<char> inside(n);
    for (std::size_t i = 0; i < n; ++i) inside[i] = sq_to_center(curve.vertex(i)) <= r2;

    if (n == 1)
        return inside[0] ? std::vector<Arc>{Arc{0.0, 0.0}} : std::vector<Arc>{};

    const std::size_t n_seg = curve.closed() ? n : n - 1;
    std::vector<RawInterval> raw;
    for (std::size_t i = 0; i < n_seg; ++i) {
        const std::size_t j = (i + 1) % n;
        const double s0 = curve.vertex_param(i);
        const double s1 = i + 1 < n ? curve.vertex_param(i + 1) : curve.length();
        if (inside[i] && inside[j]) {
            raw.push_back(RawInterval{s0, s1, true});
            continue;
        }
        // quadratic |P + t(Q-P) - C|^2 = r^2 on t in [0,1]
        const auto P = curve.vertex(i);
        const auto Q = curve.vertex(j);
        double qa = 0.0, qb = 0.0, qc = -r2;
        for (std::size_t k = 0; k < P.size(); ++k) {
            const double d = Q[k] - P[k];
            const double w = P[k] - center[k];
            qa += d * d;
            qb += 2.0 * d * w;
            qc += w * w;
        }
        const double disc = qb * qb - 4.0 * qa * qc;
        if (inside[i]) { // exits somewhere in (0,1]
            const double t = disc > 0.0 ? (-qb + std::sqrt(disc)) / (2.0 * qa) : 0.0;
            const double tc = std::clamp(t, 0.0, 1.0);
            raw.push_back(RawInterval{s0, s0 + tc * (s1 - s0), true});
        } else if (inside[j]) { // enters somewhere in [0,1)
            const double t = disc > 0.0 ? (-qb - std::sqrt(disc)) / (2.0 * qa) : 1.0;
            const double tc = std::clamp(t, 0.0, 1.0);
            raw.push_back(RawInterval{s0 + tc * (s1 - s0), s1, false});
        } else if (disc > 0.0) { // possible dip through the ball
            const double root = std::sqrt(disc);
            const double t0 = (-qb - root) / (2.0 * qa);
            const double t1 = (-qb + root) / (2.0 * qa);
            if (t1 > 0.0 && t0 < 1.0 && t0 <= t1) {
                const double u0 = std::max(t0, 0.0), u1 = std::min(t1, 1.0);
                if (u1 > u0)
                    raw.push_back(RawInterval{s0 + u0 * (s1 - s0), s0 + u1 * (s1 - s0),
                                              false});
            }
        }
    }
    return merge_intervals(curve, std::move(raw));
}

std::vector<Arc> lambda_components(const Curve& curve, PointId center, double radius) {
    if (!(radius > 0.0)) throw std::domain_error("lambda_components: radius must be positive");
    const MetricSpace* space = curve.space();
    if (space == nullptr)
        throw UnsupportedOperation("id-ball lambda_components requires a metric-backed curve");
    const std::size_t n = curve.vertex_count();
    std::vector<char> inside(n);
    bool all_inside = true;
    for (std::size_t i = 0; i < n; ++i) {
        inside[i] = space->dist(center, curve.vertex_id(i)) <= radius;
        all_inside = all_inside && inside[i];
    }
    if (all_inside) return {Arc{0.0, curve.length()}};

    // vertex-resolution runs of inside vertices
    std::vector<Arc> arcs;
    std::size_t i = 0;
    while (i < n) {
        if (!inside[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && inside[j + 1]) ++j;
        arcs.push_back(Arc{curve.vertex_param(i), curve.vertex_param(j)});
        i = j + 1;
    }
    if (curve.closed() && arcs.size() >= 2 && inside[0] && inside[n - 1]) {
        arcs.back().b = curve.length() + arcs.front().b;
        arcs.erase(arcs.begin());
    }
    return arcs;
}

Arc extend_to_component(const Arc& arc, const std::vector<Arc>& dilated_components,
                        double curve_length) {
    // Components of nested balls nest, so the arc lies wholly inside the
    // dilated component holding its midpoint. Membership is tested modulo
    // the curve length to cover wrap-represented arcs on closed curves.
    const double mid = 0.5 * (arc.a + arc.b);
    const double tol = 1e-12 * (curve_length > 0.0 ? curve_length : 1.0);
    for (const Arc& big : dilated_components) {
        for (int shift = -1; shift <= 1; ++shift) {
            const double t = mid + static_cast<double>(shift) * curve_length;
            if (big.a - tol <= t && t <= big.b + tol) return big;
        }
    }
    throw std::logic_error("extend_to_component: arc not contained in any dilated component");
}

RegularityReport measure_regularity(const Curve& curve,
                                    const std::vector<RegularityTrial>& trials) {
    if (trials.empty()) throw std::domain_error("measure_regularity: no trials");
    RegularityReport rep;
    rep.rows.reserve(trials.size());
    for (const auto& trial : trials) {
        std::vector<Arc> arcs;
        if (!trial.center.empty())
            arcs = lambda_components(curve, trial.center, trial.radius);
        else
            arcs = lambda_components(curve, trial.center_id, trial.radius);
        double mu = 0.0;
        for (const Arc& a : arcs) mu += a.length();
        double ratio;
        if (mu <= 0.0)
            ratio = std::numeric_limits<double>::infinity();
        else
            ratio = std::max(trial.radius / mu, mu / trial.radius);
        rep.rows.push_back(RegularityRow{trial, mu, ratio});
    }
    rep.argmax_index = 0;
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        if (rep.rows[i].ratio > rep.rows[rep.argmax_index].ratio) rep.argmax_index = i;
    rep.c_hat = rep.rows[rep.argmax_index].ratio;
    return rep;
}

} // namespace curvelab
