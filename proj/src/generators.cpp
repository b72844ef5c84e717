#include "curvelab/generators.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "curvelab/rng.hpp"

namespace curvelab {

namespace {

constexpr double kPi = std::numbers::pi;

Generated make_curve_result(std::vector<double> coords, std::size_t dim, bool closed,
                            std::optional<double> analytic, std::string desc) {
    Generated g;
    g.space = std::make_shared<MetricSpace>(MetricSpace::euclidean(coords, dim));
    g.curve = Curve::polyline(std::move(coords), dim, closed);
    g.analytic_length = analytic;
    g.description = std::move(desc);
    return g;
}

Generated gen_segment(const GeneratorSpec& s) {
    if (s.m < 2) throw std::domain_error("segment: m must be >= 2");
    if (!(s.scale > 0.0)) throw std::domain_error("segment: length must be positive");
    std::vector<double> c;
    c.reserve(2 * s.m);
    for (std::size_t k = 0; k < s.m; ++k) {
        c.push_back(s.scale * static_cast<double>(k) / static_cast<double>(s.m - 1));
        c.push_back(0.0);
    }
    return make_curve_result(std::move(c), 2, false, s.scale, "segment");
}

Generated gen_circle(const GeneratorSpec& s) {
    if (s.m < 3) throw std::domain_error("circle: m must be >= 3");
    if (!(s.scale > 0.0)) throw std::domain_error("circle: radius must be positive");
    std::vector<double> c;
    c.reserve(2 * s.m);
    for (std::size_t k = 0; k < s.m; ++k) {
        const double th = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(s.m);
        c.push_back(s.scale * std::cos(th));
        c.push_back(s.scale * std::sin(th));
    }
    return make_curve_result(std::move(c), 2, true, 2.0 * kPi * s.scale, "circle");
}

Generated gen_stadium(const GeneratorSpec& s) {
    if (s.m < 8) throw std::domain_error("stadium: m must be >= 8");
    if (!(s.scale > 0.0) || !(s.straight > 0.0))
        throw std::domain_error("stadium: radius and straight length must be positive");
    const double r = s.scale, a = s.straight;
    const double perim = 2.0 * a + 2.0 * kPi * r;
    auto point = [&](double t) -> std::pair<double, double> {
        // counterclockwise from (-a/2, -r)
        if (t < a) return {-a / 2 + t, -r};
        t -= a;
        if (t < kPi * r) {
            const double th = -kPi / 2 + t / r;
            return {a / 2 + r * std::cos(th), r * std::sin(th)};
        }
        t -= kPi * r;
        if (t < a) return {a / 2 - t, r};
        t -= a;
        const double th = kPi / 2 + t / r;
        return {-a / 2 + r * std::cos(th), r * std::sin(th)};
    };
    std::vector<double> c;
    c.reserve(2 * s.m);
    for (std::size_t k = 0; k < s.m; ++k) {
        const auto [x, y] = point(perim * static_cast<double>(k) / static_cast<double>(s.m));
        c.push_back(x);
        c.push_back(y);
    }
    return make_curve_result(std::move(c), 2, true, perim, "stadium");
}

Generated gen_koch(const GeneratorSpec& s) {
    if (s.level < 0 || s.level > 9) throw std::domain_error("koch: level must lie in [0, 9]");
    if (!(s.scale > 0.0)) throw std::domain_error("koch: base length must be positive");
    struct P {
        double x, y;
    };
    std::vector<P> pts{{0.0, 0.0}, {s.scale, 0.0}};
    const double c60 = 0.5, s60 = std::sqrt(3.0) / 2.0;
    for (int l = 0; l < s.level; ++l) {
        std::vector<P> next;
        next.reserve((pts.size() - 1) * 4 + 1);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const P p = pts[i], q = pts[i + 1];
            const double dx = (q.x - p.x) / 3.0, dy = (q.y - p.y) / 3.0;
            const P a{p.x + dx, p.y + dy};
            const P b{p.x + 2 * dx, p.y + 2 * dy};
            const P apex{a.x + dx * c60 - dy * s60, a.y + dx * s60 + dy * c60};
            next.push_back(p);
            next.push_back(a);
            next.push_back(apex);
            next.push_back(b);
        }
        next.push_back(pts.back());
        pts = std::move(next);
    }
    std::vector<double> c;
    c.reserve(2 * pts.size());
    for (const P& p : pts) {
        c.push_back(p.x);
        c.push_back(p.y);
    }
    const double length = s.scale * std::pow(4.0 / 3.0, s.level);
    return make_curve_result(std::move(c), 2, false, length, "koch_prefix");
}

Generated gen_lipschitz(const GeneratorSpec& s) {
    if (s.m < 2) throw std::domain_error("lipschitz: m must be >= 2");
    if (!(s.scale > 0.0) || !(s.amplitude >= 0.0))
        throw std::domain_error("lipschitz: bad scale or amplitude");
    SplitMix64 rng(s.seed);
    const double dx = s.scale / static_cast<double>(s.m - 1);
    std::vector<double> c;
    c.reserve(2 * s.m);
    double y = 0.0;
    for (std::size_t k = 0; k < s.m; ++k) {
        c.push_back(dx * static_cast<double>(k));
        c.push_back(y);
        y += s.amplitude * (2.0 * rng.next_double() - 1.0) * dx;
    }
    return make_curve_result(std::move(c), 2, false, std::nullopt, "lipschitz_graph");
}

Generated gen_cantor(const GeneratorSpec& s) {
    if (s.level < 0 || s.level > 8) throw std::domain_error("cantor: level must lie in [0, 8]");
    if (!(s.scale > 0.0)) throw std::domain_error("cantor: side must be positive");
    std::vector<double> pts{0.0, 0.0}; // lower-left corners, flat xy
    double side = s.scale;
    for (int l = 0; l < s.level; ++l) {
        side /= 4.0;
        std::vector<double> next;
        next.reserve(pts.size() * 4);
        for (std::size_t i = 0; i < pts.size(); i += 2) {
            const double x = pts[i], y = pts[i + 1];
            const double o = 3.0 * side;
            next.insert(next.end(), {x, y, x + o, y, x, y + o, x + o, y + o});
        }
        pts = std::move(next);
    }
    Generated g;
    const std::size_t n = pts.size() / 2;
    g.space = std::make_shared<MetricSpace>(MetricSpace::euclidean(std::move(pts), 2));
    g.weights.assign(n, 1.0 / static_cast<double>(n));
    g.description = "four_corner_cantor";
    return g;
}

Generated gen_star(const GeneratorSpec& s) {
    if (s.arms < 1) throw std::domain_error("star: arms must be >= 1");
    if (s.m < 1) throw std::domain_error("star: points per arm must be >= 1");
    if (!(s.scale > 0.0)) throw std::domain_error("star: arm length must be positive");
    const std::size_t per = s.m;
    const std::size_t n = 1 + static_cast<std::size_t>(s.arms) * per;
    const double h = s.scale / static_cast<double>(per);
    auto radial = [&](std::size_t idx) { // distance from center; idx 0 = center
        if (idx == 0) return 0.0;
        const std::size_t p = (idx - 1) % per + 1;
        return h * static_cast<double>(p);
    };
    auto arm = [&](std::size_t idx) -> std::size_t {
        return idx == 0 ? static_cast<std::size_t>(-1) : (idx - 1) / per;
    };
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v;
            if (i == 0)
                v = radial(j);
            else if (arm(i) == arm(j))
                v = std::abs(radial(i) - radial(j));
            else
                v = radial(i) + radial(j);
            d[i * n + j] = d[j * n + i] = v;
        }
    Generated g;
    g.space = std::make_shared<MetricSpace>(MetricSpace::explicit_matrix(n, std::move(d)));
    g.analytic_length = s.scale * static_cast<double>(s.arms);
    g.description = "star_tree";
    return g;
}

Generated gen_snowflake(const GeneratorSpec& s) {
    if (s.m < 2) throw std::domain_error("snowflake: m must be >= 2");
    if (!(s.alpha > 0.0) || s.alpha > 1.0)
        throw std::domain_error("snowflake: alpha must lie in (0, 1]");
    if (!(s.scale > 0.0)) throw std::domain_error("snowflake: length must be positive");
    std::vector<double> xs(s.m);
    for (std::size_t k = 0; k < s.m; ++k)
        xs[k] = s.scale * static_cast<double>(k) / static_cast<double>(s.m - 1);
    auto base = std::make_shared<MetricSpace>(MetricSpace::euclidean(std::move(xs), 1));
    Generated g;
    g.space = std::make_shared<MetricSpace>(MetricSpace::power(base, s.alpha));
    PointSubset ids(s.m);
    for (std::size_t k = 0; k < s.m; ++k) ids[k] = static_cast<PointId>(k);
    g.curve = Curve::through_points(g.space, std::move(ids), false);
    const double gap = s.scale / static_cast<double>(s.m - 1);
    g.analytic_length = static_cast<double>(s.m - 1) * std::pow(gap, s.alpha);
    g.description = "snowflake_segment";
    return g;
}

} // namespace

Generated generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
    case GeneratorKind::Segment: return gen_segment(spec);
    case GeneratorKind::Circle: return gen_circle(spec);
    case GeneratorKind::Stadium: return gen_stadium(spec);
    case GeneratorKind::KochPrefix: return gen_koch(spec);
    case GeneratorKind::LipschitzGraph: return gen_lipschitz(spec);
    case GeneratorKind::FourCornerCantor: return gen_cantor(spec);
    case GeneratorKind::StarTree: return gen_star(spec);
    case GeneratorKind::SnowflakeSegment: return gen_snowflake(spec);
    }
    throw std::logic_error("generate: unknown kind");
}

GeneratorSpec parse_generator_spec(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.empty()) throw std::invalid_argument("generator spec: empty");

    auto need = [&](std::size_t k) {
        if (parts.size() <= k)
            throw std::invalid_argument("generator spec '" + text + "': missing argument " +
                                        std::to_string(k));
        return parts[k];
    };
    auto opt_d = [&](std::size_t k, double dflt) {
        return parts.size() > k ? std::stod(parts[k]) : dflt;
    };

    GeneratorSpec s;
    const std::string& kind = parts[0];
    try {
        if (kind == "circle") {
            s.kind = GeneratorKind::Circle;
            s.scale = std::stod(need(1));
            s.m = static_cast<std::size_t>(std::stoul(need(2)));
        } else if (kind == "segment") {
            s.kind = GeneratorKind::Segment;
            s.scale = std::stod(need(1));
            s.m = static_cast<std::size_t>(std::stoul(need(2)));
        } else if (kind == "stadium") {
            s.kind = GeneratorKind::Stadium;
            s.scale = std::stod(need(1));
            s.straight = std::stod(need(2));
            s.m = static_cast<std::size_t>(std::stoul(need(3)));
        } else if (kind == "koch") {
            s.kind = GeneratorKind::KochPrefix;
            s.level = std::stoi(need(1));
            s.scale = opt_d(2, 1.0);
        } else if (kind == "lipschitz") {
            s.kind = GeneratorKind::LipschitzGraph;
            s.seed = std::stoull(need(1));
            s.amplitude = std::stod(need(2));
            s.m = static_cast<std::size_t>(std::stoul(need(3)));
            s.scale = opt_d(4, 1.0);
        } else if (kind == "cantor") {
            s.kind = GeneratorKind::FourCornerCantor;
            s.level = std::stoi(need(1));
            s.scale = opt_d(2, 1.0);
        } else if (kind == "star") {
            s.kind = GeneratorKind::StarTree;
            s.arms = std::stoi(need(1));
            s.scale = std::stod(need(2));
            s.m = static_cast<std::size_t>(std::stoul(need(3)));
        } else if (kind == "snowflake") {
            s.kind = GeneratorKind::SnowflakeSegment;
            s.alpha = std::stod(need(1));
            s.m = static_cast<std::size_t>(std::stoul(need(2)));
            s.scale = opt_d(3, 1.0);
        } else {
            throw std::invalid_argument("generator spec: unknown kind '" + kind + "'");
        }
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("generator spec '" + text + "': malformed number");
    }
    return s;
}

std::string generator_spec_string(const GeneratorSpec& s) {
    std::ostringstream out;
    switch (s.kind) {
    case GeneratorKind::Circle: out << "circle:" << s.scale << ":" << s.m; break;
    case GeneratorKind::Segment: out << "segment:" << s.scale << ":" << s.m; break;
    case GeneratorKind::Stadium:
        out << "stadium:" << s.scale << ":" << s.straight << ":" << s.m;
        break;
    case GeneratorKind::KochPrefix: out << "koch:" << s.level << ":" << s.scale; break;
    case GeneratorKind::LipschitzGraph:
        out << "lipschitz:" << s.seed << ":" << s.amplitude << ":" << s.m << ":" << s.scale;
        break;
    case GeneratorKind::FourCornerCantor: out << "cantor:" << s.level << ":" << s.scale; break;
    case GeneratorKind::StarTree:
        out << "star:" << s.arms << ":" << s.scale << ":" << s.m;
        break;
    case GeneratorKind::SnowflakeSegment:
        out << "snowflake:" << s.alpha << ":" << s.m << ":" << s.scale;
        break;
    }
    return out.str();
}

} // namespace curvelab
