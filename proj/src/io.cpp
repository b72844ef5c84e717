#include "curvelab/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "curvelab/errors.hpp"

namespace curvelab {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

bool skippable(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::string trimmed(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::vector<double>> read_rows(std::istream& in, const char* what) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        std::vector<double> row;
        for (const std::string& cell : split(line, ',')) {
            try {
                row.push_back(std::stod(trimmed(cell)));
            } catch (const std::exception&) {
                throw ValidationError(std::string(what) + ": bad number '" + cell +
                                      "' on line " + std::to_string(lineno));
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ValidationError(std::string(what) + ": no data rows");
    return rows;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    return in;
}

} // namespace

MetricSpace load_point_cloud_csv(std::istream& in) {
    return MetricSpace::euclidean(read_rows(in, "point cloud CSV"));
}

MetricSpace load_point_cloud_csv_file(const std::string& path) {
    auto in = open_input(path);
    return load_point_cloud_csv(in);
}

void write_point_cloud_csv(std::ostream& out, const MetricSpace& cloud) {
    if (!cloud.is_euclidean())
        throw UnsupportedOperation("point cloud CSV requires a Euclidean cloud");
    out.precision(17);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(static_cast<PointId>(i));
        for (std::size_t k = 0; k < p.size(); ++k) out << (k ? "," : "") << p[k];
        out << "\n";
    }
}

Curve load_curve_csv(std::istream& in) {
    std::string line;
    std::string flag;
    while (std::getline(in, line)) {
        if (skippable(line)) continue;
        flag = trimmed(line);
        break;
    }
    bool closed;
    if (flag == "closed")
        closed = true;
    else if (flag == "open")
        closed = false;
    else
        throw ValidationError("curve CSV: first line must be 'closed' or 'open', got '" + flag +
                              "'");
    return Curve::polyline(read_rows(in, "curve CSV"), closed);
}

Curve load_curve_csv_file(const std::string& path) {
    auto in = open_input(path);
    return load_curve_csv(in);
}

void write_curve_csv(std::ostream& out, const Curve& curve) {
    if (!curve.is_euclidean())
        throw UnsupportedOperation("curve CSV requires a Euclidean curve");
    out.precision(17);
    out << (curve.closed() ? "closed" : "open") << "\n";
    for (std::size_t i = 0; i < curve.vertex_count(); ++i) {
        const auto v = curve.vertex(i);
        for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << v[k];
        out << "\n";
    }
}

MetricSpace load_explicit_metric_json(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ValidationError(std::string("explicit metric JSON: parse error: ") + e.what());
    }
    if (!j.contains("n") || !j.contains("dist"))
        throw ValidationError("explicit metric JSON: need fields 'n' and 'dist'");
    const auto n = j["n"].get<std::size_t>();
    std::vector<double> d;
    d.reserve(j["dist"].size());
    for (const auto& v : j["dist"]) d.push_back(v.get<double>());
    return MetricSpace::explicit_matrix(n, std::move(d));
}

MetricSpace load_explicit_metric_json_file(const std::string& path) {
    auto in = open_input(path);
    return load_explicit_metric_json(in);
}

json explicit_metric_json(const MetricSpace& space) {
    const std::size_t n = space.size();
    json j;
    j["n"] = n;
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k) {
            const double v = space.dist(static_cast<PointId>(i), static_cast<PointId>(k));
            d[i * n + k] = d[k * n + i] = v;
        }
    j["dist"] = d;
    return j;
}

json report_json(const FunctionalReport& r) {
    json j;
    j["functional"] = r.functional;
    j["value"] = r.value;
    j["reference"] = r.reference;
    j["ratio"] = r.ratio;
    j["m"] = r.m;
    j["mode"] = r.mode;
    j["seed"] = r.seed;
    j["std_error"] = r.std_error;
    j["triple_count"] = r.triple_count;
    j["component_count"] = r.component_count;
    j["connector_length"] = r.connector_length;
    if (!r.notes.empty()) j["notes"] = r.notes;
    if (!r.per_ball.empty()) {
        json rows = json::array();
        for (const BallRow& b : r.per_ball) {
            json row;
            row["scale"] = b.scale;
            row["center"] = b.center;
            row["radius"] = b.radius;
            row["beta"] = b.beta;
            row["term"] = b.term;
            row["triples"] = b.triples;
            row["mc"] = b.monte_carlo;
            row["std_error"] = b.std_error;
            rows.push_back(std::move(row));
        }
        j["per_ball"] = std::move(rows);
    }
    return j;
}

void write_per_ball_csv(std::ostream& out, const FunctionalReport& r) {
    out.precision(17);
    out << "scale,center,radius,beta,term,triples,mc,std_error\n";
    for (const BallRow& b : r.per_ball)
        out << b.scale << "," << b.center << "," << b.radius << "," << b.beta << "," << b.term
            << "," << b.triples << "," << (b.monte_carlo ? 1 : 0) << "," << b.std_error << "\n";
}

json family_json(const MultiresolutionFamily& fam) {
    json j;
    j["A"] = fam.A;
    j["n_min"] = fam.n_min;
    j["n_max"] = fam.n_max;
    j["nested"] = fam.nested;
    if (!fam.warnings.empty()) j["warnings"] = fam.warnings;
    json scales = json::array();
    for (std::size_t s = 0; s < fam.nets.size(); ++s) {
        json sj;
        sj["n"] = fam.scale_at(s);
        sj["epsilon"] = fam.nets[s].epsilon;
        sj["net"] = fam.nets[s].members;
        sj["ball_radius"] = fam.balls[s].empty() ? 0.0 : fam.balls[s].front().radius;
        sj["ball_count"] = fam.balls[s].size();
        scales.push_back(std::move(sj));
    }
    j["scales"] = std::move(scales);
    return j;
}

json tour_json(const MetricSpace& space, const NetGraph& graph, const Tour& tour) {
    json j;
    json verts = json::array();
    for (PointId id : graph.vertices) {
        json v;
        v["id"] = id;
        if (space.is_euclidean()) {
            const auto p = space.point(id);
            v["coords"] = std::vector<double>(p.begin(), p.end());
        }
        verts.push_back(std::move(v));
    }
    j["vertices"] = std::move(verts);
    json edges = json::array();
    for (const auto& e : graph.edges) edges.push_back({e.u, e.v, e.length});
    j["edges"] = std::move(edges);
    j["order"] = tour.vertex_seq;
    j["length"] = tour.length;
    j["connect_radius"] = graph.connect_radius;
    j["conformant"] = graph.conformant;
    return j;
}

// ------------------------------------------------------------------ SVG

namespace {
void require_2d(const MetricSpace& space, const char* what) {
    if (!space.is_euclidean() || space.dim() != 2)
        throw UnsupportedOperation(std::string(what) + ": SVG output needs 2-D Euclidean data");
}
} // namespace

void SvgScene::add_points(const MetricSpace& cloud, double radius_px, const std::string& color) {
    require_2d(cloud, "add_points");
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(static_cast<PointId>(i));
        dots_.push_back(Dot{p[0], p[1], radius_px, color});
    }
}

void SvgScene::add_curve(const Curve& curve, const std::string& color) {
    if (!curve.is_euclidean() || curve.dim() != 2)
        throw UnsupportedOperation("add_curve: SVG output needs a 2-D Euclidean curve");
    Poly poly;
    poly.closed = curve.closed();
    poly.color = color;
    for (std::size_t i = 0; i < curve.vertex_count(); ++i) {
        const auto v = curve.vertex(i);
        poly.xy.push_back(v[0]);
        poly.xy.push_back(v[1]);
    }
    polylines_.push_back(std::move(poly));
}

void SvgScene::add_balls(const MetricSpace& space, const MultiresolutionFamily& family,
                         const std::string& color) {
    require_2d(space, "add_balls");
    for (const auto& scale : family.balls)
        for (const Ball& b : scale) {
            const auto p = space.point(b.center);
            circles_.push_back(Circle{p[0], p[1], b.radius, color});
        }
}

void SvgScene::add_tour(const MetricSpace& space, const NetGraph& graph,
                        const std::string& color) {
    require_2d(space, "add_tour");
    for (const auto& e : graph.edges) {
        const auto a = space.point(graph.vertices[e.u]);
        const auto b = space.point(graph.vertices[e.v]);
        Poly poly;
        poly.closed = false;
        poly.color = color;
        poly.dashed = true;
        poly.xy = {a[0], a[1], b[0], b[1]};
        polylines_.push_back(std::move(poly));
    }
}

void SvgScene::write(std::ostream& out, double size_px) const {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    auto grow = [&](double x, double y, double r) {
        xmin = std::min(xmin, x - r);
        xmax = std::max(xmax, x + r);
        ymin = std::min(ymin, y - r);
        ymax = std::max(ymax, y + r);
    };
    for (const auto& c : circles_) grow(c.x, c.y, c.r);
    for (const auto& d : dots_) grow(d.x, d.y, 0.0);
    for (const auto& p : polylines_)
        for (std::size_t i = 0; i + 1 < p.xy.size(); i += 2) grow(p.xy[i], p.xy[i + 1], 0.0);
    if (!(xmax >= xmin)) {
        xmin = ymin = 0.0;
        xmax = ymax = 1.0;
    }
    const double margin = 0.05 * std::max(xmax - xmin, ymax - ymin) + 1e-12;
    xmin -= margin;
    xmax += margin;
    ymin -= margin;
    ymax += margin;
    const double scale = size_px / std::max(xmax - xmin, ymax - ymin);
    auto X = [&](double x) { return (x - xmin) * scale; };
    auto Y = [&](double y) { return (ymax - y) * scale; }; // flip y

    out.precision(8);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px << "\" height=\""
        << size_px << "\" viewBox=\"0 0 " << size_px << " " << size_px << "\">\n";
    for (const auto& c : circles_)
        out << "  <circle cx=\"" << X(c.x) << "\" cy=\"" << Y(c.y) << "\" r=\"" << c.r * scale
            << "\" fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"0.6\"/>\n";
    for (const auto& p : polylines_) {
        out << "  <" << (p.closed ? "polygon" : "polyline") << " points=\"";
        for (std::size_t i = 0; i + 1 < p.xy.size(); i += 2)
            out << X(p.xy[i]) << "," << Y(p.xy[i + 1]) << " ";
        out << "\" fill=\"none\" stroke=\"" << p.color << "\" stroke-width=\"1.2\"";
        if (p.dashed) out << " stroke-dasharray=\"4 3\"";
        out << "/>\n";
    }
    for (const auto& d : dots_)
        out << "  <circle cx=\"" << X(d.x) << "\" cy=\"" << Y(d.y) << "\" r=\"" << d.px
            << "\" fill=\"" << d.color << "\"/>\n";
    out << "</svg>\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << content;
}

} // namespace curvelab
