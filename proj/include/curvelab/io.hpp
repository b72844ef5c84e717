#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "curvelab/curve.hpp"
#include "curvelab/metric.hpp"
#include "curvelab/nets.hpp"
#include "curvelab/spanning.hpp"
#include "curvelab/verify.hpp"

namespace curvelab {

using json = nlohmann::ordered_json;

// Point cloud CSV: one point per row, columns = coordinates. '#' comments
// and blank lines ignored.
MetricSpace load_point_cloud_csv(std::istream& in);
MetricSpace load_point_cloud_csv_file(const std::string& path);
void write_point_cloud_csv(std::ostream& out, const MetricSpace& cloud);

// Curve CSV: first line is the header flag `closed` or `open`, then ordered
// vertex rows.
Curve load_curve_csv(std::istream& in);
Curve load_curve_csv_file(const std::string& path);
void write_curve_csv(std::ostream& out, const Curve& curve);

// Explicit metric JSON: {"n": int, "dist": row-major flat array}.
MetricSpace load_explicit_metric_json(std::istream& in);
MetricSpace load_explicit_metric_json_file(const std::string& path);
// Materializes any space kind into the explicit-matrix form.
json explicit_metric_json(const MetricSpace& space);

json report_json(const FunctionalReport& report);
void write_per_ball_csv(std::ostream& out, const FunctionalReport& report);

json family_json(const MultiresolutionFamily& family);

// {vertices, edges, order} per the tour export schema; vertex coordinates
// included for Euclidean spaces.
json tour_json(const MetricSpace& space, const NetGraph& graph, const Tour& tour);

// Minimal 2-D SVG emission: curve polylines, family ball overlays, tours.
class SvgScene {
public:
    void add_points(const MetricSpace& cloud, double radius_px = 1.5,
                    const std::string& color = "#444444");
    void add_curve(const Curve& curve, const std::string& color = "#1f77b4");
    void add_balls(const MetricSpace& space, const MultiresolutionFamily& family,
                   const std::string& color = "#bbbbbb");
    void add_tour(const MetricSpace& space, const NetGraph& graph,
                  const std::string& color = "#d62728");
    void write(std::ostream& out, double size_px = 800.0) const;
    bool empty() const { return circles_.empty() && polylines_.empty() && dots_.empty(); }

private:
    struct Circle {
        double x, y, r;
        std::string color;
    };
    struct Poly {
        std::vector<double> xy;
        bool closed;
        std::string color;
        bool dashed = false;
    };
    struct Dot {
        double x, y, px;
        std::string color;
    };
    std::vector<Circle> circles_;
    std::vector<Poly> polylines_;
    std::vector<Dot> dots_;
};

void write_file(const std::string& path, const std::string& content);

} // namespace curvelab
