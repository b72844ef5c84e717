// curvelab: batch front door for the curvature/beta functional library.
// Commands: generate, nets, beta, curvature, verify, tour, report.
// Exit codes: 0 ok, 2 usage, 3 data validation, 4 disconnected input.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "curvelab/beta.hpp"
#include "curvelab/curvature.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/generators.hpp"
#include "curvelab/io.hpp"
#include "curvelab/metric.hpp"
#include "curvelab/nets.hpp"
#include "curvelab/rng.hpp"
#include "curvelab/spanning.hpp"
#include "curvelab/verify.hpp"

namespace cl = curvelab;
using cl::json;

namespace {

struct InputOptions {
    std::string gen;
    std::string cloud_csv;
    std::string curve_csv;
    std::string metric_json;
};

struct FamilyOptions {
    double A = 2.0;
    std::optional<int> n_min;
    std::optional<int> n_max;
    bool nested = true;
    std::string order = "input";
};

struct EstimatorFlags {
    std::size_t m = 200;
    std::string mode = "det";
    std::uint64_t seed = 1;
    bool seed_given = false;
    std::uint64_t cap = 20000000;
    std::uint64_t mc_samples = 1000000;
    unsigned threads = 1;
};

struct OutputOptions {
    std::string json_path;
    std::string perball_path;
    std::string svg_path;
    bool no_timestamp = false;
};

struct LoadedInput {
    std::shared_ptr<const cl::MetricSpace> space;
    std::optional<cl::Curve> curve;
    std::optional<double> analytic_length;
    std::vector<double> weights;
    std::string source;
};

LoadedInput load_input(const InputOptions& in) {
    const int given = (!in.gen.empty()) + (!in.cloud_csv.empty()) + (!in.curve_csv.empty()) +
                      (!in.metric_json.empty());
    if (given != 1)
        throw std::invalid_argument("exactly one input source required "
                                    "(--gen | --input | --curve | --metric)");
    LoadedInput out;
    if (!in.gen.empty()) {
        const auto g = cl::generate(cl::parse_generator_spec(in.gen));
        out.space = g.space;
        out.curve = g.curve;
        out.analytic_length = g.analytic_length;
        out.weights = g.weights;
        out.source = "gen:" + in.gen;
    } else if (!in.cloud_csv.empty()) {
        out.space = std::make_shared<cl::MetricSpace>(cl::load_point_cloud_csv_file(in.cloud_csv));
        out.source = "cloud:" + in.cloud_csv;
    } else if (!in.curve_csv.empty()) {
        cl::Curve c = cl::load_curve_csv_file(in.curve_csv);
        std::vector<double> coords;
        for (std::size_t i = 0; i < c.vertex_count(); ++i) {
            const auto v = c.vertex(i);
            coords.insert(coords.end(), v.begin(), v.end());
        }
        out.space = std::make_shared<cl::MetricSpace>(
            cl::MetricSpace::euclidean(std::move(coords), c.dim()));
        out.curve = std::move(c);
        out.source = "curve:" + in.curve_csv;
    } else {
        out.space = std::make_shared<cl::MetricSpace>(
            cl::load_explicit_metric_json_file(in.metric_json));
        out.source = "metric:" + in.metric_json;
    }
    return out;
}

cl::NetOrder parse_order(const std::string& text) {
    if (text == "input") return cl::NetOrder::Input;
    if (text == "farthest") return cl::NetOrder::FarthestFirst;
    throw std::invalid_argument("--order must be 'input' or 'farthest'");
}

cl::EstimatorOptions make_estimator(const EstimatorFlags& f) {
    cl::EstimatorOptions o;
    o.m = f.m;
    if (f.mode == "det")
        o.mode = cl::EstimatorMode::Deterministic;
    else if (f.mode == "mc")
        o.mode = cl::EstimatorMode::MonteCarlo;
    else
        throw std::invalid_argument("--mode must be 'det' or 'mc'");
    if (o.mode == cl::EstimatorMode::MonteCarlo && !f.seed_given)
        throw std::invalid_argument("--seed is mandatory in mc mode");
    o.seed = f.seed;
    o.triple_cap = f.cap;
    o.mc_samples = f.mc_samples;
    o.threads = f.threads;
    return o;
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc;
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

json resolved_config(const std::string& command, const LoadedInput& input,
                     const FamilyOptions* fam, const EstimatorFlags* est) {
    json c;
    c["command"] = command;
    c["input"] = input.source;
    if (fam) {
        c["A"] = fam->A;
        if (fam->n_min) c["n_min"] = *fam->n_min;
        if (fam->n_max) c["n_max"] = *fam->n_max;
        c["nested"] = fam->nested;
        c["order"] = fam->order;
    }
    if (est) {
        c["m"] = est->m;
        c["mode"] = est->mode;
        c["seed"] = est->seed;
        c["cap"] = est->cap;
        c["mc_samples"] = est->mc_samples;
        c["threads"] = est->threads;
    }
    return c;
}

void emit(const json& doc, const OutputOptions& out) {
    const std::string text = doc.dump(2) + "\n";
    if (!out.json_path.empty())
        cl::write_file(out.json_path, text);
    else
        std::cout << text;
}

json wrap_report(json config, json payload, const OutputOptions& out) {
    json doc;
    if (!out.no_timestamp) doc["timestamp"] = iso_timestamp();
    doc["config"] = std::move(config);
    doc["report"] = std::move(payload);
    return doc;
}

void maybe_write_perball(const cl::FunctionalReport& rep, const OutputOptions& out) {
    if (out.perball_path.empty()) return;
    std::ostringstream csv;
    cl::write_per_ball_csv(csv, rep);
    cl::write_file(out.perball_path, csv.str());
}

// ---------------------------------------------------------------- commands

int cmd_generate(const InputOptions& in, const std::string& out_base, const OutputOptions& out) {
    const LoadedInput g = load_input(in);
    json summary;
    summary["source"] = g.source;
    summary["points"] = g.space->size();
    if (g.analytic_length) summary["analytic_length"] = *g.analytic_length;
    if (!out_base.empty()) {
        json files = json::array();
        if (g.space->is_euclidean()) {
            std::ostringstream csv;
            cl::write_point_cloud_csv(csv, *g.space);
            cl::write_file(out_base + ".points.csv", csv.str());
            files.push_back(out_base + ".points.csv");
        } else {
            cl::write_file(out_base + ".metric.json",
                           cl::explicit_metric_json(*g.space).dump(2) + "\n");
            files.push_back(out_base + ".metric.json");
        }
        if (g.curve && g.curve->is_euclidean()) {
            std::ostringstream csv;
            cl::write_curve_csv(csv, *g.curve);
            cl::write_file(out_base + ".curve.csv", csv.str());
            files.push_back(out_base + ".curve.csv");
        }
        if (!g.weights.empty()) {
            std::ostringstream csv;
            csv.precision(17);
            for (double w : g.weights) csv << w << "\n";
            cl::write_file(out_base + ".weights.csv", csv.str());
            files.push_back(out_base + ".weights.csv");
        }
        summary["files"] = std::move(files);
    }
    if (g.curve) summary["curve_length"] = g.curve->length();
    emit(wrap_report(resolved_config("generate", g, nullptr, nullptr), summary, out), out);
    return 0;
}

cl::MultiresolutionFamily family_for(const cl::MetricSpace& space, const cl::PointSubset& domain,
                                     const FamilyOptions& fam) {
    return cl::build_family(space, domain, fam.A, fam.n_min, fam.n_max, fam.nested,
                            parse_order(fam.order));
}

int cmd_nets(const InputOptions& in, const FamilyOptions& fam, const OutputOptions& out) {
    const LoadedInput g = load_input(in);
    const auto domain = cl::all_points(*g.space);
    const auto family = family_for(*g.space, domain, fam);
    json payload = cl::family_json(family);
    payload["total_balls"] = family.total_balls();
    if (!out.svg_path.empty()) {
        cl::SvgScene scene;
        scene.add_points(*g.space);
        if (g.curve && g.curve->is_euclidean()) scene.add_curve(*g.curve);
        scene.add_balls(*g.space, family);
        std::ostringstream svg;
        scene.write(svg);
        cl::write_file(out.svg_path, svg.str());
    }
    emit(wrap_report(resolved_config("nets", g, &fam, nullptr), payload, out), out);
    return 0;
}

int cmd_beta(const InputOptions& in, const FamilyOptions& fam, const EstimatorFlags& est,
             const OutputOptions& out) {
    const LoadedInput g = load_input(in);
    // curve inputs are resampled at m; raw clouds are used as-is
    std::shared_ptr<const cl::MetricSpace> cloud = g.space;
    double reference = g.analytic_length.value_or(0.0);
    if (g.curve && g.curve->is_euclidean()) {
        const auto sc = cl::sample_curve(*g.curve, est.m);
        cloud = sc.space;
        reference = g.curve->length();
    }
    const auto domain = cl::all_points(*cloud);
    const auto family = family_for(*cloud, domain, fam);
    const auto sum = cl::beta_inf_multires_sum(*cloud, domain, family);

    cl::FunctionalReport rep;
    rep.functional = "beta_inf_multires_sum";
    rep.value = sum.total;
    rep.reference = reference;
    rep.ratio = reference > 0.0 ? sum.total / reference : 0.0;
    rep.m = est.m;
    for (const auto& row : sum.rows)
        rep.per_ball.push_back(cl::BallRow{row.scale, row.ball.center, row.ball.radius, row.beta,
                                           row.term, 0, false, 0.0});
    maybe_write_perball(rep, out);
    emit(wrap_report(resolved_config("beta", g, &fam, &est), cl::report_json(rep), out), out);
    return 0;
}

int cmd_curvature(const InputOptions& in, std::size_t samples, std::uint64_t seed, double comp,
                  const OutputOptions& out) {
    const LoadedInput g = load_input(in);
    const std::size_t n = g.space->size();
    std::ostringstream csv;
    csv.precision(17);
    csv << "i,j,k,d12,d23,d13,delta1,delta,menger,comparable\n";
    cl::SplitMix64 rng(seed);
    json stats;
    double max_c = 0.0, max_delta = 0.0;
    for (std::size_t t = 0; t < samples; ++t) {
        const auto i = static_cast<cl::PointId>(rng.next_below(n));
        const auto j = static_cast<cl::PointId>(rng.next_below(n));
        const auto k = static_cast<cl::PointId>(rng.next_below(n));
        const auto td = cl::triple_distances(*g.space, i, j, k);
        const double c = cl::menger(td);
        const double dm = cl::delta_min(td);
        max_c = std::max(max_c, c);
        max_delta = std::max(max_delta, dm);
        csv << i << "," << j << "," << k << "," << td.d12 << "," << td.d23 << "," << td.d13
            << "," << cl::delta1(td) << "," << dm << "," << c << ","
            << (cl::is_comparable(td, comp) ? 1 : 0) << "\n";
    }
    if (!out.perball_path.empty()) cl::write_file(out.perball_path, csv.str());
    stats["samples"] = samples;
    stats["comparability_scale"] = comp;
    stats["max_menger"] = max_c;
    stats["max_delta"] = max_delta;
    if (out.perball_path.empty()) stats["csv"] = csv.str();
    emit(wrap_report(resolved_config("curvature", g, nullptr, nullptr), stats, out), out);
    return 0;
}

struct VerifyFlags {
    std::string functional = "global";
    double R = 0.5;
    double z_param = 0.0;
    cl::PointId z_id = 0;
    double comp_A = 3.0;
    int depth = 12;
    bool rotated = false;
};

json run_functional(const LoadedInput& g, const VerifyFlags& vf, const FamilyOptions& fam,
                    const cl::EstimatorOptions& opts) {
    const std::string& f = vf.functional;
    auto need_curve = [&]() -> const cl::Curve& {
        if (!g.curve) throw std::invalid_argument("functional '" + f + "' needs a curve input");
        return *g.curve;
    };

    if (f == "global") return cl::report_json(cl::global_curvature_functional(need_curve(), opts));
    if (f == "multires")
        return cl::report_json(cl::multires_curvature_sum(need_curve(), fam.A, opts, fam.n_min,
                                                          fam.n_max, fam.nested));
    if (f == "localized-global" || f == "localized-multires") {
        const auto kind = f == "localized-global" ? cl::LocalizedKind::Global
                                                  : cl::LocalizedKind::Multires;
        cl::LocalizedOptions lo;
        lo.A = fam.A;
        lo.nested = fam.nested;
        return cl::report_json(
            cl::localized_functional(need_curve(), vf.z_param, vf.R, kind, opts, lo));
    }
    if (f == "hahlomaa") {
        if (g.curve) {
            const auto sc = cl::sample_curve(*g.curve, opts.m);
            return cl::report_json(cl::hahlomaa_condition_sum(*sc.space, sc.ids, sc.weights,
                                                              vf.comp_A, vf.z_id, vf.R, opts));
        }
        const auto ids = cl::all_points(*g.space);
        std::vector<double> w = g.weights;
        if (w.empty()) w.assign(ids.size(), 1.0 / static_cast<double>(ids.size()));
        return cl::report_json(
            cl::hahlomaa_condition_sum(*g.space, ids, w, vf.comp_A, vf.z_id, vf.R, opts));
    }
    if (f == "beta-inf-sum") {
        std::shared_ptr<const cl::MetricSpace> cloud = g.space;
        double reference = g.analytic_length.value_or(0.0);
        if (g.curve && g.curve->is_euclidean()) {
            const auto sc = cl::sample_curve(*g.curve, opts.m);
            cloud = sc.space;
            reference = g.curve->length();
        }
        const auto domain = cl::all_points(*cloud);
        const auto family = cl::build_family(*cloud, domain, fam.A, fam.n_min, fam.n_max,
                                             fam.nested, parse_order(fam.order));
        const auto sum = cl::beta_inf_multires_sum(*cloud, domain, family);
        cl::FunctionalReport rep;
        rep.functional = "beta_inf_multires_sum";
        rep.value = sum.total;
        rep.reference = reference;
        rep.ratio = reference > 0.0 ? sum.total / reference : 0.0;
        rep.m = opts.m;
        for (const auto& row : sum.rows)
            rep.per_ball.push_back(cl::BallRow{row.scale, row.ball.center, row.ball.radius,
                                               row.beta, row.term, 0, false, 0.0});
        return cl::report_json(rep);
    }
    if (f == "dyadic") {
        const cl::Curve& c = need_curve();
        const cl::DyadicFiltration filt{vf.rotated, vf.depth};
        const double value = cl::dyadic_excess_sum(c, filt, vf.depth);
        json j;
        j["functional"] = "dyadic_excess_sum";
        j["depth"] = vf.depth;
        j["rotated"] = vf.rotated;
        j["value"] = value;
        j["reference"] = c.length();
        j["bound_holds"] = value <= c.length() + 1e-9;
        return j;
    }
    if (f == "large-ball") {
        const cl::Curve& c = need_curve();
        const auto sc = cl::sample_curve(c, opts.m);
        const auto family = cl::build_family(*sc.space, cl::unique_ids(sc.ids), fam.A, fam.n_min,
                                             fam.n_max, fam.nested, parse_order(fam.order));
        const auto rep = cl::large_ball_diagnostic(sc, family);
        json j;
        j["functional"] = "large_ball_diagnostic";
        json rows = json::array();
        for (const auto& [scale, count] : rep.per_scale) rows.push_back({scale, count});
        j["per_scale"] = std::move(rows);
        j["max_count"] = rep.max_count;
        return j;
    }
    throw std::invalid_argument("unknown functional '" + f + "'");
}

int cmd_verify(const InputOptions& in, const VerifyFlags& vf, const FamilyOptions& fam,
               const EstimatorFlags& est, const OutputOptions& out) {
    const LoadedInput g = load_input(in);
    const auto opts = make_estimator(est);
    json payload = run_functional(g, vf, fam, opts);
    json config = resolved_config("verify", g, &fam, &est);
    config["functional"] = vf.functional;
    config["R"] = vf.R;
    config["z"] = vf.z_param;
    config["z_id"] = vf.z_id;
    config["comparability_A"] = vf.comp_A;
    config["depth"] = vf.depth;
    if (!out.perball_path.empty() && payload.contains("per_ball")) {
        cl::FunctionalReport rep;
        for (const auto& row : payload["per_ball"])
            rep.per_ball.push_back(cl::BallRow{row["scale"], row["center"], row["radius"],
                                               row["beta"], row["term"], row["triples"],
                                               row["mc"], row["std_error"]});
        maybe_write_perball(rep, out);
    }
    emit(wrap_report(std::move(config), std::move(payload), out), out);
    return 0;
}

int cmd_tour(const InputOptions& in, int scale_n, const std::string& order,
             const std::string& curve_out, std::optional<double> connect_radius,
             const OutputOptions& out) {
    const LoadedInput g = load_input(in);
    const auto domain = cl::all_points(*g.space);
    const auto result = cl::parameterize_with_details(g.space, domain, scale_n,
                                                      parse_order(order), connect_radius);
    json payload = cl::tour_json(*g.space, result.graph, result.tour);
    payload["scale"] = scale_n;
    payload["epsilon"] = result.net.epsilon;
    payload["net_size"] = result.net.members.size();
    const auto gap = cl::approximation_gap(*g.space, domain, result);
    payload["gap_set_to_curve"] = gap.set_to_curve;
    payload["gap_curve_to_set"] = gap.curve_to_set;
    payload["gap_bound"] = 5.0 * result.net.epsilon;
    if (g.analytic_length) {
        payload["reference_length"] = *g.analytic_length;
        payload["length_bound_32"] = 32.0 * *g.analytic_length;
    }
    if (!curve_out.empty() && result.curve.is_euclidean()) {
        std::ostringstream csv;
        cl::write_curve_csv(csv, result.curve);
        cl::write_file(curve_out, csv.str());
    }
    if (!out.svg_path.empty()) {
        cl::SvgScene scene;
        scene.add_points(*g.space);
        scene.add_tour(*g.space, result.graph);
        std::ostringstream svg;
        scene.write(svg);
        cl::write_file(out.svg_path, svg.str());
    }
    emit(wrap_report(resolved_config("tour", g, nullptr, nullptr), payload, out), out);
    return 0;
}

int cmd_report(const std::string& config_path, InputOptions in, FamilyOptions fam,
               EstimatorFlags est, VerifyFlags vf, OutputOptions out) {
    std::ifstream f(config_path);
    if (!f) throw cl::ValidationError("cannot open config file: " + config_path);
    json cfg;
    try {
        f >> cfg;
    } catch (const std::exception& e) {
        throw cl::ValidationError(std::string("config parse error: ") + e.what());
    }
    // file values fill anything the flags left at defaults
    if (cfg.contains("input")) {
        const auto& i = cfg["input"];
        if (i.contains("gen") && in.gen.empty()) in.gen = i["gen"];
        if (i.contains("cloud_csv") && in.cloud_csv.empty()) in.cloud_csv = i["cloud_csv"];
        if (i.contains("curve_csv") && in.curve_csv.empty()) in.curve_csv = i["curve_csv"];
        if (i.contains("metric_json") && in.metric_json.empty())
            in.metric_json = i["metric_json"];
    }
    if (cfg.contains("family")) {
        const auto& j = cfg["family"];
        if (j.contains("A")) fam.A = j["A"];
        if (j.contains("n_min")) fam.n_min = j["n_min"].get<int>();
        if (j.contains("n_max")) fam.n_max = j["n_max"].get<int>();
        if (j.contains("nested")) fam.nested = j["nested"];
        if (j.contains("order")) fam.order = j["order"];
    }
    if (cfg.contains("estimator")) {
        const auto& j = cfg["estimator"];
        if (j.contains("m")) est.m = j["m"];
        if (j.contains("mode")) est.mode = j["mode"];
        if (j.contains("seed")) {
            est.seed = j["seed"];
            est.seed_given = true;
        }
        if (j.contains("cap")) est.cap = j["cap"];
        if (j.contains("mc_samples")) est.mc_samples = j["mc_samples"];
        if (j.contains("threads")) est.threads = j["threads"];
    }
    if (cfg.contains("localized")) {
        const auto& j = cfg["localized"];
        if (j.contains("R")) vf.R = j["R"];
        if (j.contains("z")) vf.z_param = j["z"];
        if (j.contains("z_id")) vf.z_id = j["z_id"];
        if (j.contains("A")) vf.comp_A = j["A"];
        if (j.contains("depth")) vf.depth = j["depth"];
    }
    std::vector<std::string> functionals;
    if (cfg.contains("functionals"))
        for (const auto& v : cfg["functionals"]) functionals.push_back(v.get<std::string>());
    if (functionals.empty()) functionals.push_back(vf.functional);
    if (cfg.contains("output")) {
        const auto& j = cfg["output"];
        if (j.contains("json") && out.json_path.empty()) out.json_path = j["json"];
        if (j.contains("svg") && out.svg_path.empty()) out.svg_path = j["svg"];
        if (j.contains("perball") && out.perball_path.empty()) out.perball_path = j["perball"];
    }

    const LoadedInput g = load_input(in);
    const auto opts = make_estimator(est);
    json reports = json::array();
    for (const std::string& name : functionals) {
        VerifyFlags each = vf;
        each.functional = name;
        json r = run_functional(g, each, fam, opts);
        reports.push_back(std::move(r));
    }
    json config = resolved_config("report", g, &fam, &est);
    config["functionals"] = functionals;
    config["R"] = vf.R;
    config["z"] = vf.z_param;
    config["comparability_A"] = vf.comp_A;

    json doc;
    if (!out.no_timestamp) doc["timestamp"] = iso_timestamp();
    doc["config"] = std::move(config);
    doc["reports"] = std::move(reports);
    if (!out.svg_path.empty() && g.space->is_euclidean() && g.space->dim() == 2) {
        cl::SvgScene scene;
        scene.add_points(*g.space);
        if (g.curve && g.curve->is_euclidean()) scene.add_curve(*g.curve);
        const auto family = family_for(*g.space, cl::all_points(*g.space), fam);
        scene.add_balls(*g.space, family);
        std::ostringstream svg;
        scene.write(svg);
        cl::write_file(out.svg_path, svg.str());
    }
    emit(doc, out);
    return 0;
}

json error_record(const std::string& kind, const std::string& message) {
    json j;
    j["error"]["kind"] = kind;
    j["error"]["message"] = message;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvature functionals, beta numbers, and net-tour "
                 "parameterizations for sampled metric spaces"};
    app.require_subcommand(1);

    InputOptions in;
    FamilyOptions fam;
    EstimatorFlags est;
    OutputOptions out;
    VerifyFlags vf;
    std::string out_base, order = "input", curve_out;
    std::size_t curvature_samples = 1000;
    std::uint64_t curvature_seed = 1;
    int tour_scale = 4;
    std::optional<double> connect_radius;
    std::string config_path;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("--gen", in.gen, "generator spec, e.g. circle:1:360");
        cmd->add_option("--input", in.cloud_csv, "point cloud CSV");
        cmd->add_option("--curve", in.curve_csv, "curve CSV (closed/open header)");
        cmd->add_option("--metric", in.metric_json, "explicit metric JSON");
    };
    auto add_family = [&](CLI::App* cmd) {
        cmd->add_option("--A", fam.A, "ball radius multiplier (> 1)");
        cmd->add_option("--nmin",
                        [&fam](const CLI::results_t& r) {
                            fam.n_min = std::stoi(r[0]);
                            return true;
                        },
                        "coarsest scale index");
        cmd->add_option("--nmax",
                        [&fam](const CLI::results_t& r) {
                            fam.n_max = std::stoi(r[0]);
                            return true;
                        },
                        "finest scale index");
        cmd->add_flag("--nested,!--no-nested", fam.nested, "nest nets across scales");
        cmd->add_option("--order", fam.order, "net insertion order: input|farthest");
    };
    auto add_estimator = [&](CLI::App* cmd) {
        cmd->add_option("--m", est.m, "quadrature sample count");
        cmd->add_option("--mode", est.mode, "det|mc");
        cmd->add_option("--seed", est.seed, "RNG seed (mandatory with --mode mc)")
            ->each([&est](const std::string&) { est.seed_given = true; });
        cmd->add_option("--cap", est.cap, "per-ball deterministic triple cap");
        cmd->add_option("--mc-samples", est.mc_samples, "Monte Carlo draw count");
        cmd->add_option("--threads", est.threads, "worker pool size");
    };
    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--out", out.json_path, "JSON report path (default stdout)");
        cmd->add_option("--perball", out.perball_path, "per-ball CSV path");
        cmd->add_option("--svg", out.svg_path, "SVG path (2-D inputs)");
        cmd->add_flag("--no-timestamp", out.no_timestamp, "omit the timestamp field");
    };

    auto* c_gen = app.add_subcommand("generate", "emit a canonical test input");
    add_input(c_gen);
    c_gen->add_option("--out-base", out_base, "output file base path");
    add_output(c_gen);

    auto* c_nets = app.add_subcommand("nets", "build a multiresolution ball family");
    add_input(c_nets);
    add_family(c_nets);
    add_output(c_nets);

    auto* c_beta = app.add_subcommand("beta", "multiresolution beta_inf^2 diam sum");
    add_input(c_beta);
    add_family(c_beta);
    add_estimator(c_beta);
    add_output(c_beta);

    auto* c_curv = app.add_subcommand("curvature", "pointwise triple quantities");
    add_input(c_curv);
    c_curv->add_option("--sample", curvature_samples, "random triples to tabulate");
    c_curv->add_option("--triple-seed", curvature_seed, "sampling seed");
    c_curv->add_option("--comp-A", vf.comp_A, "comparability scale for the flag column");
    add_output(c_curv);

    auto* c_verify = app.add_subcommand("verify", "evaluate a theorem functional");
    add_input(c_verify);
    c_verify->add_option("--functional", vf.functional,
                         "global|multires|beta-inf-sum|hahlomaa|localized-global|"
                         "localized-multires|dyadic|large-ball");
    c_verify->add_option("--R", vf.R, "localization radius");
    c_verify->add_option("--z", vf.z_param, "localization center (arc-length parameter)");
    c_verify->add_option("--z-id", vf.z_id, "localization center (point id)");
    c_verify->add_option("--comp-A", vf.comp_A, "comparability scale (hahlomaa)");
    c_verify->add_option("--depth", vf.depth, "dyadic depth");
    c_verify->add_flag("--rotated", vf.rotated, "use the 1/3-rotated filtration");
    add_family(c_verify);
    add_estimator(c_verify);
    add_output(c_verify);

    auto* c_tour = app.add_subcommand("tour", "net graph + doubled Euler tour curve");
    add_input(c_tour);
    c_tour->add_option("--scale", tour_scale, "net scale n (epsilon = 2^-n)");
    c_tour->add_option("--order", order, "net insertion order: input|farthest");
    c_tour->add_option("--curve-out", curve_out, "write the tour curve CSV here");
    c_tour->add_option("--connect-radius",
                       [&connect_radius](const CLI::results_t& r) {
                           connect_radius = std::stod(r[0]);
                           return true;
                       },
                       "override the 8*2^-n connection radius (flagged non-conformant)");
    add_output(c_tour);

    auto* c_report = app.add_subcommand("report", "run a configured pipeline");
    c_report->add_option("--config", config_path, "JSON run configuration")->required();
    add_input(c_report);
    add_family(c_report);
    add_estimator(c_report);
    add_output(c_report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(c_gen)) return cmd_generate(in, out_base, out);
        if (app.got_subcommand(c_nets)) return cmd_nets(in, fam, out);
        if (app.got_subcommand(c_beta)) return cmd_beta(in, fam, est, out);
        if (app.got_subcommand(c_curv))
            return cmd_curvature(in, curvature_samples, curvature_seed, vf.comp_A, out);
        if (app.got_subcommand(c_verify)) return cmd_verify(in, vf, fam, est, out);
        if (app.got_subcommand(c_tour))
            return cmd_tour(in, tour_scale, order, curve_out, connect_radius, out);
        if (app.got_subcommand(c_report))
            return cmd_report(config_path, in, fam, est, vf, out);
        std::cerr << error_record("usage", "no subcommand").dump() << "\n";
        return 2;
    } catch (const cl::DisconnectedError& e) {
        json j = error_record("disconnected-input", e.what());
        j["error"]["component_a"] = e.component_a;
        j["error"]["component_b"] = e.component_b;
        j["error"]["gap"] = e.gap;
        j["error"]["connect_radius"] = e.connect_radius;
        std::cerr << j.dump() << "\n";
        return 4;
    } catch (const cl::ValidationError& e) {
        std::cerr << error_record("data-validation", e.what()).dump() << "\n";
        return 3;
    } catch (const cl::UnsupportedOperation& e) {
        std::cerr << error_record("usage", e.what()).dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << error_record("usage", e.what()).dump() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << error_record("usage", e.what()).dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << error_record("internal", e.what()).dump() << "\n";
        return 1;
    }
}
