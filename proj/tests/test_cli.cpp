#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string bin_path() {
    const char* env = std::getenv("CURVELAB_BIN");
    REQUIRE_MESSAGE(env != nullptr, "CURVELAB_BIN must point at the curvelab binary");
    return env;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path() / "curvelab_cli_tests";
    fs::create_directories(dir);
    const fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
    const fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd =
        "\"" + bin_path() + "\" " + args + " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "curvelab_cli_tests";
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("cli: generate writes loadable files") {
    const fs::path base = work_dir() / "circ";
    const auto r = run_cli("generate --gen circle:1:64 --out-base " + base.string() +
                           " --no-timestamp");
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(base.string() + ".points.csv"));
    CHECK(fs::exists(base.string() + ".curve.csv"));
    const json doc = json::parse(r.out);
    CHECK(doc["report"]["points"] == 64);

    // explicit metric output for non-Euclidean generators
    const fs::path star = work_dir() / "star";
    const auto r2 = run_cli("generate --gen star:3:1:4 --out-base " + star.string());
    CHECK(r2.exit_code == 0);
    CHECK(fs::exists(star.string() + ".metric.json"));
}

TEST_CASE("cli: verify global on a generated circle") {
    const auto r = run_cli("verify --gen circle:1:360 --functional global --m 100 "
                           "--no-timestamp");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["report"]["value"].get<double>() == doctest::Approx(15.425022793653037));
    CHECK(doc["config"]["m"] == 100);
    CHECK(doc["config"]["input"] == "gen:circle:1:360");
}

TEST_CASE("cli: deterministic reports are byte-identical") {
    const auto a = run_cli("verify --gen circle:1:180 --functional multires --m 64 "
                           "--no-timestamp");
    const auto b = run_cli("verify --gen circle:1:180 --functional multires --m 64 "
                           "--no-timestamp");
    const auto c = run_cli("verify --gen circle:1:180 --functional multires --m 64 "
                           "--threads 4 --no-timestamp");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    // the worker pool size appears in the echoed config but must not
    // change any result byte
    const json ja = json::parse(a.out), jc = json::parse(c.out);
    CHECK(ja["report"].dump() == jc["report"].dump());
    CHECK(ja["config"]["threads"] == 1);
    CHECK(jc["config"]["threads"] == 4);
}

TEST_CASE("cli: timestamped reports differ only in the timestamp field") {
    const auto a = run_cli("verify --gen circle:1:90 --functional global --m 32");
    REQUIRE(a.exit_code == 0);
    json doc = json::parse(a.out);
    CHECK(doc.contains("timestamp"));
    doc.erase("timestamp");
    const auto b = run_cli("verify --gen circle:1:90 --functional global --m 32 "
                           "--no-timestamp");
    CHECK(doc == json::parse(b.out));
}

TEST_CASE("cli: nets on a one-point cloud yields one ball per scale") {
    const fs::path cloud = work_dir() / "one.csv";
    std::ofstream(cloud) << "0.5,0.5\n";
    const auto r = run_cli("nets --input " + cloud.string() + " --A 2 --nested --nmin 0 "
                           "--nmax 5 --no-timestamp");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc["report"]["scales"].size() == 6);
    for (const auto& s : doc["report"]["scales"]) CHECK(s["ball_count"] == 1);
}

TEST_CASE("cli: tour on a disconnected cloud exits 4 with a structured record") {
    const fs::path cloud = work_dir() / "two_clusters.csv";
    std::ofstream(cloud) << "0,0\n0.1,0\n50,0\n50.1,0\n";
    const auto r = run_cli("tour --input " + cloud.string() + " --scale 3");
    CHECK(r.exit_code == 4);
    const json err = json::parse(r.err);
    CHECK(err["error"]["kind"] == "disconnected-input");
    CHECK(err["error"]["gap"].get<double>() >= err["error"]["connect_radius"].get<double>());
}

TEST_CASE("cli: usage errors exit 2, bad data exits 3") {
    CHECK(run_cli("verify --gen circle:1:360 --functional nosuch --m 16").exit_code == 2);
    CHECK(run_cli("verify --functional global").exit_code == 2); // no input source
    CHECK(run_cli("verify --gen circle:1:64 --functional global --mode mc --m 16").exit_code ==
          2); // mc without seed
    CHECK(run_cli("frobnicate").exit_code == 2);

    const fs::path bad = work_dir() / "bad.csv";
    std::ofstream(bad) << "1,2\nx,y\n";
    CHECK(run_cli("nets --input " + bad.string()).exit_code == 3);
}

TEST_CASE("cli: beta command writes per-ball rows") {
    const fs::path csvp = work_dir() / "perball.csv";
    const auto r = run_cli("beta --gen circle:1:128 --A 2 --m 128 --perball " + csvp.string() +
                           " --no-timestamp");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["report"]["value"].get<double>() > 0.0);
    const std::string csv = slurp(csvp);
    CHECK(csv.rfind("scale,center,radius", 0) == 0);
}

TEST_CASE("cli: tour emits svg and curve csv") {
    const fs::path svg = work_dir() / "tour.svg";
    const fs::path crv = work_dir() / "tour_curve.csv";
    const auto r = run_cli("tour --gen circle:1:256 --scale 4 --svg " + svg.string() +
                           " --curve-out " + crv.string() + " --no-timestamp");
    REQUIRE(r.exit_code == 0);
    CHECK(slurp(svg).rfind("<svg", 0) == 0);
    CHECK(slurp(crv).rfind("closed", 0) == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["report"]["length"].get<double>() <=
          doc["report"]["length_bound_32"].get<double>());
}

TEST_CASE("cli: report pipeline from a config file") {
    const fs::path cfg = work_dir() / "run.json";
    std::ofstream(cfg) << R"({
        "input": {"gen": "circle:1:180"},
        "family": {"A": 2.0, "nested": true},
        "estimator": {"m": 64, "mode": "det", "seed": 11},
        "functionals": ["global", "multires", "dyadic"],
        "localized": {"depth": 8}
    })";
    const auto r = run_cli("report --config " + cfg.string() + " --no-timestamp");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc["reports"].size() == 3);
    CHECK(doc["reports"][0]["functional"] == "global_curvature");
    CHECK(doc["reports"][1]["functional"] == "multires_curvature");
    CHECK(doc["reports"][2]["functional"] == "dyadic_excess_sum");
    CHECK(doc["reports"][2]["bound_holds"] == true);
    CHECK(doc["config"]["m"] == 64);
}

TEST_CASE("cli: metric json input reaches the hahlomaa functional") {
    const fs::path base = work_dir() / "star2";
    REQUIRE(run_cli("generate --gen star:3:1:5 --out-base " + base.string()).exit_code == 0);
    const auto r = run_cli("verify --metric " + base.string() +
                           ".metric.json --functional hahlomaa --comp-A 3 --R 3 "
                           "--no-timestamp");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["report"]["functional"] == "hahlomaa_condition");
    CHECK(doc["report"]["value"].get<double>() >= 0.0);
}
