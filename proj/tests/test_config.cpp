#include "doctest.h"

#include "quadent/commands.hpp"
#include "quadent/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <unistd.h>

using namespace quadent;
using nlohmann::json;

namespace {

std::string key_of(const json& doc) {
    try {
        (void)parse_config(doc);
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "";
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "quadent");
    std::vector<char*> argv;
    for (auto& a : args) {
        argv.push_back(a.data());
    }
    return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::vector<std::string> data_lines(const std::string& csv) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        out.push_back(line);
    }
    return out;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("quadent_test_config_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_SUITE("parse_config") {
    TEST_CASE("empty document gives the defaults") {
        const RunConfig c = parse_config(json::object());
        CHECK_FALSE(c.source.has_value());
        CHECK(c.efficiency == 0.85);
        CHECK(c.estimator.traces == 10);
        CHECK(c.estimator.points_per_trace == 400);
        CHECK(c.loss_grid.points == 101);
        CHECK(c.budgets.size() == 2);
        const SqueezerSpec s = c.resolved_source();
        CHECK(s.squeezed == doctest::Approx(0.3411764705882353));
    }

    TEST_CASE("unknown keys name their path") {
        CHECK(key_of({{"efficency", 0.8}}) == "efficency");
        CHECK(key_of({{"estimator", {{"trace", 3}}}}) == "estimator.trace");
        CHECK(key_of({{"grids", {{"loss", {{"step", 0.1}}}}}}) == "grids.loss.step");
        CHECK(key_of({{"source", {{"calibration", {{"duan", 0.4}}}}}}) ==
              "source.calibration.duan");
    }

    TEST_CASE("type and range errors name their key") {
        CHECK(key_of({{"efficiency", "high"}}) == "efficiency");
        CHECK(key_of({{"efficiency", 1.5}}) == "efficiency");
        CHECK(key_of({{"estimator", {{"traces", 2.5}}}}) == "estimator.traces");
        CHECK(key_of({{"estimator", {{"seed", -1}}}}) == "estimator.seed");
        CHECK(key_of({{"estimator", {{"gain_mode", "fast"}}}}) == "estimator.gain_mode");
        CHECK(key_of({{"estimator", {{"traces", 0}}}}) == "estimator");
        CHECK(key_of({{"grids", {{"loss", {{"stop", 1.0}}}}}}) == "grids.loss");
        CHECK(key_of({{"grids", {{"contour", {{"resolution", 1}}}}}}) == "grids.contour");
        CHECK(key_of({{"budgets", json::array()}}) == "budgets");
        CHECK(key_of({{"budgets", {6.75, -1.0}}}) == "budgets[1]");
        CHECK(key_of({{"source", {{"anti_variance", 3.0}}}}) == "source.squeezed_variance");
        CHECK(key_of({{"source", {{"squeezed_variance", 0.5}, {"anti_variance", 1.0}}}}) == "source");
        CHECK(key_of({{"source", {{"calibration", {{"epr_target", 1.5}}}}}}) ==
              "source.calibration");
    }

    TEST_CASE("explicit source") {
        const RunConfig c = parse_config({{"source", {{"squeezed_variance", 0.5}}}});
        REQUIRE(c.source.has_value());
        CHECK(c.source->anti == 2.0);
    }

    TEST_CASE("round trip through JSON") {
        const json doc = {{"source", {{"squeezed_variance", 0.3}, {"anti_variance", 4.0}}},
                          {"efficiency", 0.7},
                          {"estimator", {{"seed", 123456789012345ULL}, {"gain_mode", "dark_biased"}}},
                          {"grids", {{"contour", {{"resolution", 7}}}}},
                          {"budgets", {1.0, 2.0, 3.0}}};
        const RunConfig once = parse_config(doc);
        const RunConfig twice = parse_config(to_json(once));
        CHECK(to_json(once) == to_json(twice));
        CHECK(config_hash(once) == config_hash(twice));
        CHECK(config_hash(once).size() == 16);
        CHECK(config_hash(once) != config_hash(parse_config(json::object())));
        CHECK(twice.estimator.seed == 123456789012345ULL);
        CHECK(twice.contour_grid.n_excess.points == 7);
    }

    TEST_CASE("files") {
        TempDir dir;
        CHECK_THROWS_AS(load_config(dir.path / "missing.json"), IoError);
        std::ofstream(dir.path / "bad.json") << "{\"efficiency\": ";
        CHECK_THROWS_AS(load_config(dir.path / "bad.json"), ConfigError);
        std::ofstream(dir.path / "ok.json") << "{\"efficiency\": 0.9}";
        CHECK(load_config(dir.path / "ok.json").efficiency == 0.9);
    }
}

TEST_SUITE("commands") {
    TEST_CASE("overrides") {
        const RunConfig base = parse_config(json::object());
        const RunConfig a = cli::apply_overrides(base, "loss-sweep", {7, 11});
        CHECK(a.estimator.seed == 7);
        CHECK(a.loss_grid.points == 11);
        CHECK(cli::apply_overrides(base, "spectrum", {{}, 5}).frequency_grid.points == 5);
        CHECK(cli::apply_overrides(base, "contours", {{}, 2}).contour_grid.n_excess.points == 2);
        CHECK(cli::apply_overrides(base, "estimate", {{}, 50}).estimator.points_per_trace == 50);
        CHECK_THROWS_AS(cli::apply_overrides(base, "contours", {{}, 1}), ConfigError);
    }

    TEST_CASE("headers and row counts") {
        RunConfig c = parse_config({{"grids", {{"loss", {{"points", 5}}}, {"frequency", {{"points", 4}}},
                                               {"contour", {{"resolution", 2}}}}},
                                    {"estimator", {{"traces", 2}, {"points_per_trace", 50}}}});
        const auto loss = data_lines(cli::loss_sweep_csv(c));
        CHECK(loss.size() == 2 + 5);
        CHECK(loss[0].rfind("# quadent 0.1.0 command=loss-sweep config_hash=" + config_hash(c), 0) == 0);
        CHECK(loss[1] ==
              "loss,total_efficiency,epr_estimate,epr_stderr,epr_analytic,duan_estimate,duan_stderr,"
              "duan_analytic");
        CHECK(data_lines(cli::spectrum_csv(c)).size() == 2 + 4);
        const auto contours = data_lines(cli::contours_csv(c));
        CHECK(contours.size() == 2 + 4);
        CHECK(contours[1] == "n_min,n_excess,epr,fidelity,ratio_b1,ratio_b2");
    }

    TEST_CASE("estimate output") {
        RunConfig c = parse_config(json::object());
        const auto out = cli::estimate_csv(c);
        const auto lines = data_lines(out.csv);
        CHECK(lines.size() == 2 + 10 + 3);
        CHECK(lines[2].rfind("trace,0,", 0) == 0);
        CHECK(lines[12].rfind("value,NA,", 0) == 0);
        CHECK(out.summary.rfind("duan=", 0) == 0);
        CHECK(out.summary.find(" seed=42") != std::string::npos);
        CHECK(cli::estimate_csv(c).csv == out.csv);

        c.estimator.traces = 1;
        const auto single = cli::estimate_csv(c);
        CHECK(single.summary.find("±NA epr=") != std::string::npos);
        CHECK(data_lines(single.csv).back() == "stderr,NA,NA,NA,NA,NA,NA,NA");
    }

    TEST_CASE("dark-biased estimate is not below the unbiased one on the same seed") {
        RunConfig c = parse_config({{"estimator", {{"darknoise_rel", 0.3}}}});
        const double unbiased = estimate_criteria(
            apply_loss(entangled_pair(c.resolved_source()), LossChannel::symmetric(c.efficiency)),
            c.estimator).epr.value;
        c.estimator.gain_mode = GainMode::dark_biased;
        const double biased = estimate_criteria(
            apply_loss(entangled_pair(c.resolved_source()), LossChannel::symmetric(c.efficiency)),
            c.estimator).epr.value;
        CHECK(biased >= unbiased);
    }

    TEST_CASE("exit codes") {
        TempDir dir;
        const std::string out = (dir.path / "o.csv").string();
        CHECK(run_cli({"spectrum", "--out", out, "--points", "3"}) == 0);
        CHECK(data_lines(slurp(out)).size() == 5);
        CHECK(run_cli({"spectrum"}) == 2);
        CHECK(run_cli({"frobnicate", "--out", out}) == 2);
        CHECK(run_cli({"spectrum", "--out", out, "--points", "1"}) == 2);
        std::ofstream(dir.path / "typo.json") << R"({"spectrum": {"s_0": 0.3}})";
        CHECK(run_cli({"spectrum", "--config", (dir.path / "typo.json").string(), "--out", out}) == 2);
        CHECK(run_cli({"spectrum", "--config", (dir.path / "none.json").string(), "--out", out}) == 3);
        CHECK(run_cli({"spectrum", "--out", (dir.path / "no" / "such" / "dir.csv").string()}) == 3);
    }

    TEST_CASE("dumped config re-validates to the same hash") {
        TempDir dir;
        const std::string out = (dir.path / "o.csv").string();
        const std::string dump = (dir.path / "dump.json").string();
        REQUIRE(run_cli({"contours", "--out", out, "--points", "2", "--seed", "9", "--dump-config", dump}) == 0);
        const RunConfig echoed = load_config(dump);
        CHECK(echoed.estimator.seed == 9);
        CHECK(data_lines(slurp(out))[0].find("config_hash=" + config_hash(echoed)) != std::string::npos);
    }
}
