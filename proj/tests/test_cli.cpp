#include <doctest.h>

#include <huvf/cli.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliResult r;
    r.code = huvf::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

nlohmann::json payload_of(const CliResult& r) {
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.contains("payload"));
    return doc["payload"];
}

}  // namespace

TEST_CASE("stability thresholds over the CLI") {
    const CliResult r = run_cli(
        {"stability", "thresholds", "--tol", "1e-6", "--format", "json", "--no-timestamp"});
    REQUIRE(r.code == huvf::cli::kExitOk);
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc["tool"] == "huvf");
    CHECK(doc["command"].get<std::string>().find("stability thresholds") != std::string::npos);
    CHECK_FALSE(doc.contains("timestamp"));
    const nlohmann::json payload = doc["payload"];
    CHECK(std::abs(payload["delta_s"].get<double>() - 1.471007) < 5e-6);
    CHECK(std::abs(payload["delta_u"].get<double>() - 1.612195) < 5e-6);
}

TEST_CASE("deterministic output is byte-identical") {
    const std::vector<std::string> args{"stability", "thresholds", "--tol",
                                        "1e-6",      "--format",   "json",
                                        "--no-timestamp"};
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    REQUIRE(a.code == huvf::cli::kExitOk);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
}

TEST_CASE("field bending of the parabolic-angle family") {
    const CliResult r = run_cli({"field", "bending", "--family", "horo-pq", "--p", "1", "--q", "0",
                                 "--point", "0,0,1", "--no-timestamp"});
    REQUIRE(r.code == huvf::cli::kExitOk);
    const nlohmann::json payload = payload_of(r);
    REQUIRE(payload["results"].size() == 1);
    CHECK(payload["results"][0]["bending"].get<double>() == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("field eval emits components, with polar angles where defined") {
    const CliResult vertical = run_cli(
        {"field", "eval", "--family", "h-parallel", "--point", "0,0,1", "--no-timestamp"});
    REQUIRE(vertical.code == huvf::cli::kExitOk);
    const nlohmann::json v = payload_of(vertical)["results"][0];
    CHECK(v["components"][2].get<double>() == doctest::Approx(1.0));
    CHECK_FALSE(v.contains("u"));  // the vertical field has no polar angles

    const CliResult planar = run_cli({"field", "eval", "--family", "horo-theta", "--point",
                                      "1,0,1", "--no-timestamp"});
    REQUIRE(planar.code == huvf::cli::kExitOk);
    const nlohmann::json p = payload_of(planar)["results"][0];
    CHECK(p["components"][1].get<double>() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(p.contains("u"));
    CHECK(p["v"].get<double>() == doctest::Approx(std::asin(1.0)).epsilon(1e-12));
}

TEST_CASE("harmonicity verdicts drive the exit code") {
    const CliResult pass =
        run_cli({"check", "harmonic", "--family", "euclid-radial-line", "--no-timestamp"});
    CHECK(pass.code == huvf::cli::kExitOk);
    CHECK(pass.out.find("PASS") != std::string::npos);

    // Rotating the theta field out of phase breaks harmonicity.
    const CliResult fail = run_cli(
        {"check", "harmonic", "--family", "horo-theta", "--rotate", "0.7", "--no-timestamp"});
    CHECK(fail.code == huvf::cli::kExitNumerical);
    CHECK(fail.out.find("FAIL") != std::string::npos);

    // The unrotated member passes.
    const CliResult plain =
        run_cli({"check", "harmonic", "--family", "horo-theta", "--no-timestamp"});
    CHECK(plain.code == huvf::cli::kExitOk);
}

TEST_CASE("reduced-system check dispatches by space") {
    const CliResult euc = run_cli({"check", "reduced", "--family", "euclid-pendulum", "--p", "0.3",
                                   "--q", "1", "--no-timestamp"});
    CHECK(euc.code == huvf::cli::kExitOk);
    const CliResult hyp = run_cli(
        {"check", "reduced", "--family", "horo-holomorphic", "--k", "1", "--a-re", "0.3", "--a-im",
         "0.2", "--no-timestamp"});
    CHECK(hyp.code == huvf::cli::kExitOk);
}

TEST_CASE("harmonic-map check identifies harmonic sections that are not harmonic maps") {
    const CliResult r = run_cli({"check", "map", "--family", "h-parallel", "--no-timestamp"});
    CHECK(r.code == huvf::cli::kExitNumerical);
    const nlohmann::json payload = payload_of(r);
    CHECK(payload["verdict"] == "FAIL");
    // solenoidal defect |div xi_3| = 2
    CHECK(payload["channels"][1]["max_abs"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("pendulum solve as csv") {
    const CliResult r = run_cli({"pendulum", "solve", "--q", "1", "--n", "50", "--format", "csv"});
    REQUIRE(r.code == huvf::cli::kExitOk);
    std::istringstream lines(r.out);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "r,v,vp,v_closed,abs_diff");
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 50);
}

TEST_CASE("pendulum solve reports shooting-vs-closed-form agreement") {
    const CliResult r =
        run_cli({"pendulum", "solve", "--q", "2", "--n", "100", "--no-timestamp"});
    REQUIRE(r.code == huvf::cli::kExitOk);
    const nlohmann::json payload = payload_of(r);
    CHECK(payload["method"] == "shooting");
    CHECK(payload["sup_diff_vs_closed_form"].get<double>() < 1e-8);
    CHECK(payload["separatrix_residual"].get<double>() < 1e-8);
    CHECK(payload["samples"].size() == 100);
}

TEST_CASE("stability hessian surfaces the closed-form discrepancy") {
    const CliResult r = run_cli({"stability", "hessian", "--R", "2", "--delta", "1.6122",
                                 "--no-timestamp"});
    REQUIRE(r.code == huvf::cli::kExitOk);
    const nlohmann::json payload = payload_of(r);
    CHECK(payload["closed_form"].get<double>() < -100.0);
    CHECK(payload["quadrature"].get<double>() > 100.0);
    CHECK(payload["corrected_rel_diff"].get<double>() < 1e-9);
}

TEST_CASE("stability r0 rejects widths outside the transitional band") {
    const CliResult r = run_cli({"stability", "r0", "--delta0", "1.0", "--no-timestamp"});
    CHECK(r.code == huvf::cli::kExitNumerical);
    CHECK(r.err.find("error:") != std::string::npos);

    const CliResult ok = run_cli({"stability", "r0", "--delta0", "1.471008", "--no-timestamp"});
    REQUIRE(ok.code == huvf::cli::kExitOk);
    const nlohmann::json payload = payload_of(ok);
    CHECK(payload["r0"].get<double>() <= 8.198206);
    CHECK(std::abs(payload["r0"].get<double>() - 8.1982058) < 1e-5);
}

TEST_CASE("flow diagnostics over the CLI") {
    const CliResult r = run_cli({"flow", "diagnose", "--family", "euclid-pendulum", "--p", "0",
                                 "--q", "1", "--mode", "fountain", "--start", "0.3,0,-0.2",
                                 "--no-timestamp"});
    REQUIRE(r.code == huvf::cli::kExitOk);
    const nlohmann::json payload = payload_of(r);
    CHECK(payload["theta_drift"].get<double>() < 1e-9);
    CHECK(std::abs(payload["crossing_radius"].get<double>() - 2.0) < 1e-3);
    CHECK(payload["crossing_vertical_component"].get<double>() < 1e-6);
}

TEST_CASE("repro single criterion as json") {
    const CliResult r = run_cli(
        {"repro", "all", "--criterion", "7", "--format", "json", "--no-timestamp"});
    CHECK(r.code == huvf::cli::kExitOk);
    const nlohmann::json payload = payload_of(r);
    REQUIRE(payload["criteria"].size() == 1);
    CHECK(payload["criteria"][0]["id"] == 7);
    CHECK(payload["criteria"][0]["pass"] == true);
    CHECK(payload["all_pass"] == true);
}

TEST_CASE("usage errors exit with code 1") {
    const CliResult unknown_family =
        run_cli({"field", "eval", "--family", "no-such-family", "--point", "1,0,0"});
    CHECK(unknown_family.code == huvf::cli::kExitUsage);
    CHECK_FALSE(unknown_family.err.empty());

    const CliResult missing = run_cli({"field", "eval"});
    CHECK(missing.code == huvf::cli::kExitUsage);

    const CliResult bad_point =
        run_cli({"field", "eval", "--family", "h-parallel", "--point", "1,2"});
    CHECK(bad_point.code == huvf::cli::kExitUsage);

    const CliResult no_args = run_cli({});
    CHECK(no_args.code == huvf::cli::kExitUsage);
}

TEST_CASE("help lists the command groups") {
    const CliResult r = run_cli({"--help"});
    CHECK(r.code == huvf::cli::kExitOk);
    for (const char* word : {"field", "check", "pendulum", "stability", "flow", "repro"}) {
        CHECK(r.out.find(word) != std::string::npos);
    }
}

TEST_CASE("bare output names land in the directory named by HUVF_OUTPUT_DIR") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "huvf_cli_outdir_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    REQUIRE(setenv("HUVF_OUTPUT_DIR", dir.string().c_str(), 1) == 0);

    const CliResult r = run_cli({"field", "bending", "--family", "h-parallel", "--point", "0,0,1",
                                 "--no-timestamp", "--output", "bending.json"});
    unsetenv("HUVF_OUTPUT_DIR");

    REQUIRE(r.code == huvf::cli::kExitOk);
    CHECK(r.out.empty());  // went to the file, not stdout
    const fs::path produced = dir / "bending.json";
    REQUIRE(fs::exists(produced));
    std::ifstream in(produced);
    std::stringstream content;
    content << in.rdbuf();
    const nlohmann::json doc = nlohmann::json::parse(content.str());
    CHECK(doc["payload"]["results"][0]["bending"].get<double>() == doctest::Approx(2.0));
    fs::remove_all(dir);
}
